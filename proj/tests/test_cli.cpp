#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "commands.hpp"
#include "melnikov/errors.hpp"
#include "melnikov/report.hpp"

using namespace melnikov;
using namespace melnikov::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("melnikov_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Json read_json(const fs::path& p) {
  std::ifstream is(p);
  return Json::parse(is);
}

}  // namespace

TEST_CASE("defaults") {
  const auto cfg = parse_config(Json::object());
  CHECK(cfg.curve.m() == 3);
  CHECK(cfg.degree == 1);
  CHECK(cfg.seed == 7);
  CHECK(cfg.threads == 1);
  CHECK_FALSE(cfg.perturbation);
  CHECK(cfg.simulate.sim.epsilon == 1e-3);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"degre": 1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"simulate": {"epsilon": 0.1, "eps": 1}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"curve": {"kind": "monomial", "n": 3}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"perturbation": {"degree": 1, "c_plus": []}})")), ConfigError);
}

TEST_CASE("invalid values") {
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"curve": {"kind": "spiral"}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"curve": {"m": 0}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"degree": -1})")), ConfigError);
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"perturbation": {"degree": 1, "a_plus": [[2, 0, "1"]]}})")),
                  ConfigError);
  CHECK_THROWS(parse_config(Json::parse(R"({"seed": "seven"})")));
  CHECK_THROWS_AS(parse_config(Json::parse(R"({"perturbation_file": "does-not-exist.json"})")), ConfigError);
}

TEST_CASE("perturbation round trip") {
  PiecewisePerturbation p(2);
  p.set(Channel::APlus, 1, 1, Rational(3, 4));
  p.set(Channel::BMinus, 0, 2, Rational(-5));
  const auto cfg = parse_config(Json{{"perturbation", to_json(p)}});
  REQUIRE(cfg.perturbation);
  CHECK(*cfg.perturbation == p);
  CHECK(cfg.degree == 2);
}

TEST_CASE("perturbation file resolves against the config directory") {
  const auto dir = scratch("pfile");
  PiecewisePerturbation p(1);
  p.set(Channel::BPlus, 0, 0, Rational(1));
  std::ofstream(dir / "p.json") << to_json(p).dump();
  std::ofstream(dir / "cfg.json") << R"({"perturbation_file": "p.json"})";
  const auto cfg = load_config(dir / "cfg.json");
  REQUIRE(cfg.perturbation);
  CHECK(*cfg.perturbation == p);
}

TEST_CASE("ect command") {
  const auto dir = scratch("ect");
  auto cfg = parse_config(Json::object());
  CHECK(cmd_ect(cfg, dir) == 0);
  CHECK(read_json(dir / "ect.json")["is_ect"] == true);
  cfg.ect_basis = "u - 2, u";
  CHECK(cmd_ect(cfg, dir) == static_cast<int>(ExitCode::Certification));
  CHECK(read_json(dir / "ect.json")["failing_prefix"] == 1);
}

TEST_CASE("zeros command on an explicit polynomial") {
  const auto dir = scratch("zeros");
  const auto cfg = parse_config(Json::parse(R"({"zeros": {"polynomial": {"P": "u^2 - u", "Q": "0"}}})"));
  CHECK(cmd_zeros(cfg, dir) == 0);
  const auto j = read_json(dir / "zeros.json");
  CHECK(j["certificate"]["status"] == "Certified");
  CHECK(j["certificate"]["count"] == 1);
}

TEST_CASE("realize command") {
  const auto dir = scratch("realize");
  const auto cfg = parse_config(Json::parse(R"({"realize": {"targets": ["1/2", "1", "2"]}})"));
  CHECK(cmd_realize(cfg, dir) == 0);
  const auto j = read_json(dir / "realize.json");
  CHECK(j["certificate"]["count"] == 3);
  CHECK(j.contains("perturbation"));
}

TEST_CASE("melnikov command writes the comparison table") {
  const auto dir = scratch("melnikov");
  const auto cfg = parse_config(Json::parse(R"({"degree": 2, "random_perturbation": true,
                                                "sampling": {"u_min": 0.1, "u_max": 2, "count": 20}})"));
  CHECK(cmd_melnikov(cfg, dir) == 0);
  for (const char* f : {"melnikov.csv", "melnikov.svg", "melnikov.json"}) CHECK(fs::exists(dir / f));
  CHECK(read_json(dir / "melnikov.json")["max_scaled_difference"].get<double>() <= 1e-9);
}

TEST_CASE("simulate command with a realized perturbation") {
  const auto dir = scratch("simulate");
  const auto cfg = parse_config(Json::parse(R"({"realize": {"targets": ["1/2", "1", "2"]},
      "simulate": {"use_realization": true, "u_min": 0.01, "u_max": 3, "grid": 200}})"));
  CHECK(cmd_simulate(cfg, dir) == 0);
  for (const char* f : {"trajectory.csv", "scan.csv", "scan.svg", "cycles.json"}) CHECK(fs::exists(dir / f));
  CHECK(read_json(dir / "cycles.json")["cycles"]["count"] == 3);
}

TEST_CASE("sweep command") {
  const auto dir = scratch("sweep");
  const auto cfg = parse_config(Json::parse(R"({"sweep": {"degrees": [1, 2], "trials": 30}})"));
  CHECK(cmd_sweep(cfg, dir) == 0);
  CHECK(fs::exists(dir / "sweep.json"));
}
