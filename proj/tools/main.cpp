#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "melnikov/errors.hpp"

namespace {

using melnikov::ExitCode;
using Command = std::function<int(const melnikov::cli::AnalysisConfig&, const std::filesystem::path&)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Melnikov analysis of piecewise linear centers with switching curve y = x^m"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("--config", config_path, "JSON analysis config")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--seed", seed, "random seed, overrides the config");
  app.add_option("--threads", threads, "worker threads, overrides the config")->check(CLI::PositiveNumber);

  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"melnikov", {"exact M(u), sampled comparison with quadrature, plot", melnikov::cli::cmd_melnikov}},
      {"zeros", {"certified zero count of M(u) on (0, inf)", melnikov::cli::cmd_zeros}},
      {"ect", {"Wronskian ECT check of an ordered basis", melnikov::cli::cmd_ect}},
      {"realize", {"parameters with certified simple zeros near the targets", melnikov::cli::cmd_realize}},
      {"simulate", {"piecewise ODE integration and limit-cycle census", melnikov::cli::cmd_simulate}},
      {"sweep", {"zero-count histogram over seeded random perturbations", melnikov::cli::cmd_sweep}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Config);
  }

  try {
    melnikov::cli::AnalysisConfig cfg =
        config_path.empty() ? melnikov::cli::parse_config(melnikov::Json::object())
                            : melnikov::cli::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    for (const auto& [name, entry] : commands)
      if (app.got_subcommand(name)) return entry.second(cfg, out);
  } catch (const melnikov::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const melnikov::Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Config);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Config);
  }
  return 1;
}
