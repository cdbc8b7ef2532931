#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "melnikov/geometry.hpp"
#include "melnikov/melnikov_algebraic.hpp"
#include "melnikov/perturbation.hpp"
#include "melnikov/report.hpp"
#include "melnikov/simulator.hpp"
#include "melnikov/zerofinder.hpp"

namespace melnikov::cli {

struct SamplingConfig {
  double u_min = 0.05;
  double u_max = 2.0;
  int count = 200;
};

struct ZerosConfig {
  int pi_bits = 64;
  std::optional<Rational> u_max;
  std::optional<MelnikovPolynomial> polynomial;
};

struct RealizeConfig {
  std::vector<Rational> targets;
  std::string family;  // perturbation-1, perturbation-2, monomial-2, monomials
  std::vector<int> powers;
};

struct SimulateConfig {
  SimConfig sim;
  double u_min = 0.01;
  double u_max = 3.0;
  int grid = 400;
  double trajectory_u0 = 1.0;
  bool use_realization = false;
};

struct SweepConfig {
  std::vector<int> degrees{1};
  int trials = 100;
};

/// Parsed analysis configuration. Every object level rejects unknown keys.
struct AnalysisConfig {
  SwitchingCurve curve = SwitchingCurve::monomial(3);
  int degree = 1;
  std::optional<PiecewisePerturbation> perturbation;
  bool random_perturbation = false;
  std::uint64_t seed = 7;
  int threads = 1;
  double quadrature_tol = 1e-11;
  SamplingConfig sampling;
  ZerosConfig zeros;
  std::string ect_basis = "u,u^2,u^3,u^6";
  RealizeConfig realize;
  SimulateConfig simulate;
  SweepConfig sweep;
};

/// Relative perturbation_file paths resolve against base_dir. Throws ConfigError.
AnalysisConfig parse_config(const Json& j, const std::filesystem::path& base_dir = ".");
AnalysisConfig load_config(const std::filesystem::path& path);

/// Each command writes its files into out and returns the process exit code.
/// Library errors propagate as melnikov::Error.
int cmd_melnikov(const AnalysisConfig& cfg, const std::filesystem::path& out);
int cmd_zeros(const AnalysisConfig& cfg, const std::filesystem::path& out);
int cmd_ect(const AnalysisConfig& cfg, const std::filesystem::path& out);
int cmd_realize(const AnalysisConfig& cfg, const std::filesystem::path& out);
int cmd_simulate(const AnalysisConfig& cfg, const std::filesystem::path& out);
int cmd_sweep(const AnalysisConfig& cfg, const std::filesystem::path& out);

}  // namespace melnikov::cli
