#pragma once

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "melnikov/chebyshev.hpp"
#include "melnikov/geometry.hpp"
#include "melnikov/melnikov_algebraic.hpp"
#include "melnikov/perturbation.hpp"
#include "melnikov/simulator.hpp"
#include "melnikov/zerofinder.hpp"

namespace melnikov {

using Json = nlohmann::json;

/// Rationals are written as "num/den" strings so no precision is lost.
Json to_json(const Rational& q);
Json to_json(const RationalPolynomial& p);  // [[power, "num/den"], ...] ascending
Json to_json(const MelnikovPolynomial& m);
Json to_json(const RationalInterval& iv);
Json to_json(const ZeroCertificate& c);
Json to_json(const EctReport& r);
Json to_json(const PiecewisePerturbation& p);
Json to_json(const SwitchingCurve& c);
Json to_json(const CycleReport& r);
Json to_json(const SweepResult& r);

/// Inverse of to_json for perturbations: {"degree": n, "a_plus": [[i, j, "num/den"], ...], ...}.
/// Throws ConfigError on unknown keys or malformed entries.
PiecewisePerturbation perturbation_from_json(const Json& j);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_scan_csv(std::ostream& os, const std::vector<ReturnSample>& scan);

/// Minimal SVG line plot: one polyline, a frame, the zero line when in range, and labels.
std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title,
                          const std::string& x_label, const std::string& y_label);

/// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace melnikov
