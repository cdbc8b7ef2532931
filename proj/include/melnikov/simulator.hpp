#pragma once

#include <functional>
#include <string>
#include <vector>

#include "melnikov/geometry.hpp"
#include "melnikov/perturbation.hpp"

namespace melnikov {

struct SimConfig {
  double epsilon = 1e-3;
  double step_tol = 1e-12;   // absolute and relative local error tolerance
  double event_tol = 1e-12;  // |y - phi(x)| at a located switch
  double max_time = 100.0;
  double escape_radius = 1e3;
};

/// Branch +1 integrates the field of y >= phi(x), branch -1 the field of y <= phi(x).
struct TrajectoryPoint {
  double t;
  double x;
  double y;
  int branch;
  bool event;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<Point> events;
  int steps_accepted = 0;
  int steps_rejected = 0;
};

/// Called at every located switch with the event point and its index (0-based);
/// returning true stops the integration there.
using EventHandler = std::function<bool(const Point& event, int index)>;

/// The perturbed piecewise linear center x' = y + eps p(x, y), y' = -x + eps q(x, y),
/// integrated by Dormand-Prince 5(4) with dense output and event location on y = phi(x).
/// Throws SimulationError (Timeout, Escape, EventLocation, Sliding).
Trajectory integrate_piecewise(const PiecewisePerturbation& pert, const SimConfig& cfg, const Point& start,
                               const SwitchingCurve& curve, const EventHandler& on_event = {},
                               bool record_steps = true);

struct ReturnSample {
  double u0;
  double u1;
  int crossings;  // switch events in the revolution, including the return
};

/// One revolution from the section point of u0 back to the positive branch of the curve.
/// Throws SimulationError (StructureChanged when more than four switches occur).
ReturnSample return_map(const PiecewisePerturbation& pert, const SimConfig& cfg, double u0,
                        const SwitchingCurve& curve);

struct FixedPoint {
  double u;
  double displacement;  // d(u) at the refined point
  double slope;         // d'(u) estimated across the bracket
  int stability;        // -1 when d' < 0 (attracting), +1 when d' > 0
};

struct CycleReport {
  std::vector<FixedPoint> cycles;
  std::vector<ReturnSample> scan;
  bool degenerate = false;  // d vanishes on the whole grid within the noise floor
  std::vector<std::string> warnings;
};

/// Scans d(u) = u1 - u0 on a uniform grid over [u_lo, u_hi], brackets sign changes
/// and refines each by the Illinois variant of regula falsi.
CycleReport find_limit_cycles(const PiecewisePerturbation& pert, const SimConfig& cfg, double u_lo, double u_hi,
                              int grid_size, const SwitchingCurve& curve, int threads = 1);

}  // namespace melnikov
