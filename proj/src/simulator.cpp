#include "melnikov/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "melnikov/errors.hpp"

namespace melnikov {

namespace {

using Kind = SimulationError::Kind;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension of order 4.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

class PiecewiseField {
 public:
  PiecewiseField(const PiecewisePerturbation& pert, double epsilon)
      : p_plus_(pert.field(Channel::APlus)),
        p_minus_(pert.field(Channel::AMinus)),
        q_plus_(pert.field(Channel::BPlus)),
        q_minus_(pert.field(Channel::BMinus)),
        epsilon_(epsilon) {}

  Point operator()(const Point& z, int branch) const {
    const double x = z.x(), y = z.y();
    const auto& p = branch > 0 ? p_plus_ : p_minus_;
    const auto& q = branch > 0 ? q_plus_ : q_minus_;
    return {y + epsilon_ * p(x, y), -x + epsilon_ * q(x, y)};
  }

 private:
  PolynomialField p_plus_, p_minus_, q_plus_, q_minus_;
  double epsilon_;
};

struct Dense {
  Point r1, r2, r3, r4, r5;
  Point at(double theta) const {
    const double theta1 = 1.0 - theta;
    return r1 + theta * (r2 + theta1 * (r3 + theta * (r4 + theta1 * r5)));
  }
};

// Rate of change of g = y - phi(x) along the field f at z.
double normal_rate(const SwitchingCurve& curve, const Point& z, const Point& f) {
  return f.y() - curve.dphi(z.x()) * f.x();
}

}  // namespace

Trajectory integrate_piecewise(const PiecewisePerturbation& pert, const SimConfig& cfg, const Point& start,
                               const SwitchingCurve& curve, const EventHandler& on_event, bool record_steps) {
  if (!(cfg.step_tol > 0) || !(cfg.event_tol > 0) || !(cfg.max_time > 0))
    throw DomainError("simulation tolerances and time budget must be positive");
  const PiecewiseField field(pert, cfg.epsilon);
  const auto g = [&](const Point& z) { return z.y() - curve.phi(z.x()); };

  // Sign of g along both fields at a point on the curve; crossing requires agreement.
  const auto crossing_branch = [&](const Point& z) {
    const double sp = normal_rate(curve, z, field(z, +1));
    const double sm = normal_rate(curve, z, field(z, -1));
    if (sp * sm <= 0.0)
      throw SimulationError(Kind::Sliding, "fields do not cross the switching curve transversally at (" +
                                               std::to_string(z.x()) + ", " + std::to_string(z.y()) + ")");
    return sp > 0 ? 1 : -1;
  };

  Point z = start;
  const double g0 = g(z);
  int branch = std::abs(g0) <= cfg.event_tol ? crossing_branch(z) : (g0 > 0 ? 1 : -1);

  Trajectory traj;
  double t = 0.0;
  if (record_steps) traj.points.push_back({t, z.x(), z.y(), branch, false});

  double h = 1e-2;
  Point k1 = field(z, branch);
  while (true) {
    if (t >= cfg.max_time)
      throw SimulationError(Kind::Timeout, "time budget " + std::to_string(cfg.max_time) + " exhausted");
    h = std::min(h, cfg.max_time - t);

    const Point k2 = field(z + h * (a21 * k1), branch);
    const Point k3 = field(z + h * (a31 * k1 + a32 * k2), branch);
    const Point k4 = field(z + h * (a41 * k1 + a42 * k2 + a43 * k3), branch);
    const Point k5 = field(z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), branch);
    const Point k6 = field(z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), branch);
    const Point z1 = z + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const Point k7 = field(z1, branch);
    const Point err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double norm = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double scale = cfg.step_tol + cfg.step_tol * std::max(std::abs(z[i]), std::abs(z1[i]));
      norm += (err[i] / scale) * (err[i] / scale);
    }
    norm = std::sqrt(norm / 2);
    const double factor = std::clamp(0.9 * std::pow(std::max(norm, 1e-16), -0.2), 0.2, 5.0);
    if (norm > 1.0) {
      ++traj.steps_rejected;
      h *= std::max(factor, 0.2);
      if (h < 1e-14 * std::max(1.0, t))
        throw SimulationError(Kind::EventLocation, "step size underflow at t = " + std::to_string(t));
      continue;
    }
    ++traj.steps_accepted;

    if (g(z1) * branch < 0.0) {
      const Point diff = z1 - z;
      const Point bspl = h * k1 - diff;
      const Dense dense{z, diff, bspl, diff - h * k7 - bspl,
                        h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)};
      double lo = 0.0, hi = 1.0;
      Point ze = z1;
      double ge = g(z1);
      int it = 0;
      while (std::abs(ge) > cfg.event_tol) {
        if (++it > 200)
          throw SimulationError(Kind::EventLocation, "switch location did not reach the event tolerance");
        const double mid = 0.5 * (lo + hi);
        ze = dense.at(mid);
        ge = g(ze);
        (ge * branch > 0.0 ? lo : hi) = mid;
        if (hi - lo < 1e-17) break;
      }
      if (std::abs(ge) > cfg.event_tol)
        throw SimulationError(Kind::EventLocation, "switch location did not reach the event tolerance");
      const double theta = 0.5 * (lo + hi);
      const double te = t + theta * h;
      const int next = crossing_branch(ze);
      if (next == branch)
        throw SimulationError(Kind::Sliding, "trajectory returned to its own zone at a switch");
      t = te;
      z = ze;
      branch = next;
      traj.events.push_back(ze);
      if (record_steps) traj.points.push_back({t, z.x(), z.y(), branch, true});
      if (on_event && on_event(ze, static_cast<int>(traj.events.size()) - 1)) return traj;
      k1 = field(z, branch);
      h = std::max(theta * h, 1e-6);
      continue;
    }

    t += h;
    z = z1;
    k1 = k7;
    if (!std::isfinite(z.x()) || !std::isfinite(z.y()) || z.norm() > cfg.escape_radius)
      throw SimulationError(Kind::Escape, "trajectory left the ball of radius " + std::to_string(cfg.escape_radius));
    if (record_steps) traj.points.push_back({t, z.x(), z.y(), branch, false});
    h *= factor;
  }
}

ReturnSample return_map(const PiecewisePerturbation& pert, const SimConfig& cfg, double u0,
                        const SwitchingCurve& curve) {
  if (!(u0 > 0)) throw DomainError("return map needs u0 > 0");
  ReturnSample sample{u0, 0.0, 0};
  bool returned = false;
  integrate_piecewise(
      pert, cfg, curve.section_point(u0), curve,
      [&](const Point& e, int index) {
        sample.crossings = index + 1;
        if (e.x() > 0.0) {
          sample.u1 = curve.section_parameter(e);
          returned = true;
          return true;
        }
        if (sample.crossings >= 4)
          throw SimulationError(Kind::StructureChanged, "revolution not completed within four switches");
        return false;
      },
      false);
  if (!returned) throw SimulationError(Kind::StructureChanged, "no return to the section");
  return sample;
}

CycleReport find_limit_cycles(const PiecewisePerturbation& pert, const SimConfig& cfg, double u_lo, double u_hi,
                              int grid_size, const SwitchingCurve& curve, int threads) {
  if (!(u_lo > 0) || !(u_hi > u_lo)) throw DomainError("cycle search range must satisfy 0 < u_lo < u_hi");
  if (grid_size < 2) throw DomainError("cycle search grid needs at least two points");

  CycleReport report;
  report.scan.resize(static_cast<std::size_t>(grid_size));
  const auto u_at = [&](int i) { return u_lo + (u_hi - u_lo) * i / (grid_size - 1); };
  const int workers = std::clamp(threads, 1, grid_size);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < grid_size; i += workers) report.scan[i] = return_map(pert, cfg, u_at(i), curve);
      });
  }

  const auto d = [](const ReturnSample& s) { return s.u1 - s.u0; };
  double largest = 0.0;
  for (const auto& s : report.scan) largest = std::max(largest, std::abs(d(s)));
  const double floor = std::max(1e3 * cfg.step_tol, 1e-9);
  if (largest <= floor) {
    report.degenerate = true;
    return report;
  }

  const auto displacement = [&](double u) {
    const auto s = return_map(pert, cfg, u, curve);
    return s.u1 - s.u0;
  };

  int last_bracket = -2;
  for (int i = 0; i + 1 < grid_size; ++i) {
    double a = report.scan[i].u0, b = report.scan[i + 1].u0;
    double fa = d(report.scan[i]), fb = d(report.scan[i + 1]);
    if (fa == 0.0) {
      report.cycles.push_back({a, 0.0, (fb - fa) / (b - a), fb > fa ? 1 : -1});
      continue;
    }
    if (fa * fb >= 0.0) continue;
    if (i == last_bracket + 1)
      report.warnings.push_back("adjacent sign changes near u = " + std::to_string(a) +
                                "; the grid may be too coarse to separate cycles");
    last_bracket = i;
    const double slope = (fb - fa) / (b - a);

    // Illinois regula falsi; a and b keep opposite signs but are not ordered.
    double c = a, fc = fa;
    for (int it = 0; it < 100; ++it) {
      c = b - fb * (b - a) / (fb - fa);
      fc = displacement(c);
      if (fc == 0.0 || std::abs(fc) <= 10 * cfg.step_tol) break;
      if (fc * fb < 0.0) {
        a = b;
        fa = fb;
      } else {
        fa *= 0.5;
      }
      b = c;
      fb = fc;
      if (std::abs(b - a) <= cfg.event_tol) break;
    }
    report.cycles.push_back({c, fc, slope, slope < 0 ? -1 : 1});
  }
  return report;
}

}  // namespace melnikov
