#include "melnikov/melnikov_numeric.hpp"

#include <cmath>

#include "melnikov/errors.hpp"
#include "melnikov/quadrature.hpp"

namespace melnikov {

namespace {

constexpr double kRatioDenominatorTol = 1e-10;

// Integral of g dx - f dy along an arc, pulled back to theta.
double arc_integral(const OrbitArc& arc, const GeneralPiecewiseSystem::Scalar2& f,
                    const GeneralPiecewiseSystem::Scalar2& g, double tol) {
  const double r = arc.level.radius();
  const auto integrand = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double x = r * c, y = r * s;
    return g(x, y) * (-r * s) - f(x, y) * (r * c);
  };
  return integrate_adaptive(integrand, arc.theta_start, arc.theta_end, tol, tol).value;
}

}  // namespace

GeneralPiecewiseSystem GeneralPiecewiseSystem::linear_center(const PiecewisePerturbation& pert,
                                                             const SwitchingCurve& curve) {
  const auto h = [](double x, double y) { return 0.5 * (x * x + y * y); };
  const auto grad = [](double x, double y) { return Eigen::Vector2d(x, y); };
  const auto field = [](PolynomialField p) { return [p = std::move(p)](double x, double y) { return p(x, y); }; };
  return {h,
          h,
          grad,
          grad,
          field(pert.field(Channel::APlus)),
          field(pert.field(Channel::AMinus)),
          field(pert.field(Channel::BPlus)),
          field(pert.field(Channel::BMinus)),
          curve};
}

double ratio_factor(const GeneralPiecewiseSystem& system, const EnergyLevel& h) {
  const Point a = intersection_points(h, system.curve).first;
  const double slope = system.curve.dphi(a.x());
  const Eigen::Vector2d gp = system.gradient_plus(a.x(), a.y());
  const Eigen::Vector2d gm = system.gradient_minus(a.x(), a.y());
  const double num = gp.x() + gp.y() * slope;
  const double den = gm.x() + gm.y() * slope;
  if (std::abs(den) < kRatioDenominatorTol)
    throw TangencyError("lower-zone orbit is tangent to the switching curve at A(h)");
  return num / den;
}

double line_integral_monomial(const OrbitArc& arc, int i, int j, Form form, double tol) {
  if (i < 0 || j < 0) throw DomainError("monomial exponents must be nonnegative");
  const double r = arc.level.radius();
  const double scale = std::pow(r, i + j + 1);
  const auto integrand = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double base = std::pow(c, i) * std::pow(s, j);
    return form == Form::Dx ? -base * s : base * c;
  };
  // Scale the tolerance so it applies to the final value.
  const double t = tol / std::max(scale, 1e-300);
  return scale * integrate_adaptive(integrand, arc.theta_start, arc.theta_end, t, tol).value;
}

double melnikov_numeric(const GeneralPiecewiseSystem& system, const EnergyLevel& h, double tol) {
  const auto [upper, lower] = arcs(h, system.curve);
  const double ratio = ratio_factor(system, h);
  return arc_integral(upper, system.f_plus, system.g_plus, tol) +
         ratio * arc_integral(lower, system.f_minus, system.g_minus, tol);
}

double melnikov_numeric(const PiecewisePerturbation& pert, const SwitchingCurve& curve, const EnergyLevel& h,
                        double tol) {
  if (curve.is_reciprocal()) {
    // The mirrored system runs the reflected orbit in reverse, which flips the sign.
    const auto mapped = GeneralPiecewiseSystem::linear_center(pert.mirrored(), SwitchingCurve::monomial(curve.m()));
    return -melnikov_numeric(mapped, h, tol);
  }
  return melnikov_numeric(GeneralPiecewiseSystem::linear_center(pert, curve), h, tol);
}

}  // namespace melnikov
