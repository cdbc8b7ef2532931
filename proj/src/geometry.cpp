#include "melnikov/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "melnikov/errors.hpp"

namespace melnikov {

namespace {

double odd_root(double x, int m) {
  const double r = std::pow(std::abs(x), 1.0 / m);
  return x < 0 ? -r : r;
}

constexpr double kTangencyTol = 1e-10;

}  // namespace

SwitchingCurve SwitchingCurve::monomial(int m) {
  if (m < 1) throw DomainError("curve exponent must be >= 1, got " + std::to_string(m));
  return {m % 2 == 1 ? Kind::MonomialOdd : Kind::MonomialEven, m};
}

SwitchingCurve SwitchingCurve::reciprocal(int m) {
  if (m < 1 || m % 2 == 0)
    throw DomainError("reciprocal curve needs a positive odd exponent, got " + std::to_string(m));
  return {Kind::ReciprocalOdd, m};
}

double SwitchingCurve::phi(double x) const {
  if (kind_ == Kind::ReciprocalOdd) return odd_root(x, m_);
  return std::pow(x, m_);
}

double SwitchingCurve::dphi(double x) const {
  if (kind_ == Kind::ReciprocalOdd) {
    if (x == 0.0) throw DomainError("reciprocal curve has a vertical tangent at the origin");
    return odd_root(x, m_) / (m_ * x);
  }
  return m_ * std::pow(x, m_ - 1);
}

Point SwitchingCurve::section_point(double u) const {
  const double um = std::pow(u, m_);
  return kind_ == Kind::ReciprocalOdd ? Point(um, u) : Point(u, um);
}

double SwitchingCurve::section_parameter(const Point& p) const {
  return kind_ == Kind::ReciprocalOdd ? p.y() : p.x();
}

EnergyLevel::EnergyLevel(double h) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("energy level h must be positive, got " + std::to_string(h));
}

CrossingParameter::CrossingParameter(double u) : u_(u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw DomainError("crossing parameter u must be positive, got " + std::to_string(u));
}

CrossingParameter sigma(const EnergyLevel& level, const SwitchingCurve& curve) {
  const double h = level.h();
  const int two_m = 2 * curve.m();
  const auto f = [&](double u) { return u * u + std::pow(u, two_m) - h; };
  const auto df = [&](double u) { return 2.0 * u + two_m * std::pow(u, two_m - 1); };

  // f is strictly increasing on (0, inf) with f(0) = -h < 0 <= f(hi).
  double lo = 0.0;
  double hi = std::max(1.0, std::sqrt(h));
  double u = std::min(std::sqrt(h), std::pow(h, 1.0 / two_m));
  for (int it = 0; it < 200; ++it) {
    const double fu = f(u);
    if (fu == 0.0) break;
    (fu < 0 ? lo : hi) = u;
    double next = u - fu / df(u);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 4 * std::numeric_limits<double>::epsilon() * u) {
      u = next;
      break;
    }
    u = next;
  }
  return CrossingParameter(u);
}

EnergyLevel h_of_u(const CrossingParameter& u, const SwitchingCurve& curve) {
  const double x = u.u();
  return EnergyLevel(x * x + std::pow(x, 2 * curve.m()));
}

std::pair<Point, Point> intersection_points(const EnergyLevel& h, const SwitchingCurve& curve) {
  const double u = sigma(h, curve).u();
  const double um = std::pow(u, curve.m());
  switch (curve.kind()) {
    case SwitchingCurve::Kind::MonomialOdd:
      return {Point(-u, -um), Point(u, um)};
    case SwitchingCurve::Kind::MonomialEven:
      return {Point(-u, um), Point(u, um)};
    case SwitchingCurve::Kind::ReciprocalOdd:
      return {Point(-um, -u), Point(um, u)};
  }
  return {};
}

std::pair<OrbitArc, OrbitArc> arcs(const EnergyLevel& h, const SwitchingCurve& curve) {
  const auto [a, b] = intersection_points(h, curve);
  for (const Point& p : {a, b}) {
    // H_x + H_y phi'(x) for H = (x^2 + y^2) / 2.
    const double transversality = p.x() + p.y() * curve.dphi(p.x());
    if (std::abs(transversality) < kTangencyTol)
      throw TangencyError("level circle is tangent to the switching curve");
  }
  const double theta_b = std::atan2(b.y(), b.x());
  double theta_a = curve.is_odd() ? theta_b + std::numbers::pi : std::atan2(a.y(), a.x());
  if (theta_a <= theta_b) theta_a += 2 * std::numbers::pi;

  OrbitArc upper{h, ArcSide::Upper, theta_a, theta_b};
  OrbitArc lower{h, ArcSide::Lower, theta_b, theta_a - 2 * std::numbers::pi};
  return {upper, lower};
}

}  // namespace melnikov
