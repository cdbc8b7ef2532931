#pragma once

#include <Eigen/Core>

#include <cmath>
#include <utility>

namespace melnikov {

using Point = Eigen::Vector2d;

/// Switching curve y = x^m or its mirror y = x^(1/m) (real odd root).
class SwitchingCurve {
 public:
  enum class Kind { MonomialOdd, MonomialEven, ReciprocalOdd };

  /// y = x^m; the kind follows the parity of m.
  static SwitchingCurve monomial(int m);
  /// y = x^(1/m) for odd m.
  static SwitchingCurve reciprocal(int m);

  Kind kind() const { return kind_; }
  int m() const { return m_; }
  bool is_reciprocal() const { return kind_ == Kind::ReciprocalOdd; }
  /// Odd curves are symmetric under (x, y) -> (-x, -y).
  bool is_odd() const { return kind_ != Kind::MonomialEven; }

  double phi(double x) const;
  double dphi(double x) const;

  /// Point of the curve's positive branch with crossing parameter u, i.e. the
  /// point B of the level circle u^2 + u^(2m) = h.
  Point section_point(double u) const;
  /// Inverse of section_point for a point on the positive branch.
  double section_parameter(const Point& p) const;

  friend bool operator==(const SwitchingCurve&, const SwitchingCurve&) = default;

 private:
  SwitchingCurve(Kind kind, int m) : kind_(kind), m_(m) {}

  Kind kind_;
  int m_;
};

/// Level H = h/2 of the unperturbed center, i.e. the circle of radius sqrt(h).
class EnergyLevel {
 public:
  explicit EnergyLevel(double h);
  double h() const { return h_; }
  double radius() const { return std::sqrt(h_); }

 private:
  double h_;
};

/// Positive root u of u^2 + u^(2m) = h. For monomial curves u is the x-coordinate
/// of B(h); for the reciprocal curve it is the y-coordinate.
class CrossingParameter {
 public:
  explicit CrossingParameter(double u);
  double u() const { return u_; }

 private:
  double u_;
};

enum class ArcSide { Upper, Lower };

/// Arc of the level circle between the two crossing points. Traversal is
/// clockwise, so theta decreases from theta_start to theta_end.
struct OrbitArc {
  EnergyLevel level;
  ArcSide side;
  double theta_start;
  double theta_end;

  double extent() const { return theta_start - theta_end; }
  Point at(double theta) const { return level.radius() * Point(std::cos(theta), std::sin(theta)); }
};

CrossingParameter sigma(const EnergyLevel& h, const SwitchingCurve& curve);
EnergyLevel h_of_u(const CrossingParameter& u, const SwitchingCurve& curve);

/// A(h) (negative x) and B(h) (positive x) where the level circle meets the curve.
std::pair<Point, Point> intersection_points(const EnergyLevel& h, const SwitchingCurve& curve);

/// Upper arc runs A -> B through y >= phi(x), lower arc runs B -> A through
/// y <= phi(x). Upper angles lie in (0, 3pi/2); the lower arc ends at theta_A - 2pi,
/// which falls below -pi only for even m.
/// Throws TangencyError if the circle is tangent to the curve at A or B.
std::pair<OrbitArc, OrbitArc> arcs(const EnergyLevel& h, const SwitchingCurve& curve);

}  // namespace melnikov
