#pragma once

#include <Eigen/Core>

#include <functional>

#include "melnikov/geometry.hpp"
#include "melnikov/perturbation.hpp"

namespace melnikov {

inline constexpr double kDefaultQuadratureTol = 1e-11;

/// Two-zone system with Hamiltonians H±, perturbation fields f± (x-equation)
/// and g± (y-equation), separated by the switching curve.
struct GeneralPiecewiseSystem {
  using Scalar2 = std::function<double(double, double)>;
  using Gradient = std::function<Eigen::Vector2d(double, double)>;

  Scalar2 hamiltonian_plus;
  Scalar2 hamiltonian_minus;
  Gradient gradient_plus;
  Gradient gradient_minus;
  Scalar2 f_plus, f_minus, g_plus, g_minus;
  SwitchingCurve curve;

  /// Linear center H± = (x^2 + y^2) / 2 with the polynomial perturbation.
  static GeneralPiecewiseSystem linear_center(const PiecewisePerturbation& pert, const SwitchingCurve& curve);
};

enum class Form { Dx, Dy };

/// Quotient of the transversality expressions H_x + H_y phi'(a) of the two
/// zones at A(h). Throws TangencyError when the denominator is below 1e-10.
double ratio_factor(const GeneralPiecewiseSystem& system, const EnergyLevel& h);

/// Integral of x^i y^j dx (or dy) along a clockwise orbit arc.
double line_integral_monomial(const OrbitArc& arc, int i, int j, Form form, double tol = kDefaultQuadratureTol);

/// First-order Melnikov function by quadrature along both arcs:
///   M(h) = int_{L+} g+ dx - f+ dy + ratio * int_{L-} g- dx - f- dy.
/// Arcs are circles, so this covers systems whose Hamiltonians share the level
/// sets of the linear center.
double melnikov_numeric(const GeneralPiecewiseSystem& system, const EnergyLevel& h,
                        double tol = kDefaultQuadratureTol);

/// Same for the polynomial perturbation of the linear center. Reciprocal curves
/// are mapped to the monomial case through PiecewisePerturbation::mirrored; the
/// returned value is the Melnikov function of the original system.
double melnikov_numeric(const PiecewisePerturbation& pert, const SwitchingCurve& curve, const EnergyLevel& h,
                        double tol = kDefaultQuadratureTol);

}  // namespace melnikov
