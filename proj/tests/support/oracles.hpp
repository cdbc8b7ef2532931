#pragma once

// Reference computations that share no code with the library paths they check.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "melnikov/perturbation.hpp"
#include "melnikov/rational.hpp"

namespace melnikov::testing {

/// Cardano root of w^3 + w = h, w = u^2, written in the radical form
/// (sqrt 6 / 6) sqrt(T^(1/3) (T^(2/3) - 12)) / T^(1/3), T = 108 h + 12 sqrt(81 h^2 + 12).
inline double sigma_closed_form_cubic(double h) {
  const double t = 108.0 * h + 12.0 * std::sqrt(81.0 * h * h + 12.0);
  const double t13 = std::cbrt(t);
  return std::sqrt(6.0) / 6.0 * std::sqrt(t13 * (t13 * t13 - 12.0)) / t13;
}

/// Plain bisection for u^2 + u^(2m) = h.
inline double sigma_bisection(double h, int m) {
  double lo = 0.0, hi = std::max(1.0, h);
  for (int it = 0; it < 400 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mid * mid + std::pow(mid, 2 * m) < h ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Composite 20-point Gauss-Legendre rule on [a, b] with n equal panels (oriented).
inline double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 64) {
  static const std::array<double, 10> x = {0.0765265211334973337546404, 0.2277858511416450780804962,
                                           0.3737060887154195606725482, 0.5108670019508270980043641,
                                           0.6360536807265150254528367, 0.7463319064601507926143051,
                                           0.8391169718222188233945291, 0.9122344282513259058677524,
                                           0.9639719272779137912676661, 0.9931285991850949247861224};
  static const std::array<double, 10> w = {0.1527533871307258506980843, 0.1491729864726037467878287,
                                           0.1420961093183820513292983, 0.1316886384491766268984945,
                                           0.1181945319615184173123774, 0.1019301198172404350367501,
                                           0.0832767415767047487247581, 0.0626720483341090635695065,
                                           0.0406014298003869413310400, 0.0176140071391521183118620};
  const double step = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = a + (p + 0.5) * step, r = 0.5 * step;
    for (std::size_t k = 0; k < x.size(); ++k) total += w[k] * (f(c - r * x[k]) + f(c + r * x[k]));
  }
  return total * 0.5 * step;
}

inline double poly_value(const PiecewisePerturbation& p, Channel c, double x, double y) {
  double v = 0.0;
  for (const auto& [ij, coeff] : p.coefficients(c)) v += to_double(coeff) * std::pow(x, ij.first) * std::pow(y, ij.second);
  return v;
}

/// Melnikov function by direct quadrature on the circle of radius^2 = h for an
/// arbitrary switching curve phi with crossing points A (x < 0) and B (x > 0).
/// Upper arc A -> B clockwise through y >= phi(x), lower arc B -> A.
inline double melnikov_direct(const PiecewisePerturbation& pert, const std::function<double(double)>& phi,
                              double h, double ax, double ay, double bx, double by) {
  const double r = std::sqrt(h);
  const double tb = std::atan2(by, bx);
  double ta = std::atan2(ay, ax);
  while (ta <= tb) ta += 2 * std::numbers::pi;
  while (ta > tb + 2 * std::numbers::pi) ta -= 2 * std::numbers::pi;
  const double tm = 0.5 * (ta + tb);
  if (r * std::sin(tm) < phi(r * std::cos(tm))) throw std::logic_error("oracle arc orientation");
  const auto integrand = [&](Channel p, Channel q) {
    return [&, p, q](double t) {
      const double x = r * std::cos(t), y = r * std::sin(t);
      return poly_value(pert, q, x, y) * (-y) - poly_value(pert, p, x, y) * x;
    };
  };
  const double upper = gauss_legendre(integrand(Channel::APlus, Channel::BPlus), ta, tb);
  const double lower = gauss_legendre(integrand(Channel::AMinus, Channel::BMinus), tb, ta - 2 * std::numbers::pi);
  return upper + lower;
}

/// Direct Melnikov function for y = x^m (odd or even) at the level h.
inline double melnikov_direct_monomial(const PiecewisePerturbation& pert, int m, double h) {
  const double s = sigma_bisection(h, m);
  const double sm = std::pow(s, m);
  return melnikov_direct(pert, [m](double x) { return std::pow(x, m); }, h, -s, m % 2 ? -sm : sm, s, sm);
}

/// Direct Melnikov function for y = x^(1/m), m odd, at crossing parameter u (the y-coordinate of B).
inline double melnikov_direct_reciprocal(const PiecewisePerturbation& pert, int m, double u) {
  const double um = std::pow(u, m);
  return melnikov_direct(pert, [m](double x) { return x < 0 ? -std::pow(-x, 1.0 / m) : std::pow(x, 1.0 / m); },
                         u * u + um * um, -um, -u, um, u);
}

/// J_{i,j}(h) = int x^i y^j dx over the upper arc of y = x^3 (clockwise), by direct quadrature.
inline double J_direct(int i, int j, double h) {
  const double s = sigma_bisection(h, 3), r = std::sqrt(h);
  const double tb = std::atan2(s * s * s, s);
  return gauss_legendre(
      [&](double t) {
        const double x = r * std::cos(t), y = r * std::sin(t);
        return std::pow(x, i) * std::pow(y, j) * (-y);
      },
      tb + std::numbers::pi, tb);
}

/// Same on the lower arc.
inline double I_direct(int i, int j, double h) {
  const double s = sigma_bisection(h, 3), r = std::sqrt(h);
  const double tb = std::atan2(s * s * s, s);
  return gauss_legendre(
      [&](double t) {
        const double x = r * std::cos(t), y = r * std::sin(t);
        return std::pow(x, i) * std::pow(y, j) * (-y);
      },
      tb, tb - std::numbers::pi);
}

/// Wronskian of monomials u^k1, ..., u^kr: prod_{a<b} (k_b - k_a) u^(sum k - r(r-1)/2).
inline std::pair<Rational, int> monomial_wronskian(const std::vector<int>& powers) {
  Rational c = 1;
  int e = 0;
  const int r = static_cast<int>(powers.size());
  for (int a = 0; a < r; ++a) {
    e += powers[a];
    for (int b = a + 1; b < r; ++b) c *= Rational(powers[b] - powers[a]);
  }
  return {c, e - r * (r - 1) / 2};
}

}  // namespace melnikov::testing
