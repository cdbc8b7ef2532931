#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "melnikov/errors.hpp"

namespace melnikov {

struct QuadratureResult {
  double value;
  double error;
  std::size_t panels;
};

namespace detail {

// Kronrod abscissae and weights (descending abscissae); the embedded 7-point
// Gauss rule uses the odd-indexed abscissae.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel gauss_kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t k = 0; k < 7; ++k) {
    const double dx = half * kXgk[k];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[k] * sum;
    if (k % 2 == 1) gauss += kWg[k / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod quadrature with bisection of the
/// worst panel. Converges once the summed error estimate is below
/// max(abs_tol, rel_tol * |I|). Throws AccuracyError when max_panels is exceeded.
/// Orientation follows the limits, so b < a yields the negated integral.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                                    std::size_t max_panels = std::size_t{1} << 16) {
  if (a == b) return {0.0, 0.0, 0};
  const double orientation = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<detail::Panel> panels;
  auto first = detail::gauss_kronrod15(f, a, b);
  double value = first.value;
  double error = first.error;
  panels.push(first);
  if (!std::isfinite(value) || !std::isfinite(error))
    throw AccuracyError("integrand is not finite on the interval", error);
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (panels.size() >= max_panels)
      throw AccuracyError("adaptive quadrature exceeded its panel budget", error);
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    if (!std::isfinite(value) || !std::isfinite(error))
      throw AccuracyError("integrand is not finite on the interval", error);
    // Rounding floor: panels narrower than a few ulps cannot improve further.
    if (mid - worst.a <= 8 * std::numeric_limits<double>::epsilon() * std::abs(mid))
      throw AccuracyError("adaptive quadrature hit the rounding floor", error);
  }
  return {orientation * value, error, panels.size()};
}

}  // namespace melnikov
