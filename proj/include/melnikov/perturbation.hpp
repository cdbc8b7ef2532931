#pragma once

#include <Eigen/Core>

#include <array>
#include <map>
#include <utility>

#include "melnikov/rational.hpp"

namespace melnikov {

/// Which polynomial of the perturbation a coefficient belongs to:
/// p+ (APlus), p- (AMinus), q+ (BPlus), q- (BMinus).
enum class Channel { APlus = 0, AMinus = 1, BPlus = 2, BMinus = 3 };

inline constexpr std::array<Channel, 4> kAllChannels = {Channel::APlus, Channel::AMinus, Channel::BPlus,
                                                        Channel::BMinus};

const char* channel_name(Channel c);

/// Dense double-precision polynomial field sum_{i,j} c(i, j) x^i y^j.
class PolynomialField {
 public:
  PolynomialField() = default;
  explicit PolynomialField(Eigen::MatrixXd coeffs) : coeffs_(std::move(coeffs)) {}

  double operator()(double x, double y) const;
  const Eigen::MatrixXd& coeffs() const { return coeffs_; }

 private:
  Eigen::MatrixXd coeffs_;
};

/// Exact coefficients a±_{i,j} of p± and b±_{i,j} of q± with i + j <= n.
class PiecewisePerturbation {
 public:
  using Index = std::pair<int, int>;
  using Coefficients = std::map<Index, Rational>;

  explicit PiecewisePerturbation(int degree);

  int degree() const { return degree_; }

  /// Throws DomainError for indices outside i, j >= 0, i + j <= n.
  void set(Channel channel, int i, int j, const Rational& value);
  /// Zero for absent pairs.
  Rational get(Channel channel, int i, int j) const;
  const Coefficients& coefficients(Channel channel) const { return coeffs_[static_cast<int>(channel)]; }

  bool is_zero() const;

  PiecewisePerturbation& operator+=(const PiecewisePerturbation& o);
  PiecewisePerturbation& operator*=(const Rational& s);
  friend PiecewisePerturbation operator+(PiecewisePerturbation a, const PiecewisePerturbation& b) { return a += b; }
  friend PiecewisePerturbation operator*(const Rational& s, PiecewisePerturbation a) { return a *= s; }
  friend bool operator==(const PiecewisePerturbation& a, const PiecewisePerturbation& b);

  PolynomialField field(Channel channel) const;

  /// Perturbation of the mirrored system for the curve y = x^(1/m): exchanging the
  /// axes and reversing time turns it into a y = x^m problem with
  /// p̃±(X, Y) = -q∓(Y, X) and q̃±(X, Y) = -p∓(Y, X).
  PiecewisePerturbation mirrored() const;

 private:
  int degree_;
  std::array<Coefficients, 4> coeffs_;
};

/// Single-coefficient perturbation, handy for building linear families.
PiecewisePerturbation unit_perturbation(int degree, Channel channel, int i, int j);

}  // namespace melnikov
