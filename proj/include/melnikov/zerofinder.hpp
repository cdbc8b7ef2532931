#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "melnikov/geometry.hpp"
#include "melnikov/interval.hpp"
#include "melnikov/melnikov_algebraic.hpp"
#include "melnikov/perturbation.hpp"

namespace melnikov {

using RationalInterval = Interval<Rational>;

/// Rational interval containing pi with width at most 2^-bits (MPFR directed rounding).
RationalInterval pi_enclosure(int bits);

struct ZeroCertificate {
  enum class Status { Certified, Uncertified };

  int count = 0;
  /// Disjoint intervals in (0, inf), each holding exactly one simple zero.
  /// Degenerate intervals [r, r] mark exact rational zeros.
  std::vector<RationalInterval> isolating_intervals;
  int pi_bits_used = 0;
  Status status = Status::Certified;
  std::string reason;
  /// Intervals where a zero could not be shown simple (possible even multiplicity).
  std::vector<RationalInterval> suspects;

  bool certified() const { return status == Status::Certified; }
};

struct CountOptions {
  /// Upper end of the isolation range; the Cauchy bound is used when absent or smaller.
  std::optional<Rational> u_max;
  int pi_bits = 64;
  int max_pi_bits = 4096;
  /// Isolating intervals are bisected down to width 2^-refine_bits where the sign allows.
  int refine_bits = 32;
};

/// Certified count of the simple zeros of P + pi Q on (0, inf).
/// Throws DegenerateInputError when P and Q are both zero.
ZeroCertificate count_zeros(const MelnikovPolynomial& m, const CountOptions& options = {});

/// Linear map from a parameter vector to Melnikov polynomials. When directions
/// are present, parameters also map to perturbations.
struct LinearFamily {
  std::vector<MelnikovPolynomial> basis;
  std::vector<std::string> labels;
  std::vector<PiecewisePerturbation> directions;

  std::size_t dimension() const { return basis.size(); }
  MelnikovPolynomial combine(const std::vector<Rational>& params) const;
  PiecewisePerturbation perturbation(const std::vector<Rational>& params) const;

  /// Family spanned by the given single-coefficient perturbations on y = x^3.
  static LinearFamily from_directions(std::vector<PiecewisePerturbation> directions,
                                      std::vector<std::string> labels);
  /// Independent monomials u^k (no perturbation behind them).
  static LinearFamily monomials(const std::vector<int>& powers);
};

/// Degree-1 family: b+_{0,0} (2u), b+_{0,1} ((pi/2)(u^2+u^6)), a+_{0,0} (-2u^3).
LinearFamily melnikov_family_degree1();
/// Degree-2 family: one coefficient per independent channel of M(u); dimension 6.
LinearFamily melnikov_family_degree2();
/// The seven monomials of the degree-2 M(u) with independent coefficients:
/// u, pi u^2, u^3, u^5, pi u^6, u^7, u^9. Degree-2 perturbations tie the u^2 and
/// u^6 coefficients, so this family is strictly larger and has no perturbation directions.
LinearFamily melnikov_monomial_family_degree2();

struct Realization {
  std::vector<Rational> params;  // scaled so the largest magnitude is 1
  MelnikovPolynomial polynomial;
  ZeroCertificate certificate;
  std::vector<Rational> pinned_targets;  // targets forced to be exact zeros (with pi replaced by a rational)
  std::size_t constant_sign_index;
};

/// Constructs parameters whose Melnikov polynomial has at least targets.size()
/// certified simple zeros. With dimension >= k + 1 every target is interpolated
/// with the constant-sign element's coefficient fixed to 1; with a smaller
/// family each (dimension - 1)-subset of targets is tried and the best
/// certificate is kept.
/// Throws SingularSystemError or RealizationError.
Realization realize_zeros(const std::vector<Rational>& targets, const LinearFamily& family);

/// Zero-count histogram over seeded random perturbations.
struct SweepResult {
  int degree = 0;
  int trials = 0;
  int max_observed = 0;
  std::map<int, int> histogram;
  int uncertified = 0;
  bool numeric_path = false;  // sign-change counts on sampled M, not certified
  std::optional<int> bound;   // 3, 6 or 6*floor(n/2)+6 on the cubic curve and its mirror
  bool within_bound = true;
};

struct SweepOptions {
  int trials = 100;
  std::uint64_t seed = 7;
  int threads = 1;
  int pi_bits = 64;
  // Numeric path (curves without the exact reduction).
  double numeric_u_min = 0.02;
  double numeric_u_max = 3.0;
  int numeric_samples = 300;
};

/// Random perturbation with coefficients k / 2^16, k uniform in [-2^16, 2^16].
PiecewisePerturbation random_perturbation(int degree, std::uint64_t seed, std::uint64_t trial);

/// Upper bound on zeros for degree n (3, 6, 6*floor(n/2)+6).
int zero_bound(int n);

SweepResult sweep_bound(int degree, const SwitchingCurve& curve, const SweepOptions& options);

/// Sign changes of the quadrature Melnikov function sampled on a log-spaced u-grid.
int count_zeros_numeric(const PiecewisePerturbation& pert, const SwitchingCurve& curve, double u_min,
                        double u_max, int samples);

}  // namespace melnikov
