#include "melnikov/zerofinder.hpp"

#include <mpfr.h>

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "melnikov/bareiss.hpp"
#include "melnikov/errors.hpp"
#include "melnikov/melnikov_numeric.hpp"

namespace melnikov {

RationalInterval pi_enclosure(int bits) {
  if (bits < 8) bits = 8;
  mpfr_t value;
  mpfr_init2(value, bits + 2);
  mpq_t q;
  mpq_init(q);
  mpfr_const_pi(value, MPFR_RNDD);
  mpfr_get_q(q, value);
  Rational lo(q);
  mpfr_const_pi(value, MPFR_RNDU);
  mpfr_get_q(q, value);
  Rational hi(q);
  mpq_clear(q);
  mpfr_clear(value);
  return {lo, hi};
}

namespace {

Rational abs_value(const Rational& x) { return x < 0 ? -x : x; }

Rational power_of_two_below(const Rational& x) {
  Rational p = 1;
  while (p > x) p /= 2;
  while (p * 2 <= x) p *= 2;
  return p;
}

Rational power_of_two_above(const Rational& x) {
  Rational p = 1;
  while (p < x) p *= 2;
  while (p / 2 >= x) p /= 2;
  return p;
}

struct PointSign {
  int sign;          // -1, 0, +1
  bool certified;    // sign is exact, or the enclosure excludes zero
  bool exact_zero;
};

/// P + pi Q after removing the common factor u^v.
class Isolator {
 public:
  Isolator(const RationalPolynomial& p, const RationalPolynomial& q, RationalInterval pi, int max_depth)
      : p_(p), q_(q), dp_(p.derivative()), dq_(q.derivative()), pi_(std::move(pi)), max_depth_(max_depth) {
    const int d = std::max(p_.degree(), q_.degree());
    coeffs_.reserve(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) coeffs_.push_back(combine(p_.coeff(k), q_.coeff(k)));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  RationalInterval combine(const Rational& pv, const Rational& qv) const {
    return {pv + pi_.lo() * qv, pv + pi_.hi() * qv};
  }

  PointSign sign_at(const Rational& x) const {
    const Rational pv = p_(x), qv = q_(x);
    if (pv == 0 && qv == 0) return {0, true, true};
    const int s = combine(pv, qv).certified_sign();
    return {s, s != 0, false};
  }

  /// Halves a sign-change interval while the midpoint sign is certified.
  RationalInterval refine(RationalInterval iv, const Rational& width) const {
    if (iv.width() == 0) return iv;
    int s_lo = sign_at(iv.lo()).sign;
    while (iv.width() > width) {
      const Rational mid = iv.mid();
      const PointSign sm = sign_at(mid);
      if (sm.exact_zero) return {mid, mid};
      if (!sm.certified) break;
      if (sm.sign == s_lo)
        iv = {mid, iv.hi()};
      else
        iv = {iv.lo(), mid};
      s_lo = sign_at(iv.lo()).sign;
    }
    return iv;
  }

  bool simple_at(const Rational& x) const { return dp_(x) != 0 || dq_(x) != 0; }

  /// Coefficients of t -> f(m + t) for f = P + pi Q, by exact Taylor shifts of P and Q.
  std::vector<RationalInterval> taylor(const Rational& m) const {
    const auto shift = [&](const RationalPolynomial& f) {
      std::vector<Rational> c(coeffs_.size(), Rational(0));
      for (int k = 0; k <= f.degree(); ++k) c[static_cast<std::size_t>(k)] = f.coeff(k);
      for (std::size_t i = 0; i + 1 < c.size(); ++i)
        for (std::size_t k = c.size() - 1; k > i; --k) c[k - 1] += m * c[k];
      return c;
    };
    const auto ps = shift(p_), qs = shift(q_);
    std::vector<RationalInterval> d;
    d.reserve(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) d.push_back(combine(ps[k], qs[k]));
    return d;
  }

  /// Centered-form enclosures of f and f' over [m - r, m + r] from the Taylor coefficients at m.
  static std::pair<RationalInterval, RationalInterval> enclose(const std::vector<RationalInterval>& d,
                                                               const Rational& r) {
    Rational value_spread = 0, slope_spread = 0, rk = r;
    for (std::size_t k = 1; k < d.size(); ++k) {
      const Rational mag = d[k].magnitude();
      value_spread += mag * rk;
      if (k >= 2) slope_spread += Rational(static_cast<long>(k)) * mag * (rk / r);
      rk *= r;
    }
    const RationalInterval slope = d.size() > 1 ? d[1] : RationalInterval(Rational(0));
    return {d[0] + RationalInterval(-value_spread, value_spread), slope + RationalInterval(-slope_spread, slope_spread)};
  }

  bool run(const std::optional<Rational>& u_max, std::vector<RationalInterval>& roots,
           std::vector<RationalInterval>& suspects, std::string& reason) {
    const int d = degree();
    if (d <= 0) return true;
    const auto& c0 = coeffs_.front();
    const auto& cd = coeffs_.back();
    if (c0.contains_zero() || cd.contains_zero()) {
      reason = "pi enclosure too coarse to fix the sign of an extreme coefficient";
      return false;
    }
    // Cauchy bounds for the roots of the polynomial and of its reversal.
    Rational low_ratio = 0, high_ratio = 0;
    for (int k = 1; k <= d; ++k) low_ratio = std::max(low_ratio, coeffs_[k].magnitude() / c0.mignitude());
    for (int k = 0; k < d; ++k) high_ratio = std::max(high_ratio, coeffs_[k].magnitude() / cd.mignitude());
    const Rational lo = power_of_two_below(Rational(1) / (1 + low_ratio));
    Rational hi = power_of_two_above(1 + high_ratio);
    if (u_max && *u_max > hi) hi = *u_max;

    struct Task {
      Rational a, b;
      int depth;
    };
    std::vector<Task> stack{{lo, hi, 0}};
    while (!stack.empty()) {
      Task t = std::move(stack.back());
      stack.pop_back();
      const auto [value, slope] = enclose(taylor((t.a + t.b) / 2), (t.b - t.a) / 2);
      if (value.certified_sign() != 0) continue;
      if (slope.certified_sign() != 0) {
        const PointSign sa = sign_at(t.a), sb = sign_at(t.b);
        if (sa.certified && sb.certified) {
          if (sa.sign * sb.sign < 0) roots.emplace_back(t.a, t.b);
          continue;
        }
      }
      if (t.depth >= max_depth_) {
        suspects.emplace_back(t.a, t.b);
        continue;
      }
      const Rational mid = (t.a + t.b) / 2;
      const PointSign sm = sign_at(mid);
      if (sm.exact_zero) {
        if (simple_at(mid))
          roots.emplace_back(mid, mid);
        else
          suspects.emplace_back(mid, mid);
      }
      stack.push_back({mid, t.b, t.depth + 1});
      stack.push_back({t.a, mid, t.depth + 1});
    }
    if (!suspects.empty()) {
      reason = "zero candidates without a certified sign change (possible even multiplicity)";
      return false;
    }
    return true;
  }

 private:
  RationalPolynomial p_, q_, dp_, dq_;
  RationalInterval pi_;
  int max_depth_;
  std::vector<RationalInterval> coeffs_;
};

}  // namespace

ZeroCertificate count_zeros(const MelnikovPolynomial& m, const CountOptions& options) {
  if (m.is_zero()) throw DegenerateInputError("Melnikov polynomial is identically zero");
  // Coefficient k of P + pi Q vanishes iff both rational parts do (pi is irrational).
  int v = std::numeric_limits<int>::max();
  if (!m.P.is_zero()) v = std::min(v, m.P.valuation());
  if (!m.Q.is_zero()) v = std::min(v, m.Q.valuation());
  const RationalPolynomial p = m.P.shifted_down(v);
  const RationalPolynomial q = m.Q.shifted_down(v);

  ZeroCertificate cert;
  int bits = std::max(8, options.pi_bits);
  while (true) {
    const int max_depth = std::min(bits + 16, 1024);
    Isolator iso(p, q, pi_enclosure(bits), max_depth);
    std::vector<RationalInterval> roots, suspects;
    std::string reason;
    const bool ok = iso.run(options.u_max, roots, suspects, reason);
    if (ok)
      for (auto& r : roots) r = iso.refine(r, pow2(-options.refine_bits));
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.lo() < b.lo(); });
    cert.isolating_intervals = std::move(roots);
    cert.count = static_cast<int>(cert.isolating_intervals.size());
    cert.suspects = std::move(suspects);
    cert.pi_bits_used = bits;
    if (ok) {
      cert.status = ZeroCertificate::Status::Certified;
      cert.reason.clear();
      return cert;
    }
    cert.status = ZeroCertificate::Status::Uncertified;
    cert.reason = reason;
    if (bits >= options.max_pi_bits) return cert;
    bits = std::min(bits * 2, options.max_pi_bits);
  }
}

MelnikovPolynomial LinearFamily::combine(const std::vector<Rational>& params) const {
  if (params.size() != basis.size()) throw DomainError("parameter vector does not match the family dimension");
  MelnikovPolynomial m;
  for (std::size_t i = 0; i < params.size(); ++i)
    if (params[i] != 0) m += params[i] * basis[i];
  return m;
}

PiecewisePerturbation LinearFamily::perturbation(const std::vector<Rational>& params) const {
  if (directions.size() != basis.size())
    throw DomainError("family has no perturbation directions");
  if (params.size() != basis.size()) throw DomainError("parameter vector does not match the family dimension");
  int degree = 0;
  for (const auto& d : directions) degree = std::max(degree, d.degree());
  PiecewisePerturbation p(degree);
  for (std::size_t i = 0; i < params.size(); ++i) p += params[i] * directions[i];
  return p;
}

LinearFamily LinearFamily::from_directions(std::vector<PiecewisePerturbation> directions,
                                           std::vector<std::string> labels) {
  LinearFamily f;
  for (const auto& d : directions) f.basis.push_back(melnikov_polynomial(d, SwitchingCurve::monomial(3)));
  f.directions = std::move(directions);
  f.labels = std::move(labels);
  return f;
}

LinearFamily LinearFamily::monomials(const std::vector<int>& powers) {
  LinearFamily f;
  for (int k : powers) {
    f.basis.push_back({RationalPolynomial::monomial(k), {}});
    f.labels.push_back("u^" + std::to_string(k));
  }
  return f;
}

LinearFamily melnikov_family_degree1() {
  return LinearFamily::from_directions(
      {unit_perturbation(1, Channel::BPlus, 0, 0), unit_perturbation(1, Channel::BPlus, 0, 1),
       unit_perturbation(1, Channel::APlus, 0, 0)},
      {"b+_{0,0}", "b+_{0,1}", "a+_{0,0}"});
}

LinearFamily melnikov_family_degree2() {
  return LinearFamily::from_directions(
      {unit_perturbation(2, Channel::BPlus, 0, 0), unit_perturbation(2, Channel::BPlus, 0, 1),
       unit_perturbation(2, Channel::APlus, 0, 0), unit_perturbation(2, Channel::APlus, 2, 0),
       unit_perturbation(2, Channel::BPlus, 0, 2), unit_perturbation(2, Channel::BPlus, 1, 1)},
      {"b+_{0,0}", "b+_{0,1}", "a+_{0,0}", "a+_{2,0}", "b+_{0,2}", "b+_{1,1}"});
}

LinearFamily melnikov_monomial_family_degree2() {
  LinearFamily f;
  for (int k : {1, 2, 3, 5, 6, 7, 9}) {
    const bool pi_channel = k == 2 || k == 6;
    MelnikovPolynomial m;
    (pi_channel ? m.Q : m.P) = RationalPolynomial::monomial(k);
    f.basis.push_back(m);
    f.labels.push_back((pi_channel ? "pi*u^" : "u^") + std::to_string(k));
  }
  return f;
}

namespace {

Rational exact_value(const MelnikovPolynomial& m, const Rational& u, const Rational& pi) {
  return m.P(u) + pi * m.Q(u);
}

// Certified sign of P + pi Q at a rational point (0 when undecided or zero).
int certified_sign(const MelnikovPolynomial& m, const Rational& u, const RationalInterval& pi) {
  const Rational pv = m.P(u), qv = m.Q(u);
  return RationalInterval(pv + pi.lo() * qv, pv + pi.hi() * qv).certified_sign();
}

// Separating points around sorted targets: below the first, between each pair, above the last.
std::vector<Rational> separators(const std::vector<Rational>& targets) {
  std::vector<Rational> s;
  s.push_back(targets.front() / 2);
  for (std::size_t l = 0; l + 1 < targets.size(); ++l) s.push_back((targets[l] + targets[l + 1]) / 2);
  s.push_back(targets.size() > 1 ? targets.back() + (targets.back() - targets[targets.size() - 2]) / 2
                                 : targets.back() * 2);
  return s;
}

bool alternates(const MelnikovPolynomial& m, const std::vector<Rational>& targets, const RationalInterval& pi) {
  int last = 0;
  for (const auto& s : separators(targets)) {
    const int sg = certified_sign(m, s, pi);
    if (sg == 0 || sg == last) return false;
    last = sg;
  }
  return true;
}

constexpr int kParamBits = 40;

struct Attempt {
  std::vector<Rational> params;
  MelnikovPolynomial polynomial;
  ZeroCertificate certificate;
  std::vector<Rational> pinned;
};

std::optional<Attempt> interpolate(const LinearFamily& family, std::size_t fixed, const std::vector<Rational>& pinned,
                                   const Rational& pi_rational, const RationalInterval& pi_check) {
  const std::size_t p = pinned.size();
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < family.dimension() && unknown.size() < p; ++i)
    if (i != fixed) unknown.push_back(i);

  using Matrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
  Matrix a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  Vector rhs(static_cast<Eigen::Index>(p));
  for (std::size_t l = 0; l < p; ++l) {
    for (std::size_t c = 0; c < p; ++c)
      a(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(c)) =
          exact_value(family.basis[unknown[c]], pinned[l], pi_rational);
    rhs(static_cast<Eigen::Index>(l)) = -exact_value(family.basis[fixed], pinned[l], pi_rational);
  }
  const auto solution = bareiss_solve(a, rhs);
  if (!solution) return std::nullopt;

  Attempt out;
  out.params.assign(family.dimension(), Rational(0));
  out.params[fixed] = 1;
  for (std::size_t c = 0; c < p; ++c) out.params[unknown[c]] = (*solution)(static_cast<Eigen::Index>(c));
  out.pinned = pinned;

  // Nudge the constant-sign coefficient when a pinned zero fails to change sign.
  if (!alternates(family.combine(out.params), pinned, pi_check)) {
    for (const Rational& delta : {pow2(-20), -pow2(-20)}) {
      auto trial = out.params;
      trial[fixed] += delta;
      if (alternates(family.combine(trial), pinned, pi_check)) {
        out.params = trial;
        break;
      }
    }
  }

  // Normalize, then round to a dyadic grid; the certificate below is taken on the rounded vector.
  Rational scale = 0;
  for (const auto& c : out.params) scale = std::max(scale, abs_value(c));
  const Rational grid = pow2(kParamBits);
  for (auto& c : out.params) {
    const Rational scaled = c / scale * grid;
    Integer num = numerator(scaled) / denominator(scaled);
    if (abs_value(scaled - Rational(num)) * 2 > 1) num += scaled > 0 ? 1 : -1;
    c = Rational(num) / grid;
  }
  out.polynomial = family.combine(out.params);
  out.certificate = count_zeros(out.polynomial);
  return out;
}

}  // namespace

Realization realize_zeros(const std::vector<Rational>& targets, const LinearFamily& family) {
  if (targets.empty()) throw DomainError("realize_zeros needs at least one target");
  for (std::size_t l = 0; l < targets.size(); ++l) {
    if (targets[l] <= 0) throw DomainError("targets must be positive");
    if (l > 0 && targets[l] <= targets[l - 1]) throw DomainError("targets must be strictly ascending");
  }
  if (family.dimension() < 2) throw RealizationError("family needs at least two basis functions");

  std::optional<std::size_t> fixed;
  for (std::size_t i = 0; i < family.dimension() && !fixed; ++i) {
    if (family.basis[i].is_zero()) continue;
    const auto cert = count_zeros(family.basis[i]);
    if (cert.certified() && cert.count == 0) fixed = i;
  }
  if (!fixed) throw RealizationError("no basis function of constant sign on (0, inf)");

  const Rational pi_rational = pi_enclosure(256).mid();
  const RationalInterval pi_check = pi_enclosure(128);
  const std::size_t k = targets.size();

  const auto finish = [&](Attempt a) {
    return Realization{std::move(a.params), std::move(a.polynomial), std::move(a.certificate), std::move(a.pinned),
                       *fixed};
  };

  if (family.dimension() >= k + 1) {
    auto attempt = interpolate(family, *fixed, targets, pi_rational, pi_check);
    if (!attempt) throw SingularSystemError("interpolation matrix is singular for these targets");
    if (!attempt->certificate.certified() || attempt->certificate.count < static_cast<int>(k))
      throw RealizationError("interpolated combination certified only " +
                             std::to_string(attempt->certificate.count) + " simple zeros");
    return finish(std::move(*attempt));
  }

  // Too few functions to pin every target: pin each (dimension - 1)-subset.
  const std::size_t p = family.dimension() - 1;
  std::vector<bool> mask(k, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(p), true);
  std::optional<Attempt> best;
  do {
    std::vector<Rational> pinned;
    for (std::size_t l = 0; l < k; ++l)
      if (mask[l]) pinned.push_back(targets[l]);
    auto attempt = interpolate(family, *fixed, pinned, pi_rational, pi_check);
    if (!attempt || !attempt->certificate.certified()) continue;
    if (!best || attempt->certificate.count > best->certificate.count) best = std::move(attempt);
  } while (std::prev_permutation(mask.begin(), mask.end()));

  if (!best) throw SingularSystemError("every pinned subset of the targets gave a singular system");
  if (best->certificate.count < static_cast<int>(k))
    throw RealizationError("family of dimension " + std::to_string(family.dimension()) + " reached at most " +
                           std::to_string(best->certificate.count) + " certified simple zeros, " +
                           std::to_string(k) + " requested");
  return finish(std::move(*best));
}

PiecewisePerturbation random_perturbation(int degree, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  constexpr long kDenominator = 1L << 16;
  std::uniform_int_distribution<long> numerator(-kDenominator, kDenominator);
  PiecewisePerturbation p(degree);
  for (Channel c : kAllChannels)
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j) p.set(c, i, j, Rational(numerator(rng), kDenominator));
  return p;
}

int zero_bound(int n) {
  if (n <= 1) return 3;
  if (n == 2) return 6;
  return 6 * (n / 2) + 6;
}

int count_zeros_numeric(const PiecewisePerturbation& pert, const SwitchingCurve& curve, double u_min,
                        double u_max, int samples) {
  int changes = 0;
  int last = 0;
  const double ratio = std::log(u_max / u_min);
  for (int s = 0; s < samples; ++s) {
    const double u = u_min * std::exp(ratio * s / (samples - 1));
    const double value = melnikov_numeric(pert, curve, h_of_u(CrossingParameter(u), curve));
    const int sg = value > 0 ? 1 : (value < 0 ? -1 : 0);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

SweepResult sweep_bound(int degree, const SwitchingCurve& curve, const SweepOptions& options) {
  if (degree < 1 || options.trials < 1) throw DomainError("sweep needs degree >= 1 and trials >= 1");
  const bool exact = curve.m() == 3 && curve.is_odd();

  // -1 marks an uncertified trial.
  std::vector<int> counts(static_cast<std::size_t>(options.trials), 0);
  const auto run_trial = [&](int t) {
    const auto pert = random_perturbation(degree, options.seed, static_cast<std::uint64_t>(t));
    if (!exact) {
      counts[t] = count_zeros_numeric(pert, curve, options.numeric_u_min, options.numeric_u_max,
                                      options.numeric_samples);
      return;
    }
    const auto m = melnikov_polynomial(pert, curve);
    if (m.is_zero()) return;
    CountOptions co;
    co.pi_bits = options.pi_bits;
    const auto cert = count_zeros(m, co);
    counts[t] = cert.certified() ? cert.count : -1;
  };

  const int threads = std::max(1, std::min(options.threads, options.trials));
  if (threads == 1) {
    for (int t = 0; t < options.trials; ++t) run_trial(t);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (int t = w; t < options.trials; t += threads) run_trial(t);
      });
  }

  SweepResult r;
  r.degree = degree;
  r.trials = options.trials;
  r.numeric_path = !exact;
  for (int c : counts) {
    if (c < 0) {
      ++r.uncertified;
      continue;
    }
    ++r.histogram[c];
    r.max_observed = std::max(r.max_observed, c);
  }
  if (exact) {
    r.bound = zero_bound(degree);
    r.within_bound = r.max_observed <= *r.bound;
  }
  return r;
}

}  // namespace melnikov
