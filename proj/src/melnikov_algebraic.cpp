#include "melnikov/melnikov_algebraic.hpp"

#include <cmath>
#include <numbers>

#include "melnikov/errors.hpp"

namespace melnikov {

namespace {

// (-1)^e
int parity_sign(int e) { return e % 2 == 0 ? 1 : -1; }

const RationalPolynomial& h_polynomial() {
  static const RationalPolynomial h{Rational(0), Rational(1)};
  return h;
}

// h = u^2 + u^6
const RationalPolynomial& h_in_u() {
  static const RationalPolynomial h = RationalPolynomial::monomial(2) + RationalPolynomial::monomial(6);
  return h;
}

int degree_or_minus1(const RationalPolynomial& p) { return p.degree(); }

}  // namespace

bool BasisCombination::is_zero() const {
  return j00.is_zero() && j11.is_zero() && j01.is_zero() && sigma.empty();
}

BasisCombination& BasisCombination::operator+=(const BasisCombination& o) {
  j00 += o.j00;
  j11 += o.j11;
  j01 += o.j01;
  for (const auto& [k, c] : o.sigma) add_sigma_power(k, c);
  return *this;
}

BasisCombination& BasisCombination::operator*=(const Rational& s) {
  if (s == 0) return *this = BasisCombination{};
  j00 *= s;
  j11 *= s;
  j01 *= s;
  for (auto& [k, c] : sigma) c *= s;
  return *this;
}

BasisCombination BasisCombination::times_h() const {
  BasisCombination r = *this;
  const auto& h = h_polynomial();
  r.j00 = r.j00 * h;
  r.j11 = r.j11 * h;
  r.j01 = r.j01 * h;
  for (auto& [k, c] : r.sigma) c = c * h;
  return r;
}

void BasisCombination::add_sigma_power(int power, const RationalPolynomial& coeff) {
  auto& slot = sigma[power];
  slot += coeff;
  if (slot.is_zero()) sigma.erase(power);
}

double BasisCombination::evaluate(double h) const {
  const double s = melnikov::sigma(EnergyLevel(h), SwitchingCurve::monomial(3)).u();
  const double j00_value = 2.0 * s;
  const double j01_value = std::numbers::pi * h / 2.0;
  const double j11_value = -2.0 / 3.0 * std::pow(s, 9);
  double total = j00.evaluate(h) * j00_value + j11.evaluate(h) * j11_value + j01.evaluate(h) * j01_value;
  for (const auto& [k, c] : sigma) total += c.evaluate(h) * std::pow(s, k);
  return total;
}

double MelnikovPolynomial::evaluate(double u) const {
  return P.evaluate(u) + std::numbers::pi * Q.evaluate(u);
}

const BasisCombination& Reducer::J(int i, int j) {
  if (i < 0 || j < 0) throw DomainError("J_{i,j} needs nonnegative indices");
  if (const auto it = memo_.find({i, j}); it != memo_.end()) return it->second;

  BasisCombination r;
  if (i % 2 == 1 && j % 2 == 0) {
    // Odd integrand in x over a symmetric x-range.
  } else if (i == 0 && j == 0) {
    r.j00 = RationalPolynomial::constant(1);
  } else if (i == 1 && j == 1) {
    r.j11 = RationalPolynomial::constant(1);
  } else if (i == 0 && j == 1) {
    r.j01 = RationalPolynomial::constant(1);
  } else if (j >= 2) {
    // J_{i,j} = j/(i+j+1) h J_{i,j-2} + (1 - (-1)^e)/(i+j+1) sigma^e,  e = i + 3j + 1
    r = Rational(j, i + j + 1) * J(i, j - 2).times_h();
    const int e = i + 3 * j + 1;
    const Rational c(1 - parity_sign(e), i + j + 1);
    if (c != 0) r.add_sigma_power(e, RationalPolynomial::constant(c));
  } else {
    // J_{i,j} = (i-1)/(i+j+1) h J_{i-2,j} + ((-1)^e - 1)/(i+j+1) sigma^e,  e = i + 3j + 5
    r = Rational(i - 1, i + j + 1) * J(i - 2, j).times_h();
    const int e = i + 3 * j + 5;
    const Rational c(parity_sign(e) - 1, i + j + 1);
    if (c != 0) r.add_sigma_power(e, RationalPolynomial::constant(c));
  }
  return memo_.emplace(std::make_pair(i, j), std::move(r)).first->second;
}

BasisCombination Reducer::I(int i, int j) {
  // The lower arc is the point reflection of the upper one with the same orientation.
  const bool negate = (j % 2 == 0) || (i % 2 == 1);
  BasisCombination r = J(i, j);
  if (negate) r *= Rational(-1);
  return r;
}

namespace {
Reducer& thread_reducer() {
  thread_local Reducer reducer;
  return reducer;
}
}  // namespace

BasisCombination reduce_J(int i, int j) { return thread_reducer().J(i, j); }
BasisCombination reduce_I(int i, int j) { return thread_reducer().I(i, j); }

BasisCombination assemble_M(const PiecewisePerturbation& pert) {
  Reducer& red = thread_reducer();
  BasisCombination m;
  for (const auto& [idx, b] : pert.coefficients(Channel::BPlus)) m += b * red.J(idx.first, idx.second);
  for (const auto& [idx, b] : pert.coefficients(Channel::BMinus)) m += b * red.I(idx.first, idx.second);

  // int x^i y^j dy = -i/(j+1) int x^(i-1) y^(j+1) dx - boundary terms at A and B.
  for (const auto& [idx, a] : pert.coefficients(Channel::APlus)) {
    const auto [i, j] = idx;
    if (i >= 1) m += (a * Rational(i, j + 1)) * red.J(i - 1, j + 1);
  }
  for (const auto& [idx, a] : pert.coefficients(Channel::AMinus)) {
    const auto [i, j] = idx;
    if (i >= 1) m += (a * Rational(i, j + 1)) * red.I(i - 1, j + 1);
  }
  const RationalPolynomial phi = boundary_polynomial(pert);
  for (int k = 0; k <= phi.degree(); ++k)
    if (phi.coeff(k) != 0) m.add_sigma_power(k, RationalPolynomial::constant(phi.coeff(k)));
  return m;
}

RationalPolynomial boundary_polynomial(const PiecewisePerturbation& pert) {
  RationalPolynomial phi;
  const auto add = [&](Channel c, int orientation) {
    for (const auto& [idx, a] : pert.coefficients(c)) {
      const auto [i, j] = idx;
      const int e = i + 3 * j + 3;
      const Rational coeff = Rational(orientation * (parity_sign(e) - 1), j + 1) * a;
      if (coeff != 0) phi += RationalPolynomial::monomial(e, coeff);
    }
  };
  add(Channel::APlus, 1);
  add(Channel::AMinus, -1);
  return phi;
}

MelnikovPolynomial to_u_polynomial(const BasisCombination& comb) {
  const auto& h = h_in_u();
  MelnikovPolynomial out;
  out.P = RationalPolynomial::monomial(1, 2) * compose(comb.j00, h) +
          RationalPolynomial::monomial(9, Rational(-2, 3)) * compose(comb.j11, h);
  for (const auto& [k, c] : comb.sigma) out.P += RationalPolynomial::monomial(k) * compose(c, h);
  out.Q = Rational(1, 2) * (h * compose(comb.j01, h));
  return out;
}

MelnikovPolynomial melnikov_polynomial(const PiecewisePerturbation& pert, const SwitchingCurve& curve) {
  if (curve.m() != 3 || curve.kind() == SwitchingCurve::Kind::MonomialEven)
    throw DomainError("exact reduction is only available for y = x^3 and y = x^(1/3)");
  if (curve.is_reciprocal()) return Rational(-1) * to_u_polynomial(assemble_M(pert.mirrored()));
  return to_u_polynomial(assemble_M(pert));
}

DegreeReport degree_report(const BasisCombination& comb, int n) {
  DegreeReport r{degree_or_minus1(comb.j00), degree_or_minus1(comb.j11), degree_or_minus1(comb.j01), true};
  r.within_bounds = r.deg_j00 <= n / 2 && r.deg_j01 <= n / 2 && r.deg_j11 <= n / 2 - 1;
  return r;
}

int boundary_degree_bound(int n) { return n % 2 == 0 ? 3 * n + 3 : 3 * n; }

}  // namespace melnikov
