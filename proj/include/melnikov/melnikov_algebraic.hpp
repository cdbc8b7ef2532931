#pragma once

#include <map>
#include <utility>

#include "melnikov/geometry.hpp"
#include "melnikov/perturbation.hpp"
#include "melnikov/polynomial.hpp"
#include "melnikov/rational.hpp"

namespace melnikov {

using RationalPolynomial = Polynomial<Rational>;

/// Exact combination over the basis of the cubic-curve reduction:
///   j00(h) J_{0,0}(h) + j11(h) J_{1,1}(h) + j01(h) J_{0,1}(h) + sum_k sigma_k(h) sigma(h)^k
/// with every coefficient a rational polynomial in h.
struct BasisCombination {
  RationalPolynomial j00;
  RationalPolynomial j11;
  RationalPolynomial j01;
  std::map<int, RationalPolynomial> sigma;

  bool is_zero() const;

  BasisCombination& operator+=(const BasisCombination& o);
  BasisCombination& operator*=(const Rational& s);
  /// Multiplies every coefficient by h.
  BasisCombination times_h() const;
  void add_sigma_power(int power, const RationalPolynomial& coeff);

  friend BasisCombination operator+(BasisCombination a, const BasisCombination& b) { return a += b; }
  friend BasisCombination operator*(const Rational& s, BasisCombination a) { return a *= s; }
  friend BasisCombination operator-(BasisCombination a) { return a *= Rational(-1); }
  friend bool operator==(const BasisCombination&, const BasisCombination&) = default;

  /// Floating evaluation with J00 = 2 sigma, J01 = pi h / 2, J11 = -(2/3) sigma^9.
  double evaluate(double h) const;
};

/// M(u) = P(u) + pi Q(u) with rational P and Q.
struct MelnikovPolynomial {
  RationalPolynomial P;
  RationalPolynomial Q;

  bool is_zero() const { return P.is_zero() && Q.is_zero(); }
  double evaluate(double u) const;

  MelnikovPolynomial& operator+=(const MelnikovPolynomial& o) {
    P += o.P;
    Q += o.Q;
    return *this;
  }
  friend MelnikovPolynomial operator*(const Rational& s, MelnikovPolynomial m) {
    m.P *= s;
    m.Q *= s;
    return m;
  }
  friend bool operator==(const MelnikovPolynomial&, const MelnikovPolynomial&) = default;
};

/// Memoized reduction of J_{i,j} and I_{i,j} for the curve y = x^3. The memo is
/// not synchronized; keep one Reducer per thread.
class Reducer {
 public:
  const BasisCombination& J(int i, int j);
  BasisCombination I(int i, int j);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  std::map<std::pair<int, int>, BasisCombination> memo_;
};

/// Thread-local convenience wrappers around Reducer.
BasisCombination reduce_J(int i, int j);
BasisCombination reduce_I(int i, int j);

/// Melnikov function of the cubic-curve system over the reduction basis,
/// including the boundary polynomial from integrating the dy-terms by parts.
BasisCombination assemble_M(const PiecewisePerturbation& pert);

/// Substitutes h = u^2 + u^6 and the closed forms of J00, J01, J11.
MelnikovPolynomial to_u_polynomial(const BasisCombination& comb);

/// assemble_M + to_u_polynomial for y = x^3, or for y = x^(1/3) through the
/// mirrored perturbation. Throws DomainError for other curves.
MelnikovPolynomial melnikov_polynomial(const PiecewisePerturbation& pert, const SwitchingCurve& curve);

/// Degree facts about an assembled combination for a degree-n perturbation.
struct DegreeReport {
  int deg_j00, deg_j11, deg_j01;
  bool within_bounds;  // deg j00, j01 <= n/2 and deg j11 <= n/2 - 1
};

DegreeReport degree_report(const BasisCombination& comb, int n);

/// Largest exponent of the boundary polynomial Phi: 3n + 3 for even n, 3n for odd n.
int boundary_degree_bound(int n);

/// Boundary polynomial Phi(u) on its own.
RationalPolynomial boundary_polynomial(const PiecewisePerturbation& pert);

}  // namespace melnikov
