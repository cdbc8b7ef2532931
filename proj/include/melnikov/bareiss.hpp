#pragma once

/*
 * Fraction-free Gaussian elimination (Bareiss).
 *
 * Every intermediate entry is a minor of the input, so divisions are exact
 * over any integral domain: integers, rationals, or polynomials over a field.
 * The scalar type only needs ring operations, comparison with a zero value
 * and an exact_quotient(a, b) overload found by ADL or in this namespace.
 */

#include <Eigen/Core>

#include <optional>
#include <utility>

#include "melnikov/errors.hpp"
#include "melnikov/polynomial.hpp"
#include "melnikov/rational.hpp"

namespace melnikov {

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }

template <typename Scalar>
Polynomial<Scalar> exact_quotient(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  auto [quot, rem] = divmod(a, b);
  if (!rem.is_zero()) throw DomainError("Bareiss step produced an inexact polynomial quotient");
  return quot;
}

template <typename Scalar>
bool is_zero_value(const Scalar& s) {
  if constexpr (requires { s.is_zero(); })
    return s.is_zero();
  else
    return s == Scalar(0);
}

/// Determinant by Bareiss elimination with row pivoting on the first nonzero entry.
template <typename Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw DomainError("determinant of a non-square matrix");
  if (n == 0) return Scalar(1);

  Matrix m = input;
  Scalar previous(1);
  bool negate = false;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    Eigen::Index pivot = k;
    while (pivot < n && is_zero_value(m(pivot, k))) ++pivot;
    if (pivot == n) return Scalar();
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      negate = !negate;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j)
        m(i, j) = exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), previous);
      m(i, k) = Scalar();
    }
    previous = m(k, k);
  }
  Scalar det = m(n - 1, n - 1);
  return negate ? Scalar() - det : det;
}

/// Solves A x = b exactly over a field via fraction-free elimination of [A | b]
/// followed by back substitution. Returns nullopt when A is singular.
template <typename DerivedA, typename DerivedB>
std::optional<Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1>> bareiss_solve(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) throw DomainError("bareiss_solve needs a square system");

  Matrix m(n, n + 1);
  m.leftCols(n) = a;
  m.col(n) = b;
  Scalar previous(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    while (pivot < n && is_zero_value(m(pivot, k))) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) m.row(k).swap(m.row(pivot));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j <= n; ++j)
        m(i, j) = exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), previous);
      m(i, k) = Scalar(0);
    }
    previous = m(k, k);
  }
  Vector x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    Scalar acc = m(i, n);
    for (Eigen::Index j = i + 1; j < n; ++j) acc -= m(i, j) * x(j);
    x(i) = acc / m(i, i);
  }
  return x;
}

}  // namespace melnikov

namespace Eigen {

template <typename S>
struct NumTraits<melnikov::Polynomial<S>> : GenericNumTraits<melnikov::Polynomial<S>> {
  using Real = melnikov::Polynomial<S>;
  using NonInteger = melnikov::Polynomial<S>;
  using Literal = melnikov::Polynomial<S>;
  using Nested = melnikov::Polynomial<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 256
  };
};

}  // namespace Eigen
