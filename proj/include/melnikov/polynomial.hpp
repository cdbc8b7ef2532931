#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace melnikov {

/// Dense univariate polynomial with coefficients stored in ascending powers.
/// The coefficient vector never carries trailing zeros, so the zero polynomial
/// has an empty vector and degree -1.
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Scalar& c) : coeffs_{c} { trim(); }
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const Scalar& c) { return Polynomial(std::vector<Scalar>{c}); }

  static Polynomial monomial(int power, const Scalar& c = Scalar(1)) {
    std::vector<Scalar> v(static_cast<std::size_t>(power) + 1, Scalar(0));
    v.back() = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Smallest power with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (coeffs_[k] != Scalar(0)) return static_cast<int>(k);
    return -1;
  }

  Scalar coeff(int k) const {
    if (k < 0 || k > degree()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }
  Scalar operator[](int k) const { return coeff(k); }
  const Scalar& leading() const { return coeffs_.back(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  /// Horner evaluation in an arbitrary ring T that is constructible from Scalar.
  template <typename T>
  T evaluate(const T& x) const {
    T acc = T(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }
  Scalar operator()(const Scalar& x) const { return evaluate<Scalar>(x); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Scalar> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * Scalar(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  /// Divides by u^k; the low coefficients must be zero.
  Polynomial shifted_down(int k) const {
    if (k <= 0 || is_zero()) return *this;
    return Polynomial(std::vector<Scalar>(coeffs_.begin() + std::min<std::size_t>(k, coeffs_.size()),
                                          coeffs_.end()));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == Scalar(0)) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

/// p(q(x)).
template <typename Scalar>
Polynomial<Scalar> compose(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
  Polynomial<Scalar> acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * q + Polynomial<Scalar>::constant(p.coeff(k));
  return acc;
}

/// Euclidean division over a field: a = quot * b + rem with deg rem < deg b.
template <typename Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> divmod(const Polynomial<Scalar>& a,
                                                         const Polynomial<Scalar>& b) {
  std::vector<Scalar> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial<Scalar>{}, a};
  std::vector<Scalar> quot(static_cast<std::size_t>(a.degree() - db) + 1, Scalar(0));
  for (int k = a.degree(); k >= db; --k) {
    const Scalar c = rem[static_cast<std::size_t>(k)] / b.leading();
    quot[static_cast<std::size_t>(k - db)] = c;
    if (c == Scalar(0)) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeff(j);
  }
  return {Polynomial<Scalar>(std::move(quot)), Polynomial<Scalar>(std::move(rem))};
}

/// Formats as e.g. "120*u^6 - 3/2*u + 1", highest power first.
template <typename Scalar>
std::string to_string(const Polynomial<Scalar>& p, const std::string& var = "u") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Scalar c = p.coeff(k);
    if (c == Scalar(0)) continue;
    const bool negative = c < Scalar(0);
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    const bool unit = (c == Scalar(1));
    if (k == 0 || !unit) os << c;
    if (k > 0) {
      if (!unit) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

}  // namespace melnikov
