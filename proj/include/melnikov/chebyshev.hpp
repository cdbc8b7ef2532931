#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "melnikov/polynomial.hpp"
#include "melnikov/rational.hpp"

namespace melnikov {

/// Ordered family of exact polynomials in u; nonempty with pairwise distinct elements.
class OrderedBasis {
 public:
  explicit OrderedBasis(std::vector<Polynomial<Rational>> elements);

  /// Comma-separated list such as "u,u^2,u^3,u^6" or "u - 2, u".
  static OrderedBasis parse(std::string_view text);

  std::size_t size() const { return elements_.size(); }
  const std::vector<Polynomial<Rational>>& elements() const { return elements_; }
  OrderedBasis prefix(std::size_t k) const;

 private:
  std::vector<Polynomial<Rational>> elements_;
};

/// Determinant of the k x k matrix whose row r holds the r-th derivatives.
Polynomial<Rational> wronskian(const OrderedBasis& basis);

struct PrefixCertificate {
  std::size_t prefix_size;
  Polynomial<Rational> wronskian;
  /// Distinct roots of the Wronskian in (0, inf); nullopt when it vanishes identically.
  std::optional<int> positive_roots;
};

struct EctReport {
  bool is_ect;
  std::vector<PrefixCertificate> prefixes;  // up to and including the failing prefix
  std::optional<std::size_t> failing_prefix;
};

/// ECT check on (0, inf): every leading Wronskian must be free of positive roots.
EctReport is_ect(const OrderedBasis& basis);

/// Parses one polynomial in u, e.g. "3/2*u^2 - u + 1".
Polynomial<Rational> parse_polynomial(std::string_view text, char var = 'u');

}  // namespace melnikov
