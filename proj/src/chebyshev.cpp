#include "melnikov/chebyshev.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cctype>
#include <string>

#include "melnikov/bareiss.hpp"
#include "melnikov/errors.hpp"
#include "melnikov/sturm.hpp"

namespace melnikov {

OrderedBasis::OrderedBasis(std::vector<Polynomial<Rational>> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw DomainError("ordered basis must be nonempty");
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (elements_[i] == elements_[j]) throw DomainError("ordered basis elements must be pairwise distinct");
}

OrderedBasis OrderedBasis::parse(std::string_view text) {
  std::vector<Polynomial<Rational>> elements;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    elements.push_back(parse_polynomial(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return OrderedBasis(std::move(elements));
}

OrderedBasis OrderedBasis::prefix(std::size_t k) const {
  return OrderedBasis(std::vector<Polynomial<Rational>>(elements_.begin(), elements_.begin() + k));
}

Polynomial<Rational> wronskian(const OrderedBasis& basis) {
  const auto k = static_cast<Eigen::Index>(basis.size());
  Eigen::Matrix<Polynomial<Rational>, Eigen::Dynamic, Eigen::Dynamic> w(k, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    Polynomial<Rational> d = basis.elements()[static_cast<std::size_t>(c)];
    for (Eigen::Index r = 0; r < k; ++r) {
      w(r, c) = d;
      d = d.derivative();
    }
  }
  return bareiss_determinant(w);
}

EctReport is_ect(const OrderedBasis& basis) {
  EctReport report{true, {}, std::nullopt};
  for (std::size_t k = 1; k <= basis.size(); ++k) {
    PrefixCertificate cert{k, wronskian(basis.prefix(k)), std::nullopt};
    if (!cert.wronskian.is_zero()) cert.positive_roots = count_positive_roots(cert.wronskian);
    const bool ok = cert.positive_roots.has_value() && *cert.positive_roots == 0;
    report.prefixes.push_back(std::move(cert));
    if (!ok) {
      report.is_ect = false;
      report.failing_prefix = k;
      break;
    }
  }
  return report;
}

Polynomial<Rational> parse_polynomial(std::string_view text, char var) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ConfigError("empty polynomial");

  Polynomial<Rational> result;
  std::size_t pos = 0;
  const auto fail = [&]() { throw ConfigError("malformed polynomial '" + std::string(text) + "'"); };
  while (pos < s.size()) {
    int sgn = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sgn = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail();
    }
    // Coefficient: digits with optional "/digits" or ".digits".
    std::size_t end = pos;
    while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '/' || s[end] == '.'))
      ++end;
    Rational coeff = 1;
    const bool has_coeff = end > pos;
    if (has_coeff) coeff = parse_rational(s.substr(pos, end - pos));
    pos = end;
    int power = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!has_coeff) fail();
      ++pos;
      if (pos >= s.size() || s[pos] != var) fail();
    }
    if (pos < s.size() && s[pos] == var) {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t e = pos;
        while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
        if (e == pos) fail();
        power = std::stoi(s.substr(pos, e - pos));
        pos = e;
      }
    } else if (!has_coeff) {
      fail();
    }
    result += Polynomial<Rational>::monomial(power, Rational(sgn) * coeff);
  }
  return result;
}

}  // namespace melnikov
