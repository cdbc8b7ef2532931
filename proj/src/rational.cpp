#include "melnikov/rational.hpp"

#include <cmath>
#include <regex>

#include "melnikov/errors.hpp"

namespace melnikov {

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  static const std::regex fraction(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  static const std::regex decimal(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, fraction)) {
    const Integer num(m[1].str());
    const Integer den(m[2].matched ? m[2].str() : std::string("1"));
    if (den == 0) throw ConfigError("zero denominator in rational '" + s + "'");
    return Rational(num, den);
  }
  if (std::regex_match(s, m, decimal)) {
    const std::string digits = m[2].str() + m[3].str();
    Integer num(digits.empty() ? std::string("0") : digits);
    Integer den = 1;
    for (std::size_t k = 0; k < m[3].str().size(); ++k) den *= 10;
    if (m[1].str() == "-") num = -num;
    return Rational(num, den);
  }
  throw ConfigError("malformed rational '" + s + "'");
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite double to a rational");
  int e = 0;
  const double mant = std::frexp(x, &e);
  // 53-bit mantissa scaled to an integer.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  return Rational(scaled) * pow2(e - 53);
}

Rational pow2(int e) {
  Integer p = 1;
  p <<= static_cast<unsigned>(e < 0 ? -e : e);
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

int sign(const Rational& q) { return q.sign(); }

}  // namespace melnikov
