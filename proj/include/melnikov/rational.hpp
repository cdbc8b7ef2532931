#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace melnikov {

/// Exact arbitrary-precision rational. Expression templates are disabled so the
/// type behaves as a plain value inside Eigen containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Canonical "num/den" form; the denominator is always written, even when it is 1.
std::string to_string(const Rational& q);

/// Accepts "num/den", "num" or a plain decimal literal such as "-0.125".
/// Throws ConfigError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Exact value of a finite double.
Rational from_double(double x);

/// Dyadic rational 2^e.
Rational pow2(int e);

int sign(const Rational& q);

}  // namespace melnikov
