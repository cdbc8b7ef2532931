#pragma once

#include <vector>

#include "melnikov/polynomial.hpp"
#include "melnikov/rational.hpp"

namespace melnikov {

/// Sturm chain p, p', -rem(...), each member rescaled by a positive constant.
std::vector<Polynomial<Rational>> sturm_sequence(const Polynomial<Rational>& p);

/// Number of distinct real roots in (lo, hi]. Requires p(lo) != 0 and p nonzero.
int sturm_count(const Polynomial<Rational>& p, const Rational& lo, const Rational& hi);

/// Number of distinct roots in (0, inf) of a nonzero polynomial.
int count_positive_roots(const Polynomial<Rational>& p);

}  // namespace melnikov
