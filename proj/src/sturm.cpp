#include "melnikov/sturm.hpp"

#include "melnikov/errors.hpp"

namespace melnikov {

namespace {

Polynomial<Rational> normalized(const Polynomial<Rational>& p) {
  if (p.is_zero()) return p;
  const Rational& lead = p.leading();
  return p * Rational(1 / (lead < 0 ? -lead : lead));
}

template <typename SignAt>
int variations(const std::vector<Polynomial<Rational>>& chain, SignAt sign_at) {
  int count = 0;
  int last = 0;
  for (const auto& s : chain) {
    const int sg = sign_at(s);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

}  // namespace

std::vector<Polynomial<Rational>> sturm_sequence(const Polynomial<Rational>& p) {
  std::vector<Polynomial<Rational>> chain;
  if (p.is_zero()) return chain;
  chain.push_back(normalized(p));
  Polynomial<Rational> d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(normalized(d));
  while (true) {
    auto rem = divmod(chain[chain.size() - 2], chain.back()).second;
    if (rem.is_zero()) break;
    chain.push_back(normalized(-rem));
  }
  return chain;
}

int sturm_count(const Polynomial<Rational>& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw DomainError("Sturm count of the zero polynomial");
  if (p(lo) == 0) throw DomainError("Sturm count needs p(lo) != 0");
  const auto chain = sturm_sequence(p);
  const auto at = [](const Rational& x) { return [x](const Polynomial<Rational>& s) { return s(x).sign(); }; };
  return variations(chain, at(lo)) - variations(chain, at(hi));
}

int count_positive_roots(const Polynomial<Rational>& p) {
  if (p.is_zero()) throw DomainError("positive-root count of the zero polynomial");
  const Polynomial<Rational> q = p.shifted_down(p.valuation());
  if (q.degree() <= 0) return 0;
  const auto chain = sturm_sequence(q);
  const int at_zero = variations(chain, [](const Polynomial<Rational>& s) { return s.coeff(0).sign(); });
  const int at_inf = variations(chain, [](const Polynomial<Rational>& s) { return s.leading().sign(); });
  return at_zero - at_inf;
}

}  // namespace melnikov
