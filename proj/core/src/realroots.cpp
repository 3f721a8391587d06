#include "hyparr/realroots.hpp"

#include "hyparr/error.hpp"

namespace hyparr {

UniPoly square_free_part(const UniPoly& q) {
  if (q.is_zero()) throw DomainError("square-free part of the zero polynomial");
  if (q.degree() == 0) return UniPoly::constant(1);
  const UniPoly g = UniPoly::gcd(q, q.derivative());
  return (q / g).monic();
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  UniPoly d = p.derivative();
  while (!d.is_zero()) {
    chain.push_back(d);
    const std::size_t n = chain.size();
    // Positive rescaling keeps signs and stops coefficient growth.
    UniPoly next = -(chain[n - 2] % chain[n - 1]);
    d = next.is_zero() ? next : Scalar(1) / abs(next.leading()) * next;
  }
  return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Scalar& at) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sgn(p(at));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int sign_variations_at_infinity(const std::vector<UniPoly>& chain, bool positive) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sgn(p.leading());
    if (!positive && p.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int count_real_roots(const std::vector<UniPoly>& chain, const Scalar& lo, const Scalar& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

int count_real_roots(const std::vector<UniPoly>& chain) {
  return sign_variations_at_infinity(chain, false) - sign_variations_at_infinity(chain, true);
}

RootCensus root_census(const UniPoly& q) {
  UniPoly sf = square_free_part(q);
  RootCensus census;
  census.distinct = sf.degree();
  census.distinct_real = count_real_roots(sturm_sequence(sf));
  // Strip a root at 0 so that the left endpoint of (0, inf) is not a root.
  if (sf.degree() > 0 && sf.coeff(0) == 0) sf = sf / UniPoly({0, 1});
  const auto chain = sturm_sequence(sf);
  census.positive = sign_variations(chain, 0) - sign_variations_at_infinity(chain, true);
  return census;
}

bool all_real_roots_nonpositive(const UniPoly& q) {
  if (q.is_zero()) throw DomainError("all_real_roots_nonpositive: zero polynomial");
  const RootCensus c = root_census(q);
  return c.distinct_real == c.distinct && c.positive == 0;
}

}  // namespace hyparr
