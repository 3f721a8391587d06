#pragma once

#include <vector>

#include "hyparr/unipoly.hpp"

namespace hyparr {

/// q / gcd(q, q'), made monic: same roots as q, each simple.
UniPoly square_free_part(const UniPoly& q);

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Sign changes of the chain at a point, zeros skipped.
int sign_variations(const std::vector<UniPoly>& chain, const Scalar& at);
/// Sign changes of the chain at +infinity (positive) or -infinity (negative).
int sign_variations_at_infinity(const std::vector<UniPoly>& chain, bool positive);

/// Distinct real roots of a square-free polynomial in (lo, hi]; lo must not be a root.
int count_real_roots(const std::vector<UniPoly>& chain, const Scalar& lo, const Scalar& hi);
/// Distinct real roots of a square-free polynomial.
int count_real_roots(const std::vector<UniPoly>& chain);

struct RootCensus {
  int distinct = 0;       ///< degree of the square-free part
  int distinct_real = 0;  ///< its real roots
  int positive = 0;       ///< its roots in (0, infinity)
};

/// Exact census of a nonzero polynomial's distinct roots via Sturm counts.
RootCensus root_census(const UniPoly& q);

/// True iff every complex root of q is real and <= 0. Throws DomainError for q = 0.
bool all_real_roots_nonpositive(const UniPoly& q);

}  // namespace hyparr
