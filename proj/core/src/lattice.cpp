#include "hyparr/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hyparr/error.hpp"
#include "hyparr/matrix.hpp"

namespace hyparr {

namespace {

enum class Reduction { contained, disjoint, proper };

// Reduces an augmented row against reduced echelon equations in place.
Reduction reduce_row(VectorQ& row, const std::vector<VectorQ>& equations) {
  for (const auto& eq : equations) {
    std::size_t c = 0;
    while (eq[c] == 0) ++c;
    if (row[c] == 0) continue;
    const Scalar f = row[c];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (eq[j] != 0) row[j] -= f * eq[j];
    }
  }
  const std::size_t n = row.size() - 1;
  bool normal_zero = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (row[j] != 0) {
      normal_zero = false;
      break;
    }
  }
  if (!normal_zero) return Reduction::proper;
  return row[n] == 0 ? Reduction::contained : Reduction::disjoint;
}

std::vector<VectorQ> echelon_of(const std::vector<VectorQ>& rows, std::size_t cols) {
  return rational_echelon(MatrixQ::from_rows(rows, cols)).rows;
}

std::vector<std::size_t> members_of(const Arrangement& a, const std::vector<VectorQ>& equations) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < a.size(); ++i) {
    VectorQ row = a[i].augmented_row();
    if (reduce_row(row, equations) == Reduction::contained) members.push_back(i);
  }
  return members;
}

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const std::vector<std::size_t>& members, std::size_t n) {
  Bits b((n + 63) / 64, 0);
  for (auto i : members) b[i / 64] |= (std::uint64_t{1} << (i % 64));
  return b;
}

bool is_subset(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if ((a[w] & ~b[w]) != 0) return false;
  }
  return true;
}

}  // namespace

IntersectionLattice::IntersectionLattice(int dimension, std::vector<std::vector<Flat>> flats,
                                         std::vector<std::vector<Integer>> mobius)
    : dimension_(dimension), flats_(std::move(flats)), mobius_(std::move(mobius)) {}

std::size_t IntersectionLattice::size() const {
  std::size_t s = 0;
  for (const auto& r : flats_) s += r.size();
  return s;
}

UniPoly IntersectionLattice::characteristic_polynomial() const {
  std::vector<Scalar> c(static_cast<std::size_t>(dimension_) + 1);
  for (std::size_t r = 0; r < flats_.size(); ++r) {
    Integer sum = 0;
    for (const auto& mu : mobius_[r]) sum += mu;
    c[static_cast<std::size_t>(dimension_) - r] += Scalar(sum);
  }
  return UniPoly(std::move(c));
}

IntersectionLattice intersection_lattice(const Arrangement& a) {
  const std::size_t n = a.size();
  const std::size_t cols = static_cast<std::size_t>(a.dimension()) + 1;
  std::vector<VectorQ> rows;
  for (const auto& h : a.hyperplanes()) rows.push_back(h.augmented_row());

  std::vector<std::vector<Flat>> levels;
  levels.push_back({Flat{{}, 0, {}}});
  while (true) {
    const auto& current = levels.back();
    std::map<std::vector<VectorQ>, Flat> next;
    for (const auto& x : current) {
      std::vector<bool> done(n, false);
      for (auto i : x.members) done[i] = true;
      for (std::size_t h = 0; h < n; ++h) {
        if (done[h]) continue;
        VectorQ r = rows[h];
        const Reduction red = reduce_row(r, x.equations);
        if (red != Reduction::proper) {
          done[h] = true;
          continue;
        }
        std::vector<VectorQ> eqs = x.equations;
        eqs.push_back(std::move(r));
        eqs = echelon_of(eqs, cols);
        auto it = next.find(eqs);
        if (it == next.end()) {
          Flat y{eqs, x.rank + 1, members_of(a, eqs)};
          it = next.emplace(std::move(eqs), std::move(y)).first;
        }
        for (auto m : it->second.members) done[m] = true;
      }
    }
    if (next.empty()) break;
    std::vector<Flat> level;
    level.reserve(next.size());
    for (auto& [key, f] : next) level.push_back(std::move(f));
    levels.push_back(std::move(level));
  }

  // mu(X) = -sum over flats strictly below X (members a proper subset).
  std::vector<std::vector<Bits>> bits(levels.size());
  for (std::size_t r = 0; r < levels.size(); ++r) {
    for (const auto& f : levels[r]) bits[r].push_back(to_bits(f.members, n));
  }
  std::vector<std::vector<Integer>> mobius(levels.size());
  mobius[0] = {Integer(1)};
  for (std::size_t r = 1; r < levels.size(); ++r) {
    mobius[r].resize(levels[r].size());
    for (std::size_t i = 0; i < levels[r].size(); ++i) {
      Integer sum = 1;  // the whole space
      for (std::size_t s = 1; s < r; ++s) {
        for (std::size_t j = 0; j < levels[s].size(); ++j) {
          if (is_subset(bits[s][j], bits[r][i])) sum += mobius[s][j];
        }
      }
      mobius[r][i] = -sum;
    }
  }
  return IntersectionLattice(a.dimension(), std::move(levels), std::move(mobius));
}

Flat flat_of(const Arrangement& a, std::span<const std::size_t> indices) {
  const std::size_t cols = static_cast<std::size_t>(a.dimension()) + 1;
  std::vector<VectorQ> rows;
  for (auto i : indices) {
    if (i >= a.size()) throw DimensionError("hyperplane index out of range");
    rows.push_back(a[i].augmented_row());
  }
  auto eqs = echelon_of(rows, cols);
  for (const auto& e : eqs) {
    bool normal_zero = std::all_of(e.begin(), e.end() - 1, [](const Scalar& s) { return s == 0; });
    if (normal_zero) throw DomainError("the hyperplanes have empty intersection");
  }
  Flat f{eqs, static_cast<int>(eqs.size()), members_of(a, eqs)};
  return f;
}

Arrangement localization(const Arrangement& a, const Flat& x) {
  const std::size_t cols = static_cast<std::size_t>(a.dimension()) + 1;
  for (const auto& e : x.equations) {
    if (e.size() != cols) throw DomainError("flat has the wrong ambient dimension");
  }
  const auto members = members_of(a, x.equations);
  std::vector<VectorQ> rows;
  for (auto i : members) rows.push_back(a[i].augmented_row());
  if (echelon_of(rows, cols) != x.equations || (!x.members.empty() && x.members != members)) {
    throw DomainError("not a flat of the arrangement");
  }
  return a.subset(members);
}

// ---- characteristic polynomial ----------------------------------------------

namespace {

UniPoly charpoly_delres(const Arrangement& a) {
  const int n = a.dimension();
  if (a.empty()) return UniPoly::monomial(1, n);
  if (n == 1) return UniPoly({-static_cast<long>(a.size()), 1});
  const std::size_t last = a.size() - 1;
  return charpoly_delres(a.without(last)) - charpoly_delres(restrict(a, last).arrangement);
}

std::uint64_t next_prime_above(const Integer& bound) {
  Integer p;
  mpz_nextprime(p.get_mpz_t(), bound.get_mpz_t());
  if (!p.fits_ulong_p()) throw ResourceError("prime above bound " + to_string(bound) + " does not fit in 64 bits");
  return p.get_ui();
}

UniPoly interpolate(const std::vector<std::uint64_t>& xs, const std::vector<Integer>& ys) {
  UniPoly result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UniPoly basis = UniPoly::constant(1);
    Scalar denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UniPoly::linear_root(Scalar(Integer(std::to_string(xs[j]))));
      denom *= Scalar(Integer(std::to_string(xs[i]))) - Scalar(Integer(std::to_string(xs[j])));
    }
    result = result + (Scalar(ys[i]) / denom) * basis;
  }
  return result;
}

UniPoly charpoly_finitefield(const Arrangement& a, const FiniteFieldOptions& ff) {
  const std::size_t ell = static_cast<std::size_t>(a.dimension());
  const auto primes = finite_field_primes(a, ell + 1);
  std::vector<Integer> counts;
  for (auto q : primes) {
    counts.emplace_back(std::to_string(count_complement_mod(a, q, ff.enumeration_budget)));
  }
  UniPoly chi = interpolate(primes, counts);
  const bool ok = chi.degree() == static_cast<int>(ell) && chi.leading() == 1 &&
                  std::all_of(chi.coefficients().begin(), chi.coefficients().end(),
                              [](const Scalar& c) { return c.get_den() == 1; });
  if (!ok) throw InvariantViolation("finite-field interpolant " + chi.to_string() + " is not a monic integer polynomial of degree " + std::to_string(ell));
  return chi;
}

// Exact determinant of a small integer matrix with __int128 Bareiss.
__int128 small_det(std::vector<std::vector<__int128>> m) {
  const std::size_t k = m.size();
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && m[p][c] == 0) ++p;
    if (p == k) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < k; ++i) {
      for (std::size_t j = c + 1; j < k; ++j) m[i][j] = (m[c][c] * m[i][j] - m[i][c] * m[c][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[c][c];
  }
  return sign * prev;
}

Integer hadamard_bound(const std::vector<VectorZ>& rows) {
  std::vector<Integer> norms2;
  for (const auto& r : rows) {
    Integer s = 0;
    for (const auto& x : r) s += x * x;
    norms2.push_back(s);
  }
  std::sort(norms2.begin(), norms2.end(), std::greater<>());
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Integer best = 1;
  Integer prod = 1;
  for (std::size_t k = 0; k < std::min(cols, norms2.size()); ++k) {
    prod *= norms2[k];
    Integer root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    root += 1;
    if (root > best) best = root;
  }
  return best;
}

}  // namespace

Integer good_reduction_bound(const Arrangement& a) {
  // Augmented rows restricted to the columns that are not identically zero.
  const std::size_t cols = static_cast<std::size_t>(a.dimension()) + 1;
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& h : a.hyperplanes()) {
      const Integer& x = j + 1 == cols ? h.constant() : h.normal()[j];
      if (x != 0) {
        live.push_back(j);
        break;
      }
    }
  }
  std::vector<VectorZ> rows;
  Integer max_entry = 0;
  for (const auto& h : a.hyperplanes()) {
    VectorZ r;
    for (auto j : live) {
      r.push_back(j + 1 == cols ? h.constant() : h.normal()[j]);
      if (abs(r.back()) > max_entry) max_entry = abs(r.back());
    }
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return 1;
  const std::size_t n = rows.size();
  const std::size_t c = live.size();
  // Count the minors before enumerating them.
  double total = 0;
  for (std::size_t k = 1; k <= std::min(n, c); ++k) {
    total += std::exp(std::lgamma(double(n) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(n - k) + 1) +
                      std::lgamma(double(c) + 1) - std::lgamma(double(k) + 1) - std::lgamma(double(c - k) + 1));
  }
  if (total > 3e6 || max_entry > 32768 || c > 6) return hadamard_bound(rows);

  __int128 best = 0;
  std::vector<std::size_t> rsel, csel;
  std::vector<std::vector<__int128>> sub;
  for (std::size_t k = 1; k <= std::min(n, c); ++k) {
    // iterate column subsets of size k
    std::vector<bool> cmask(c, false);
    std::fill(cmask.begin(), cmask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      csel.clear();
      for (std::size_t j = 0; j < c; ++j) {
        if (cmask[j]) csel.push_back(j);
      }
      std::vector<bool> rmask(n, false);
      std::fill(rmask.begin(), rmask.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        rsel.clear();
        for (std::size_t i = 0; i < n; ++i) {
          if (rmask[i]) rsel.push_back(i);
        }
        sub.assign(k, std::vector<__int128>(k));
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = rows[rsel[i]][csel[j]].get_si();
        }
        __int128 d = small_det(sub);
        if (d < 0) d = -d;
        if (d > best) best = d;
      } while (std::prev_permutation(rmask.begin(), rmask.end()));
    } while (std::prev_permutation(cmask.begin(), cmask.end()));
  }
  // __int128 -> Integer through two 64-bit halves
  const auto hi = static_cast<unsigned long long>(best >> 64);
  const auto lo = static_cast<unsigned long long>(best);
  Integer out(std::to_string(hi));
  out <<= 64;
  out += Integer(std::to_string(lo));
  return out;
}

std::vector<std::uint64_t> finite_field_primes(const Arrangement& a, std::size_t count) {
  Integer bound = good_reduction_bound(a);
  std::vector<std::uint64_t> primes;
  Integer cur = bound;
  while (primes.size() < count) {
    const std::uint64_t p = next_prime_above(cur);
    primes.push_back(p);
    cur = Integer(std::to_string(p));
  }
  return primes;
}

std::uint64_t count_complement_mod(const Arrangement& a, std::uint64_t q, std::uint64_t enumeration_budget) {
  if (q < 2) throw DomainError("count_complement_mod needs q >= 2");
  const std::size_t ell = static_cast<std::size_t>(a.dimension());
  long double size = 1;
  for (std::size_t i = 0; i < ell; ++i) size *= static_cast<long double>(q);
  if (size > static_cast<long double>(enumeration_budget)) {
    throw ResourceError("enumeration of (Z/" + std::to_string(q) + "Z)^" + std::to_string(ell) +
                        " exceeds the budget of " + std::to_string(enumeration_budget) + " points");
  }
  const std::size_t n = a.size();
  const Integer Q(std::to_string(q));
  std::vector<std::vector<std::uint64_t>> coef(n, std::vector<std::uint64_t>(ell));
  std::vector<std::uint64_t> rhs(n);
  Integer r;
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t j = 0; j < ell; ++j) {
      mpz_fdiv_r(r.get_mpz_t(), a[h].normal()[j].get_mpz_t(), Q.get_mpz_t());
      coef[h][j] = r.get_ui();
    }
    mpz_fdiv_r(r.get_mpz_t(), a[h].constant().get_mpz_t(), Q.get_mpz_t());
    rhs[h] = r.get_ui();
  }
  std::vector<std::uint64_t> x(ell, 0), val(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool outside = true;
    for (std::size_t h = 0; h < n; ++h) {
      if (val[h] == rhs[h]) {
        outside = false;
        break;
      }
    }
    if (outside) ++count;
    // odometer step: bumping coordinate j by one (mod q) adds coef[.][j]
    std::size_t j = 0;
    for (; j < ell; ++j) {
      for (std::size_t h = 0; h < n; ++h) {
        val[h] += coef[h][j];
        if (val[h] >= q) val[h] -= q;
      }
      if (++x[j] < q) break;
      x[j] = 0;
    }
    if (j == ell) break;
  }
  return count;
}

UniPoly charpoly(const Arrangement& a, CharpolyMethod method, const FiniteFieldOptions& ff) {
  switch (method) {
    case CharpolyMethod::mobius:
      return intersection_lattice(a).characteristic_polynomial();
    case CharpolyMethod::delres:
      return charpoly_delres(a);
    case CharpolyMethod::finitefield:
      return charpoly_finitefield(a, ff);
  }
  throw DomainError("unknown characteristic polynomial method");
}

ChamberCounts chamber_counts(const Arrangement& a) {
  const UniPoly chi = charpoly(a);
  const Scalar at_minus = chi(Scalar(-1));
  const Scalar at_plus = chi(Scalar(1));
  return ChamberCounts{Integer(abs(at_minus.get_num())), Integer(abs(at_plus.get_num()))};
}

std::vector<Integer> betti(const Arrangement& a) {
  const UniPoly chi = charpoly(a);
  const int ell = a.dimension();
  std::vector<Integer> b;
  for (int i = 0; i <= ell; ++i) {
    const Scalar c = chi.coeff(ell - i);
    const Scalar v = (i % 2 == 0) ? c : Scalar(-c);
    if (v < 0 || v.get_den() != 1) {
      throw InvariantViolation("coefficient of t^" + std::to_string(ell - i) + " has the wrong sign");
    }
    b.push_back(v.get_num());
  }
  return b;
}

}  // namespace hyparr
