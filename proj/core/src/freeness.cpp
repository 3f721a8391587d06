#include "hyparr/freeness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "hyparr/error.hpp"
#include "hyparr/lattice.hpp"
#include "hyparr/matrix.hpp"

namespace hyparr {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::free:
      return "Free";
    case Verdict::not_free:
      return "NotFree";
    case Verdict::unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::rank_le2:
      return "rank<=2";
    case Method::saito_basis:
      return "saito-basis";
    case Method::char3:
      return "char3";
    case Method::b2_highrank:
      return "b2-highrank";
    case Method::char4_local:
      return "char4-local";
    case Method::dispatch:
      return "dispatch";
  }
  return "dispatch";
}

namespace {

std::string join(std::span<const int> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

void require_central(const Arrangement& a) {
  if (!a.is_central()) throw DomainError("freeness tests need a central arrangement");
}

void check_pivot(const Arrangement& a, std::size_t pivot) {
  if (pivot >= a.size()) throw DomainError("pivot " + std::to_string(pivot) + " out of range");
}

/// chi(A, t) / (t - 1); throws InvariantViolation if (t - 1) does not divide.
UniPoly reduced_charpoly(const UniPoly& chi) {
  const auto [q, r] = UniPoly::divmod(chi, UniPoly({-1, 1}));
  if (!r.is_zero()) throw InvariantViolation("(t - 1) does not divide " + chi.to_string());
  return q;
}

/// b2 of a monic chi_0 = t^k - b1 t^{k-1} + b2 t^{k-2} - ...
Integer second_betti(const UniPoly& chi0) {
  const int k = chi0.degree();
  if (k < 2) return 0;
  return to_integer(chi0.coeff(k - 2));
}

Integer pair_sum(std::span<const int> d) {
  Integer s = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) s += Integer(d[i]) * d[j];
  }
  return s;
}

void attach_identity_checks(FreenessCertificate& cert, const UniPoly& chi, int ell) {
  cert.charpoly = chi;
  if (cert.status != Verdict::free || !cert.exponents) return;
  cert.add_check("terao-factorization", terao_factor_check(chi, *cert.exponents));
  cert.add_check("chern-relation", chern_relation_check(chi, *cert.exponents, ell));
}

/// Nonzero test of a polynomial determinant: a random rational evaluation first,
/// exact expansion only when that vanishes.
bool det_nonzero(const std::vector<std::vector<MultiPoly>>& m, std::mt19937_64& rng) {
  const int arity = m[0][0].arity();
  std::uniform_int_distribution<long> dist(-997, 997);
  VectorQ point;
  for (int i = 0; i < arity; ++i) point.emplace_back(dist(rng));
  MatrixQ values(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) values(i, j) = m[i][j].evaluate(point);
  }
  if (det(values) != 0) return true;
  return !polynomial_det(m).is_zero();
}

std::vector<std::vector<MultiPoly>> column_matrix(std::span<const VectorField> fields) {
  const std::size_t n = fields.size();
  std::vector<std::vector<MultiPoly>> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& f : fields) m[i].push_back(f[i]);
  }
  return m;
}

/// Rank of the fields' coefficient matrix at a random rational point.
std::size_t generic_rank(std::span<const VectorField> fields, std::mt19937_64& rng) {
  const int n = fields[0].arity();
  std::uniform_int_distribution<long> dist(-997, 997);
  VectorQ point;
  for (int i = 0; i < n; ++i) point.emplace_back(dist(rng));
  MatrixQ values(fields.size(), static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    for (int i = 0; i < n; ++i) values(j, static_cast<std::size_t>(i)) = fields[j][static_cast<std::size_t>(i)].evaluate(point);
  }
  return rank(values);
}

/// Row space over Q maintained in reduced form, for greedy generator extraction.
class Span {
 public:
  explicit Span(std::size_t n) : n_(n) {}
  std::size_t dim() const { return rows_.size(); }
  /// Adds v if it is independent of the span; returns whether it was added.
  bool insert(VectorQ v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar& c = v[pivots_[k]];
      if (c == 0) continue;
      const Scalar f = c;
      for (std::size_t j = 0; j < n_; ++j) {
        if (rows_[k][j] != 0) v[j] -= f * rows_[k][j];
      }
    }
    std::size_t p = 0;
    while (p < n_ && v[p] == 0) ++p;
    if (p == n_) return false;
    const Scalar inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Scalar c = rows_[k][p];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (v[j] != 0) rows_[k][j] -= c * v[j];
      }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  std::size_t n_;
  std::vector<VectorQ> rows_;
  std::vector<std::size_t> pivots_;
};

Multiplicity drop_zero(const Arrangement& a, const Multiplicity& m, Arrangement& out) {
  std::vector<std::size_t> keep;
  Multiplicity mk;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (m[i] != 0) {
      keep.push_back(i);
      mk.values.push_back(m[i]);
    }
  }
  out = a.subset(keep);
  return mk;
}

struct SearchResult {
  bool found = false;
  std::vector<VectorField> basis;
  std::string note;
};

SearchResult rank2_basis(const Arrangement& a, const Multiplicity& m, const FreenessOptions& opt, std::size_t& attempts,
                         std::mt19937_64& rng) {
  const auto [d1, d2] = exponents_rank2(a, m, opt.derivations);
  const auto b1 = graded_basis(a, m, d1, opt.derivations);
  const auto b2 = (d2 == d1) ? b1 : graded_basis(a, m, d2, opt.derivations);
  for (std::size_t i = 0; i < b1.size(); ++i) {
    for (std::size_t j = (d1 == d2 ? i + 1 : 0); j < b2.size(); ++j) {
      if (++attempts > opt.saito_budget) return {false, {}, "determinant budget exhausted"};
      const std::vector<VectorField> pair{b1[i], b2[j]};
      if (det_nonzero(column_matrix(pair), rng)) return {true, pair, {}};
    }
  }
  return {false, {}, "no independent pair in degrees " + std::to_string(d1) + ", " + std::to_string(d2)};
}

/// Picks, degree by degree in the hinted order, basis fields that raise the generic rank.
/// Independent members whose degrees sum to |m| form a basis, so Saito confirms at the end.
SearchResult hinted_basis(const Arrangement& a, const Multiplicity& m, std::vector<int> e, const FreenessOptions& opt,
                          std::size_t& attempts, std::mt19937_64& rng) {
  std::sort(e.begin(), e.end());
  std::vector<VectorField> chosen;
  std::map<int, std::vector<VectorField>> cache;
  for (int d : e) {
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, graded_basis(a, m, d, opt.derivations)).first;
    bool placed = false;
    for (const auto& f : it->second) {
      if (++attempts > opt.saito_budget) return {false, {}, "determinant budget exhausted"};
      chosen.push_back(f);
      if (generic_rank(chosen, rng) == chosen.size()) {
        placed = true;
        break;
      }
      chosen.pop_back();
    }
    if (!placed) return {false, {}, "no independent field in degree " + std::to_string(d)};
  }
  return {true, chosen, {}};
}

/// Minimal generators degree by degree; Saito once three of total degree |m| appear.
SearchResult rank3_greedy(const Arrangement& a, const Multiplicity& m, const FreenessOptions& opt,
                          std::size_t& attempts, std::mt19937_64& rng) {
  const int total = m.weight();
  std::vector<VectorField> gens;
  std::vector<int> degs;
  for (int d = 0; d <= total; ++d) {
    int sum = std::accumulate(degs.begin(), degs.end(), 0);
    if (gens.size() == 2 && d > total - sum) return {false, {}, "third generator would exceed degree |m|"};
    const DegreeSystem sys = degree_system(a, m, d, opt.derivations);
    Span span(sys.unknowns());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (degs[g] > d) continue;
      for (const auto& mono : monomials_of_degree(a.dimension(), d - degs[g])) {
        span.insert(sys.coordinates(MultiPoly::term(1, mono) * gens[g]));
      }
    }
    if (sys.live.empty()) continue;
    if (nullity_upper_bound(sys.conditions) <= span.dim()) continue;
    for (const auto& v : kernel_basis(sys.conditions)) {
      VectorField f = sys.field(v);
      if (!span.insert(sys.coordinates(f))) continue;
      gens.push_back(std::move(f));
      degs.push_back(d);
      if (gens.size() > 3) {
        return {false, {}, "more than three minimal generators (degrees " + join(degs) + ")"};
      }
    }
    sum = std::accumulate(degs.begin(), degs.end(), 0);
    if (gens.size() == 3) {
      if (sum != total) return {false, {}, "minimal generators in degrees " + join(degs) + " do not sum to |m|"};
      if (++attempts > opt.saito_budget) return {false, {}, "determinant budget exhausted"};
      if (det_nonzero(column_matrix(gens), rng)) return {true, gens, {}};
    }
  }
  return {false, {}, "generator search ended at degree |m| with degrees " + join(degs)};
}

}  // namespace

ConeForm cone_form(const Arrangement& a, std::size_t pivot) {
  require_central(a);
  check_pivot(a, pivot);
  return ConeForm{a, pivot};
}

bool terao_factor_check(const UniPoly& chi, std::span<const int> exponents) {
  std::vector<Scalar> roots;
  for (int e : exponents) roots.emplace_back(e);
  return chi == UniPoly::from_roots(roots);
}

bool chern_relation_check(const UniPoly& chi, std::span<const int> exponents, int ell) {
  if (chi.degree() > ell) return false;
  UniPoly rhs = UniPoly::constant(1);
  for (int d : exponents) rhs = rhs * UniPoly({1, -d});
  for (int k = 0; k < ell; ++k) {
    // coefficient of t^k in t^ell chi(1/t) is the coefficient of t^{ell-k} in chi
    if (chi.coeff(ell - k) != rhs.coeff(k)) return false;
  }
  return true;
}

UniPoly solomon_terao_free(std::span<const int> exponents) {
  UniPoly result = UniPoly::constant(1);
  const UniPoly one_minus_x({1, -1});
  for (int e : exponents) {
    if (e < 0) throw DomainError("negative exponent");
    // t (1 - x) - (1 - x^e) = (1 - x) (t - G(x)), G = (1 - x^e) / (1 - x).
    const UniPoly numerator = UniPoly::constant(1) - UniPoly::monomial(1, e);
    const auto [g, r] = UniPoly::divmod(numerator, one_minus_x);
    if (!r.is_zero()) throw InvariantViolation("1 - x^e is not divisible by 1 - x");
    // x^e -> 1, leaving t - G(1).
    const Scalar limit = g(Scalar(1));
    result = result * UniPoly(std::vector<Scalar>{-limit, Scalar(1)});
  }
  return result;
}

std::optional<std::vector<int>> integer_roots(const UniPoly& p) {
  if (p.is_zero() || p.leading() != 1) return std::nullopt;
  for (const auto& c : p.coefficients()) {
    if (c.get_den() != 1) return std::nullopt;
  }
  const int n = p.degree();
  std::vector<int> roots;
  if (n == 0) return roots;
  const Scalar s = -p.coeff(n - 1);  // sum of the roots
  if (s < 0 || s > 1'000'000) return std::nullopt;
  UniPoly rest = p;
  for (long r = 0; r <= s.get_num().get_si() && rest.degree() > 0; ++r) {
    while (rest.degree() > 0 && rest(Scalar(r)) == 0) {
      rest = UniPoly::divmod(rest, UniPoly::linear_root(r)).first;
      roots.push_back(static_cast<int>(r));
    }
  }
  if (rest.degree() != 0) return std::nullopt;
  return roots;
}

FreenessCertificate multi_free_search(const Arrangement& input, const Multiplicity& m_in, const FreenessOptions& opt,
                                      std::optional<std::vector<int>> hint) {
  require_central(input);
  if (m_in.size() != input.size()) throw DimensionError("multiplicity length differs from the number of hyperplanes");
  Arrangement a(input.dimension());
  const Multiplicity m = drop_zero(input, m_in, a);
  const int ell = input.dimension();
  const int rk = a.rank();
  if (rk > 4) throw DimensionError("multi_free_search handles rank <= 4");

  FreenessCertificate cert;
  cert.method = Method::saito_basis;
  if (rk < ell) {
    // Directions along the center contribute exponent 0 each.
    const Essentialization e = essentialize(a);
    FreenessCertificate inner = multi_free_search(e.arrangement, m, opt, std::nullopt);
    inner.basis.reset();
    if (inner.exponents) {
      std::vector<int> padded(static_cast<std::size_t>(ell - rk), 0);
      padded.insert(padded.end(), inner.exponents->begin(), inner.exponents->end());
      inner.exponents = padded;
    }
    inner.notes.push_back("non-essential input: exponents padded with zeros, basis omitted");
    return inner;
  }
  if (ell == 0) {
    cert.status = Verdict::free;
    cert.exponents = std::vector<int>{};
    cert.basis = std::vector<VectorField>{};
    return cert;
  }
  if (ell == 1) {
    cert.status = Verdict::free;
    cert.exponents = std::vector<int>{m[0]};
    cert.basis = std::vector<VectorField>{VectorField({MultiPoly::variable(1, 0).pow(static_cast<unsigned>(m[0]))})};
    return cert;
  }

  std::mt19937_64 rng(20240611);
  std::size_t attempts = 0;
  SearchResult found;
  try {
    if (ell == 2) {
      found = rank2_basis(a, m, opt, attempts, rng);
    } else {
      if (hint) {
        const int s = std::accumulate(hint->begin(), hint->end(), 0);
        if (static_cast<int>(hint->size()) == ell && s == m.weight() &&
            std::all_of(hint->begin(), hint->end(), [](int e) { return e >= 0; })) {
          found = hinted_basis(a, m, *hint, opt, attempts, rng);
          if (!found.found) cert.notes.push_back("hinted exponents " + join(*hint) + ": " + found.note);
        } else {
          cert.notes.push_back("hint " + join(*hint) + " ignored: wrong length or sum");
        }
      }
      if (!found.found && ell == 3) {
        found = rank3_greedy(a, m, opt, attempts, rng);
      } else if (!found.found) {
        found.note = "rank 4 is searched only along hinted exponents";
      }
    }
  } catch (const ResourceError& e) {
    cert.status = Verdict::unknown;
    cert.notes.push_back(std::string("resource budget: ") + e.what());
    return cert;
  }
  if (!found.found) {
    cert.status = Verdict::unknown;
    cert.notes.push_back(found.note);
    return cert;
  }
  FreenessCertificate checked = saito_check(a, m, found.basis);
  if (checked.status != Verdict::free) throw InvariantViolation("independent members of total degree |m| failed Saito's criterion");
  checked.notes.insert(checked.notes.begin(), cert.notes.begin(), cert.notes.end());
  checked.add_check("determinant attempts", true, std::to_string(attempts));
  return checked;
}

FreenessCertificate free_test_rank3(const Arrangement& input, std::size_t pivot, const FreenessOptions& opt) {
  require_central(input);
  check_pivot(input, pivot);
  if (input.rank() != 3) throw DimensionError("free_test_rank3 needs rank 3");
  const Arrangement a = (input.dimension() == 3) ? input : essentialize(input).arrangement;
  const UniPoly chi = charpoly(a);
  const Integer b2 = second_betti(reduced_charpoly(chi));
  const ZieglerRestriction z = ziegler(a, pivot);
  const auto [d1, d2] = exponents_rank2(z.arrangement, z.multiplicity, opt.derivations);
  const Integer prod = Integer(d1) * d2;

  FreenessCertificate cert;
  cert.method = Method::char3;
  cert.add_check("multirestriction exponents", true, "(" + std::to_string(d1) + ", " + std::to_string(d2) + ") at pivot " + std::to_string(pivot));
  cert.add_check("b2", b2 >= prod, "b2 = " + to_string(b2) + ", d1*d2 = " + to_string(prod));
  if (b2 < prod) throw InvariantViolation("b2 < d1*d2 contradicts the rank-3 inequality");
  cert.obstruction = b2 - prod;
  if (b2 == prod) {
    cert.status = Verdict::free;
    cert.exponents = std::vector<int>{1, d1, d2};
    std::sort(cert.exponents->begin(), cert.exponents->end());
  } else {
    cert.status = Verdict::not_free;
    cert.notes.push_back("obstruction = b2 - d1*d2 = cokernel dimension of the restriction map rho");
  }
  attach_identity_checks(cert, chi, a.dimension());
  if (input.dimension() != 3) {
    cert.charpoly = charpoly(input);
    if (cert.exponents) {
      std::vector<int> padded(static_cast<std::size_t>(input.dimension() - 3), 0);
      padded.insert(padded.end(), cert.exponents->begin(), cert.exponents->end());
      cert.exponents = padded;
    }
  }
  return cert;
}

bool locally_free_along(const Arrangement& a, std::size_t pivot, const FreenessOptions& opt) {
  require_central(a);
  check_pivot(a, pivot);
  const int rk = a.rank();
  if (rk <= 3) return true;
  const IntersectionLattice lat = intersection_lattice(a);
  for (int r = 3; r < rk && r <= lat.top_rank(); ++r) {
    for (const Flat& x : lat.flats(r)) {
      if (!std::binary_search(x.members.begin(), x.members.end(), pivot)) continue;
      const Arrangement local = essentialize(localization(a, x)).arrangement;
      FreenessOptions sub = opt;
      sub.pivot.reset();
      if (free_test(local, sub).status != Verdict::free) return false;
    }
  }
  return true;
}

FreenessCertificate free_test_highrank(const Arrangement& input, std::size_t pivot, const FreenessOptions& opt) {
  require_central(input);
  check_pivot(input, pivot);
  const int rk = input.rank();
  if (rk < 4) throw DimensionError("free_test_highrank needs rank >= 4");
  const Arrangement a = (input.dimension() == rk) ? input : essentialize(input).arrangement;
  const int ell = a.dimension();
  const UniPoly chi = charpoly(a);
  const UniPoly chi0 = reduced_charpoly(chi);
  const Integer b2 = second_betti(chi0);
  const ZieglerRestriction z = ziegler(a, pivot);

  FreenessCertificate cert;
  cert.method = Method::b2_highrank;
  FreenessCertificate multi;
  if (ell - 1 <= 4) {
    multi = multi_free_search(z.arrangement, z.multiplicity, opt, integer_roots(chi0));
  } else {
    multi.status = Verdict::unknown;
    multi.notes.push_back("multirestriction of rank " + std::to_string(ell - 1) + " is beyond the basis search");
  }
  for (const auto& n : multi.notes) cert.notes.push_back("multirestriction: " + n);
  const bool multi_free = multi.status == Verdict::free;
  cert.add_check("multirestriction free", multi_free,
                 multi_free ? join(*multi.exponents) + " at pivot " + std::to_string(pivot) : "search inconclusive");
  const bool local = locally_free_along(a, pivot, opt);
  cert.add_check("locally free along pivot", local);

  std::optional<Verdict> b2_verdict;
  if (multi_free) {
    const Integer s = pair_sum(*multi.exponents);
    if (b2 < s) throw InvariantViolation("b2 < sum d_i d_j contradicts the high-rank inequality");
    cert.add_check("b2", true, "b2 = " + to_string(b2) + ", sum d_i d_j = " + to_string(s));
    b2_verdict = (b2 == s) ? Verdict::free : Verdict::not_free;
    cert.obstruction = b2 - s;
  }
  // Local criterion: free iff locally free along H and the multirestriction is free.
  std::optional<Verdict> char4_verdict;
  if (!local) {
    char4_verdict = Verdict::not_free;
  } else if (multi_free) {
    char4_verdict = Verdict::free;
  }
  if (b2_verdict && char4_verdict) {
    const bool agree = *b2_verdict == *char4_verdict;
    cert.add_check("char4-b2 agreement", agree, to_string(*b2_verdict) + " vs " + to_string(*char4_verdict));
    if (!agree) cert.notes.push_back("finding: the b2 and local-freeness criteria disagree");
  }

  std::optional<Verdict> verdict = opt.char4_decides ? char4_verdict : b2_verdict;
  if (opt.char4_decides && char4_verdict) cert.method = Method::char4_local;
  if (!verdict && char4_verdict) {
    verdict = char4_verdict;
    cert.method = Method::char4_local;
  }
  cert.status = verdict.value_or(Verdict::unknown);
  if (cert.status == Verdict::free) {
    std::vector<int> e{1};
    e.insert(e.end(), multi.exponents->begin(), multi.exponents->end());
    std::sort(e.begin(), e.end());
    cert.exponents = e;
  }
  if (cert.method == Method::char4_local) cert.obstruction.reset();
  attach_identity_checks(cert, chi, ell);
  if (input.dimension() != ell) {
    cert.charpoly = charpoly(input);
    if (cert.exponents) {
      std::vector<int> padded(static_cast<std::size_t>(input.dimension() - ell), 0);
      padded.insert(padded.end(), cert.exponents->begin(), cert.exponents->end());
      cert.exponents = padded;
    }
  }
  return cert;
}

FreenessCertificate free_test(const Arrangement& a, const FreenessOptions& opt) {
  require_central(a);
  if (opt.pivot) check_pivot(a, *opt.pivot);
  const int ell = a.dimension();
  const int rk = a.rank();
  const UniPoly chi = charpoly(a);

  if (rk <= 2) {
    FreenessCertificate cert;
    cert.method = Method::rank_le2;
    cert.status = Verdict::free;
    std::vector<int> e(static_cast<std::size_t>(ell - rk), 0);
    if (rk == 1) e.push_back(1);
    if (rk == 2) {
      e.push_back(1);
      e.push_back(static_cast<int>(a.size()) - 1);
    }
    std::sort(e.begin(), e.end());
    cert.exponents = e;
    if (rk == ell) {
      const FreenessCertificate b = multi_free_search(a, Multiplicity::constant(a.size(), 1), opt);
      if (b.basis) cert.basis = b.basis;
    } else {
      cert.notes.push_back("non-essential input: exponents padded with zeros, basis omitted");
    }
    attach_identity_checks(cert, chi, ell);
    return cert;
  }

  std::vector<std::size_t> pivots;
  if (opt.pivot) {
    pivots.push_back(*opt.pivot);
  } else {
    pivots.resize(a.size());
    std::iota(pivots.begin(), pivots.end(), std::size_t{0});
  }

  if (rk == 3) {
    std::optional<FreenessCertificate> best;
    for (auto p : pivots) {
      FreenessCertificate c = free_test_rank3(a, p, opt);
      if (c.status == Verdict::free) return c;
      if (!best || *c.obstruction < *best->obstruction) best = std::move(c);
    }
    return *best;
  }

  FreenessCertificate last;
  for (auto p : pivots) {
    FreenessCertificate c = free_test_highrank(a, p, opt);
    if (c.status != Verdict::unknown) return c;
    last = std::move(c);
  }
  last.notes.push_back("every pivot was inconclusive");
  return last;
}

}  // namespace hyparr
