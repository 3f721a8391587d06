#include "hyparr/derivations.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "hyparr/error.hpp"

namespace hyparr {

namespace {

void require_central(const Arrangement& a, const char* what) {
  if (!a.is_central()) throw DomainError(std::string(what) + " requires a central arrangement");
}

void validate_multiplicity(const Arrangement& a, const Multiplicity& m) {
  if (m.size() != a.size()) throw DimensionError("multiplicity length differs from the number of hyperplanes");
  for (int v : m.values) {
    if (v < 0) throw DomainError("negative multiplicity");
  }
}

/// Coordinate hyperplane x_k = 0: returns k, else -1.
int coordinate_index(const Hyperplane& h) {
  int k = -1;
  const auto& n = h.normal();
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] == 0) continue;
    if (k >= 0) return -1;
    k = static_cast<int>(j);
  }
  return k;
}

MultiPoly truncate(const MultiPoly& f, int slot, int bound) {
  MultiPoly out(f.arity());
  for (const auto& [mono, c] : f.terms()) {
    if (mono[static_cast<std::size_t>(slot)] < bound) out.add_term(mono, c);
  }
  return out;
}

std::size_t check_budget(int arity, int d, const DerivationOptions& opt) {
  const Integer count = monomial_count(arity, d) * arity;
  if (count > Integer(static_cast<unsigned long>(opt.unknown_budget))) {
    throw ResourceError("degree " + std::to_string(d) + " needs " + count.get_str() +
                        " unknowns, budget is " + std::to_string(opt.unknown_budget));
  }
  return count.get_ui();
}

}  // namespace

bool is_member(const VectorField& theta, const Arrangement& a, const Multiplicity& m) {
  require_central(a, "membership in D(A, m)");
  validate_multiplicity(a, m);
  if (theta.arity() != a.dimension()) throw DimensionError("vector field arity differs from the arrangement dimension");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const MultiPoly alpha = a[i].linear_form();
    MultiPoly value = theta.apply(alpha);
    for (int k = 0; k < m[i] && !value.is_zero(); ++k) {
      auto q = value.divide_linear(alpha);
      if (!q) return false;
      value = std::move(*q);
    }
  }
  return true;
}

VectorField DegreeSystem::field(std::span<const Integer> live_coefficients) const {
  if (live_coefficients.size() != live.size()) throw DimensionError("coefficient count differs from the live unknowns");
  const std::size_t n = monomials.size();
  std::vector<MultiPoly> comps(static_cast<std::size_t>(arity), MultiPoly(arity));
  for (std::size_t k = 0; k < live.size(); ++k) {
    if (live_coefficients[k] == 0) continue;
    const std::size_t u = live[k];
    comps[u / n].add_term(monomials[u % n], Scalar(live_coefficients[k]));
  }
  return VectorField(std::move(comps));
}

VectorQ DegreeSystem::coordinates(const VectorField& theta) const {
  if (theta.arity() != arity) throw DimensionError("vector field arity differs from the system");
  const std::size_t n = monomials.size();
  VectorQ out(unknowns());
  for (int i = 0; i < arity; ++i) {
    for (const auto& [mono, c] : theta[static_cast<std::size_t>(i)].terms()) {
      if (total_degree(mono) != degree) throw DomainError("field is not homogeneous of the system degree");
      const auto it = std::lower_bound(monomials.begin(), monomials.end(), mono, std::greater<>());
      out[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(it - monomials.begin())] = c;
    }
  }
  return out;
}

DegreeSystem degree_system(const Arrangement& a, const Multiplicity& m, int d, const DerivationOptions& opt) {
  require_central(a, "D(A, m)");
  validate_multiplicity(a, m);
  if (d < 0) throw DomainError("negative degree");
  const int ell = a.dimension();
  check_budget(ell, d, opt);

  DegreeSystem sys;
  sys.arity = ell;
  sys.degree = d;
  sys.monomials = monomials_of_degree(ell, d);
  const std::size_t n = sys.monomials.size();

  std::vector<bool> dead(sys.unknowns(), false);
  for (std::size_t h = 0; h < a.size(); ++h) {
    const int k = coordinate_index(a[h]);
    if (k < 0 || m[h] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sys.monomials[j][static_cast<std::size_t>(k)] < m[h]) dead[static_cast<std::size_t>(k) * n + j] = true;
    }
  }
  std::vector<std::size_t> column_of(sys.unknowns(), SIZE_MAX);
  for (std::size_t u = 0; u < sys.unknowns(); ++u) {
    if (dead[u]) continue;
    column_of[u] = sys.live.size();
    sys.live.push_back(u);
  }
  sys.conditions = MatrixQ(0, sys.live.size());

  for (std::size_t h = 0; h < a.size(); ++h) {
    if (m[h] == 0 || coordinate_index(a[h]) >= 0) continue;
    const auto& normal = a[h].normal();
    const int p = a[h].pivot();
    const std::size_t ps = static_cast<std::size_t>(p);
    const int mult = m[h];
    // x_p = (u - sum_{j != p} a_j x_j) / a_p, with u = alpha stored in slot p.
    std::vector<Scalar> lin(static_cast<std::size_t>(ell));
    const Scalar ap(normal[ps]);
    for (int j = 0; j < ell; ++j) {
      lin[static_cast<std::size_t>(j)] = (j == p) ? Scalar(1) / ap : Scalar(-normal[static_cast<std::size_t>(j)]) / ap;
    }
    const MultiPoly l = MultiPoly::linear(lin);
    std::vector<MultiPoly> powers{MultiPoly::constant(ell, 1)};
    for (int k = 1; k <= d; ++k) powers.push_back(truncate(powers.back() * l, p, mult));

    std::map<Monomial, std::size_t, std::greater<>> row_of;
    std::vector<VectorQ> rows;
    for (std::size_t j = 0; j < n; ++j) {
      Monomial rest = sys.monomials[j];
      const int e = rest[ps];
      rest[ps] = 0;
      const MultiPoly image = powers[static_cast<std::size_t>(e)].multiply_monomial(rest);
      for (const auto& [nu, c] : image.terms()) {
        auto [it, inserted] = row_of.emplace(nu, rows.size());
        if (inserted) rows.emplace_back(sys.live.size());
        VectorQ& row = rows[it->second];
        for (int i = 0; i < ell; ++i) {
          if (normal[static_cast<std::size_t>(i)] == 0) continue;
          const std::size_t col = column_of[static_cast<std::size_t>(i) * n + j];
          if (col == SIZE_MAX) continue;
          row[col] += c * normal[static_cast<std::size_t>(i)];
        }
      }
    }
    for (const auto& row : rows) {
      if (std::any_of(row.begin(), row.end(), [](const Scalar& x) { return x != 0; })) sys.conditions.append_row(row);
    }
  }
  return sys;
}

std::size_t graded_dim(const Arrangement& a, const Multiplicity& m, int d, const DerivationOptions& opt) {
  const DegreeSystem sys = degree_system(a, m, d, opt);
  if (sys.live.empty()) return 0;
  if (nullity_upper_bound(sys.conditions) == 0) return 0;
  return sys.live.size() - rank(sys.conditions);
}

std::size_t graded_dim_upper_bound(const Arrangement& a, const Multiplicity& m, int d, const DerivationOptions& opt) {
  const DegreeSystem sys = degree_system(a, m, d, opt);
  if (sys.live.empty()) return 0;
  return nullity_upper_bound(sys.conditions);
}

std::vector<VectorField> graded_basis(const Arrangement& a, const Multiplicity& m, int d, const DerivationOptions& opt) {
  const DegreeSystem sys = degree_system(a, m, d, opt);
  std::vector<VectorField> out;
  if (sys.live.empty()) return out;
  if (nullity_upper_bound(sys.conditions) == 0) return out;
  for (const auto& v : kernel_basis(sys.conditions)) out.push_back(sys.field(v));
  return out;
}

std::map<int, std::size_t> hilbert(const Arrangement& a, const Multiplicity& m, std::optional<int> dmax,
                                   const DerivationOptions& opt) {
  validate_multiplicity(a, m);
  const int top = dmax.value_or(m.weight());
  if (top < 0) throw DomainError("negative degree bound");
  std::map<int, std::size_t> h;
  for (int d = 0; d <= top; ++d) h[d] = graded_dim(a, m, d, opt);
  return h;
}

std::pair<int, int> exponents_rank2(const Arrangement& a, const Multiplicity& m, const DerivationOptions& opt) {
  if (a.dimension() != 2) throw DimensionError("rank-2 exponents need an arrangement in dimension 2");
  require_central(a, "rank-2 exponents");
  validate_multiplicity(a, m);
  if (a.rank() != 2) throw DimensionError("rank-2 exponents need an essential arrangement");
  for (int v : m.values) {
    if (v <= 0) throw DomainError("rank-2 exponents need positive multiplicities");
  }
  const int total = m.weight();
  // D_d != 0 is monotone in d (multiply by a linear form), and d1 <= total / 2.
  int lo = 0;
  int hi = total / 2;
  if (graded_dim(a, m, hi, opt) == 0) throw InvariantViolation("no derivation up to degree |m|/2");
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (graded_dim(a, m, mid, opt) > 0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return {lo, total - lo};
}

int delta(const Arrangement& a, const Multiplicity& m, const DerivationOptions& opt) {
  const auto [d1, d2] = exponents_rank2(a, m, opt);
  return d2 - d1;
}

MultiPoly polynomial_det(const std::vector<std::vector<MultiPoly>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DimensionError("determinant of an empty matrix");
  if (n > 20) throw ResourceError("polynomial determinant larger than 20 x 20");
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionError("polynomial matrix is not square");
  }
  const int arity = rows[0][0].arity();
  // minor[mask] = det of rows k.. with the columns in mask, k = n - popcount(mask).
  std::unordered_map<std::uint32_t, MultiPoly> memo;
  auto rec = [&](auto&& self, std::uint32_t mask, std::size_t k) -> MultiPoly {
    if (k == n) return MultiPoly::constant(arity, 1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    MultiPoly acc(arity);
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      const MultiPoly& entry = rows[k][j];
      if (!entry.is_zero()) {
        MultiPoly term = entry * self(self, mask & ~(1u << j), k + 1);
        if (sign > 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, (n == 32) ? 0xffffffffu : ((1u << n) - 1u), 0);
}

FreenessCertificate saito_check(const Arrangement& a, const Multiplicity& m, std::span<const VectorField> candidates) {
  require_central(a, "Saito's criterion");
  validate_multiplicity(a, m);
  const int ell = a.dimension();
  if (static_cast<int>(candidates.size()) != ell) {
    throw DimensionError("Saito's criterion needs exactly " + std::to_string(ell) + " candidates");
  }
  std::vector<int> degrees;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (candidates[j].arity() != ell) throw DimensionError("candidate arity differs from the arrangement dimension");
    const auto d = candidates[j].pdeg();
    if (!d) throw DomainError("candidate " + std::to_string(j) + " is not homogeneous");
    degrees.push_back(*d);
  }

  FreenessCertificate cert;
  cert.method = Method::saito_basis;
  bool ok = true;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    const bool member = is_member(candidates[j], a, m);
    cert.add_check("member " + std::to_string(j), member);
    ok = ok && member;
  }

  std::vector<std::vector<MultiPoly>> mat(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) {
    for (const auto& c : candidates) mat[static_cast<std::size_t>(i)].push_back(c[static_cast<std::size_t>(i)]);
  }
  const MultiPoly det = polynomial_det(mat);
  const MultiPoly q = a.defining_polynomial(m);
  bool det_ok = false;
  std::string detail;
  if (det.is_zero()) {
    detail = "determinant vanishes";
  } else {
    const auto& [dm, dc] = *det.terms().begin();
    const auto& [qm, qc] = *q.terms().begin();
    if (dm == qm) {
      const Scalar c = dc / qc;
      det_ok = (det == c * q);
      detail = det_ok ? "det = " + to_string(c) + " * Q" : "determinant is not a multiple of Q";
    } else {
      detail = "determinant is not a multiple of Q";
    }
  }
  cert.add_check("determinant", det_ok, detail);
  ok = ok && det_ok;

  if (ok) {
    cert.status = Verdict::free;
    std::vector<int> sorted = degrees;
    std::sort(sorted.begin(), sorted.end());
    cert.exponents = sorted;
    cert.basis = std::vector<VectorField>(candidates.begin(), candidates.end());
  } else {
    cert.status = Verdict::not_free;
    cert.notes.push_back("the candidate fields do not form a basis; this says nothing about freeness of the arrangement");
  }
  return cert;
}

VectorField nabla(const VectorField& eta, const VectorField& theta) {
  if (eta.arity() != theta.arity()) throw DimensionError("vector field arity mismatch");
  std::vector<MultiPoly> c;
  for (const auto& f : theta.components()) c.push_back(eta.apply(f));
  return VectorField(std::move(c));
}

D1Split split_d1(const VectorField& theta, const Arrangement& a, std::size_t index) {
  if (index >= a.size()) throw DomainError("hyperplane index out of range");
  if (!is_member(theta, a, Multiplicity::constant(a.size(), 1))) throw DomainError("field is not in D(A)");
  const MultiPoly alpha = a[index].linear_form();
  const auto g = theta.apply(alpha).divide_linear(alpha);
  if (!g) throw InvariantViolation("membership check and division disagree");
  VectorField theta1 = theta - (*g) * VectorField::euler(a.dimension());
  return D1Split{*g, std::move(theta1)};
}

VectorField restrict_field(const VectorField& theta, const Arrangement& a, std::size_t index) {
  if (index >= a.size()) throw DomainError("hyperplane index out of range");
  require_central(a, "field restriction");
  if (theta.arity() != a.dimension()) throw DimensionError("vector field arity differs from the arrangement dimension");
  if (!theta.apply(a[index].linear_form()).is_zero()) throw DomainError("field is not tangent to the hyperplane");
  const RestrictionChart chart(a[index]);
  std::vector<MultiPoly> comps;
  for (int j = 0; j < a.dimension(); ++j) {
    if (j == chart.pivot) continue;
    comps.push_back(chart.pullback(theta[static_cast<std::size_t>(j)]));
  }
  return VectorField(std::move(comps));
}

}  // namespace hyparr
