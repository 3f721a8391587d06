#include "hyparr/coxeter.hpp"

#include <algorithm>

#include "hyparr/derivations.hpp"
#include "hyparr/error.hpp"
#include "hyparr/lattice.hpp"
#include "hyparr/realroots.hpp"

namespace hyparr {

Family parse_family(std::string_view s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "B" || s == "b") return Family::B;
  if (s == "C" || s == "c") return Family::C;
  if (s == "D" || s == "d") return Family::D;
  if (s == "G" || s == "g") return Family::G;
  throw DomainError("unknown root system family '" + std::string(s) + "'");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::A:
      return "A";
    case Family::B:
      return "B";
    case Family::C:
      return "C";
    case Family::D:
      return "D";
    case Family::G:
      return "G";
  }
  return "?";
}

std::string RootSystem::name() const { return to_string(family) + std::to_string(rank); }

namespace {

VectorZ form(int n, std::initializer_list<std::pair<int, long>> entries) {
  VectorZ v(static_cast<std::size_t>(n), 0);
  for (const auto& [i, c] : entries) v[static_cast<std::size_t>(i)] = c;
  return v;
}

void add_pm_pairs(std::vector<VectorZ>& roots, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      roots.push_back(form(n, {{i, 1}, {j, -1}}));
      roots.push_back(form(n, {{i, 1}, {j, 1}}));
    }
  }
}

void check_window(int lo, int hi) {
  if (lo > hi) throw DomainError("empty window [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

UniPoly charpoly_window(const RootSystem& phi, int lo, int hi) {
  return charpoly(deformation(DeformationSpec{phi, lo, hi}));
}

void check_conjecture_domain(int a, int b) {
  if (a < -1 || a > b || (a == -1 && (b == 0 || b == -1))) {
    throw DomainError("conjecture parameters need -1 <= a <= b and (a, b) not in {(-1, 0), (-1, -1)}");
  }
}

std::string residual(const UniPoly& lhs, const UniPoly& rhs) { return "residual " + (lhs - rhs).to_string(); }

}  // namespace

RootSystem positive_roots(Family family, int rank) {
  RootSystem r;
  r.family = family;
  r.rank = rank;
  const int n = rank;
  const auto unsupported = [&] { return DomainError("unsupported root system " + r.name()); };
  switch (family) {
    case Family::A:
      if (n < 1 || n > 4) throw unsupported();
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) r.positive_roots.push_back(form(n, {{i, 1}, {j, -1}}));
      }
      for (int i = 0; i < n; ++i) r.positive_roots.push_back(form(n, {{i, 1}}));
      for (int e = 1; e <= n; ++e) r.exponents.push_back(e);
      r.coxeter_number = n + 1;
      break;
    case Family::B:
    case Family::C:
      if (n < 2 || n > 4) throw unsupported();
      add_pm_pairs(r.positive_roots, n);
      for (int i = 0; i < n; ++i) r.positive_roots.push_back(form(n, {{i, family == Family::B ? 1 : 2}}));
      for (int e = 1; e <= 2 * n - 1; e += 2) r.exponents.push_back(e);
      r.coxeter_number = 2 * n;
      break;
    case Family::D:
      if (n < 3 || n > 4) throw unsupported();
      add_pm_pairs(r.positive_roots, n);
      for (int e = 1; e <= 2 * n - 3; e += 2) r.exponents.push_back(e);
      r.exponents.push_back(n - 1);
      std::sort(r.exponents.begin(), r.exponents.end());
      r.coxeter_number = 2 * n - 2;
      break;
    case Family::G:
      if (n != 2) throw unsupported();
      // Plane x1 + x2 + x3 = 0 in coordinates (x1, x2): short e_i - e_j, long 2e_i - e_j - e_k.
      r.positive_roots = {{1, -1}, {2, 1}, {1, 2}, {3, 0}, {0, 3}, {3, 3}};
      r.exponents = {1, 5};
      r.coxeter_number = 6;
      break;
  }
  return r;
}

Arrangement deformation(const DeformationSpec& spec) {
  check_window(spec.lo, spec.hi);
  std::vector<Hyperplane> hs;
  for (const auto& alpha : spec.phi.positive_roots) {
    for (int k = spec.lo; k <= spec.hi; ++k) hs.emplace_back(std::span<const Integer>(alpha), Integer(k));
  }
  return Arrangement(spec.phi.rank, std::move(hs));
}

Arrangement coxeter_arrangement(const RootSystem& phi) { return deformation(DeformationSpec{phi, 0, 0}); }

ErReport er_verify(const RootSystem& phi, int k, ErKind kind, const FreenessOptions& opt) {
  if (kind == ErKind::catalan && k < 0) throw DomainError("Catalan window needs k >= 0");
  if (kind == ErKind::shi && k < 1) throw DomainError("Shi window needs k >= 1");
  const int h = phi.coxeter_number;
  const int lo = (kind == ErKind::catalan) ? -k : 1 - k;
  const Arrangement a = deformation(DeformationSpec{phi, lo, k});

  ErReport r;
  r.expected_exponents.push_back(1);
  std::vector<Scalar> roots;
  for (int e : phi.exponents) {
    const int d = (kind == ErKind::catalan) ? e + k * h : k * h;
    r.expected_exponents.push_back(d);
    roots.emplace_back(d);
  }
  std::sort(r.expected_exponents.begin(), r.expected_exponents.end());
  r.expected_charpoly = UniPoly::from_roots(roots);

  r.charpoly = charpoly(a);
  r.charpoly_match = r.charpoly == r.expected_charpoly;
  r.certificate = free_test(cone(a), opt);
  r.exponents_match = r.certificate.status == Verdict::free && r.certificate.exponents == r.expected_exponents;
  return r;
}

CoxeterMultiReport coxeter_multi_check(const RootSystem& phi, int m, const DerivationOptions& opt) {
  if (phi.rank != 2) throw DimensionError("coxeter_multi_check needs a rank-2 root system");
  if (m < 1) throw DomainError("multiplicity must be positive");
  const Arrangement a = coxeter_arrangement(phi);
  CoxeterMultiReport r;
  r.exponents = exponents_rank2(a, Multiplicity::constant(a.size(), m), opt);
  const int k = m / 2;
  const int h = phi.coxeter_number;
  if (m % 2 == 0) {
    r.expected = {k * h, k * h};
  } else {
    r.expected = {phi.exponents[0] + k * h, phi.exponents[1] + k * h};
  }
  r.passed = r.exponents == r.expected;
  return r;
}

ConjectureResult conjecture_fe(const RootSystem& phi, int a, int b) {
  check_conjecture_domain(a, b);
  ConjectureResult r;
  r.charpoly = charpoly_window(phi, -a, b);
  const Scalar c = Scalar((a + b + 1) * phi.coxeter_number);
  r.center = c / 2;
  const UniPoly lhs = compose_affine(r.charpoly, -1, c);
  const UniPoly rhs = (phi.rank % 2 == 0) ? r.charpoly : UniPoly::constant(-1) * r.charpoly;
  r.holds = lhs == rhs;
  if (!r.holds) r.witness = residual(lhs, rhs);
  return r;
}

ConjectureResult conjecture_hshift(const RootSystem& phi, int a, int b) {
  check_conjecture_domain(a, b);
  ConjectureResult r;
  r.charpoly = charpoly_window(phi, -a, b);
  const UniPoly wider = charpoly_window(phi, -a - 1, b + 1);
  const UniPoly shifted = compose_affine(r.charpoly, 1, -phi.coxeter_number);
  r.holds = wider == shifted;
  if (!r.holds) r.witness = residual(wider, shifted);
  return r;
}

ConjectureResult conjecture_rh(const RootSystem& phi, int a, int b, bool allow_out_of_domain) {
  ConjectureResult r;
  if (!(0 <= a && a < b)) {
    if (!allow_out_of_domain) throw DomainError("the real-part conjecture is stated for 0 <= a < b");
    check_conjecture_domain(a, b);
    r.in_domain = false;
  }
  r.charpoly = charpoly_window(phi, -a, b);
  const Scalar c = Scalar((a + b + 1) * phi.coxeter_number) / 2;
  r.center = c;
  const UniPoly psi = compose_affine(r.charpoly, 1, c);
  const int ell = phi.rank;
  const UniPoly mirrored = compose_affine(psi, -1, 0);
  const UniPoly expected = (ell % 2 == 0) ? psi : UniPoly::constant(-1) * psi;
  if (mirrored != expected) {
    r.holds = false;
    r.witness = "chi(c + s) has no parity: chi(c + s) = " + psi.to_string("s");
    return r;
  }
  // psi(s) = s^eps q(s^2); a root c + i beta of chi is a root -beta^2 of q.
  const int eps = ell % 2;
  std::vector<Scalar> q;
  for (int i = eps; i <= psi.degree(); i += 2) q.push_back(psi.coeff(i));
  const UniPoly qp(q);
  r.holds = all_real_roots_nonpositive(qp);
  if (!r.holds) r.witness = "q(u) = " + qp.to_string("u") + " has a root off the nonpositive real axis";
  return r;
}

}  // namespace hyparr
