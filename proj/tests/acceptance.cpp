// Acceptance run: one line per criterion, exit status 0 only if all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyparr/coxeter.hpp"
#include "hyparr/derivations.hpp"
#include "hyparr/error.hpp"
#include "hyparr/freeness.hpp"
#include "hyparr/io.hpp"
#include "hyparr/lattice.hpp"
#include "support.hpp"

using namespace hyparr;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> body;
};

/// Free certificates of simple arrangements seen during the run.
struct Emitted {
  std::string where;
  UniPoly chi;
  std::vector<int> exponents;
  int ell;
};
std::vector<Emitted> emitted;

void record(const std::string& where, const Arrangement& a, const FreenessCertificate& c) {
  if (c.status != Verdict::free || !c.exponents) return;
  emitted.push_back({where, c.charpoly ? *c.charpoly : charpoly(a), *c.exponents, a.dimension()});
}

Multiplicity mult(std::vector<int> v) { return Multiplicity{std::move(v)}; }

std::string show(std::pair<int, int> e) { return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"; }

std::string show(const std::vector<int>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

UniPoly roots_product(const std::vector<long>& roots) {
  UniPoly p = UniPoly::constant(1);
  for (long r : roots) p = p * UniPoly::linear_root(r);
  return p;
}

bool proportional(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  const Scalar c = p.terms().begin()->second / q.terms().at(p.terms().begin()->first);
  return p == MultiPoly::constant(q.arity(), c) * q;
}

std::vector<std::filesystem::path> fixture_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(HYPARR_FIXTURE_DIR)) {
    if (e.path().extension() == ".arr") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ArrangementFile load(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_arrangement(ss.str());
}

Outcome braid() {
  Outcome o;
  for (int n = 3; n <= 5; ++n) {
    const auto a = test::braid(n);
    const UniPoly want = test::falling(n);
    for (auto m : {CharpolyMethod::mobius, CharpolyMethod::delres, CharpolyMethod::finitefield}) {
      o.require(charpoly(a, m) == want, "charpoly of braid " + std::to_string(n));
    }
    const auto cert = saito_check(a, Multiplicity::constant(a.size(), 1), test::power_sum_fields(n));
    record("saito braid", a, cert);
    std::vector<int> want_e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) want_e[static_cast<std::size_t>(i)] = i;
    o.require(cert.status == Verdict::free && cert.exponents == want_e, "saito on braid " + std::to_string(n));
  }
  o.detail = o.passed ? "n = 3, 4, 5" : o.detail;
  return o;
}

Outcome fig1() {
  Outcome o;
  const auto a = test::fig1();
  const auto cert = free_test(a);
  record("fig1", a, cert);
  o.require(cert.status == Verdict::free && cert.exponents == std::vector<int>{1, 3, 5}, "free_test exponents");
  const auto z = ziegler(a, 0);
  const std::vector<std::string> xy{"x", "y"};
  o.require(z.multiplicity == mult({3, 3, 1, 1}), "ziegler multiplicities");
  o.require(proportional(z.arrangement.defining_polynomial(z.multiplicity), parse_polynomial("x^5*y^3 - x^3*y^5", xy)),
            "ziegler defining polynomial");
  const auto e = exponents_rank2(z.arrangement, z.multiplicity);
  o.require(e == std::pair{3, 5}, "restriction exponents " + show(e));
  if (o.passed) o.detail = "Free (1,3,5), restriction exponents (3,5)";
  return o;
}

Outcome g2cat() {
  Outcome o;
  const auto phi = positive_roots(Family::G, 2);
  const auto a = cone(deformation({phi, -1, 1}));
  o.require(charpoly(a) == roots_product({1, 7, 11}), "charpoly");
  const auto cert = free_test_rank3(a, 0);
  record("g2cat", a, cert);
  const Check* b2 = cert.find_check("b2");
  const Check* ex = cert.find_check("multirestriction exponents");
  o.require(b2 && b2->detail == "b2 = 77, d1*d2 = 77", "b2 check");
  o.require(ex && ex->detail.rfind("(7, 11)", 0) == 0, "restriction exponents");
  o.require(cert.status == Verdict::free && cert.exponents == std::vector<int>{1, 7, 11}, "verdict");
  if (o.passed) o.detail = "b2 = 77, (7,11), Free (1,7,11)";
  return o;
}

Outcome tfamily() {
  Outcome o;
  std::vector<int> deltas;
  for (long t = 1; t <= 10; ++t) {
    const auto a = test::t_family(t);
    const auto m = mult({3, 3, 1, 1});
    const auto e = exponents_rank2(a, m);
    o.require(e == (t == 1 ? std::pair{3, 5} : std::pair{4, 4}), "t = " + std::to_string(t) + " gives " + show(e));
    deltas.push_back(delta(a, m));
  }
  // Delta jumps up only on the special member of the family.
  const int generic = *std::min_element(deltas.begin(), deltas.end());
  o.require(deltas[0] == 2 && generic == 0, "delta at t = 1");
  o.require(std::count(deltas.begin(), deltas.end(), generic) == 9, "delta off t = 1");
  if (o.passed) o.detail = "delta = 2 at t = 1, 0 at t = 2..10";
  return o;
}

Outcome typical() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto check = [&](const char* tag, const Arrangement& a, const Multiplicity& m, std::pair<int, int> want) {
    const auto got = exponents_rank2(a, m);
    o.require(got == want, std::string("case ") + tag + ": got " + show(got) + ", want " + show(want));
  };
  int total = 0, balanced = 0;
  for (int trial = 0; trial < 200; ++trial) {
    {  // (i) m1 >= |m| / 2
      const int n = uni(2, 5);
      std::vector<int> v;
      int rest = 0;
      for (int i = 1; i < n; ++i) {
        v.push_back(uni(1, 3));
        rest += v.back();
      }
      const int m1 = rest + uni(0, 3);
      v.insert(v.begin(), m1);
      const int w = m1 + rest;
      check("(i)", test::random_lines(rng, n), mult(v), {w - m1, m1});
    }
    {  // (ii) n >= |m| / 2 + 1
      const int n = uni(2, 7);
      std::vector<int> v(static_cast<std::size_t>(n), 1);
      for (int extra = uni(0, n - 2); extra > 0; --extra) ++v[static_cast<std::size_t>(uni(0, n - 1))];
      int w = 0;
      for (int x : v) w += x;
      check("(ii)", test::random_lines(rng, n), mult(v), {std::min(w - n + 1, n - 1), std::max(w - n + 1, n - 1)});
    }
    {  // (iii) constant multiplicity 2
      const int n = uni(2, 7);
      check("(iii)", test::random_lines(rng, n), Multiplicity::constant(static_cast<std::size_t>(n), 2), {n, n});
    }
    {  // (iv) three lines, m1 <= m2 + m3
      std::vector<int> v;
      do {
        v = {uni(1, 7), uni(1, 7), uni(1, 7)};
        std::sort(v.rbegin(), v.rend());
      } while (v[0] > v[1] + v[2]);
      const int w = v[0] + v[1] + v[2];
      check("(iv)", test::random_lines(rng, 3), mult(v), {w / 2, w - w / 2});
    }
    total += 4;
    {  // balanced: every m_i <= |m| / 2
      const int n = uni(3, 6);
      std::vector<int> v;
      int w = 0;
      do {
        v.clear();
        w = 0;
        for (int i = 0; i < n; ++i) {
          v.push_back(uni(1, 5));
          w += v.back();
        }
      } while (2 * *std::max_element(v.begin(), v.end()) > w);
      const int d = delta(test::random_lines(rng, n), mult(v));
      o.require(d <= n - 2, "delta " + std::to_string(d) + " > n - 2 with n = " + std::to_string(n));
      ++balanced;
    }
  }
  if (o.passed) o.detail = std::to_string(total) + " closed-form instances, " + std::to_string(balanced) + " balanced";
  return o;
}

Outcome a3_windows() {
  Outcome o;
  const auto a3 = positive_roots(Family::A, 3);
  const UniPoly t = UniPoly::monomial(1, 1);
  const UniPoly chi11 = (t - UniPoly::constant(2)) * UniPoly({7, -4, 1});
  const UniPoly chi02 = (t - UniPoly::constant(6)) * UniPoly({39, -12, 1});
  o.require(charpoly(deformation({a3, 1, 1})) == chi11, "chi of [1,1]");
  o.require(charpoly(deformation({a3, 0, 2})) == chi02, "chi of [0,2]");
  // (a, b) names [-a, b]: [1,1] is (-1, 1) and [0,2] is (0, 2).
  for (auto [a, b] : {std::pair{-1, 1}, std::pair{0, 2}}) {
    const std::string w = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    o.require(conjecture_hshift(a3, a, b).holds, "hshift " + w);
    o.require(conjecture_fe(a3, a, b).holds, "fe " + w);
  }
  const auto rh11 = conjecture_rh(a3, -1, 1, true);
  const auto rh02 = conjecture_rh(a3, 0, 2);
  o.require(rh11.holds && rh11.center == Scalar(2), "rh on [1,1]");
  o.require(rh02.holds && rh02.center == Scalar(6), "rh on [0,2]");
  if (o.passed) o.detail = "charpolys match, hshift/fe hold, rh centers 2 and 6";
  return o;
}

Outcome edelman_reiner() {
  Outcome o;
  const std::vector<std::pair<Family, int>> types{{Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::B, 3}, {Family::G, 2}};
  int cases = 0;
  for (const auto& [f, r] : types) {
    const auto phi = positive_roots(f, r);
    for (ErKind kind : {ErKind::catalan, ErKind::shi}) {
      for (int k = 1; k <= 2; ++k) {
        const auto rep = er_verify(phi, k, kind);
        const std::string tag = phi.name() + (kind == ErKind::catalan ? " catalan" : " shi") + " k=" + std::to_string(k);
        record(tag, cone(deformation({phi, kind == ErKind::catalan ? -k : 1 - k, k})), rep.certificate);
        o.require(rep.passed(), tag);
        ++cases;
      }
    }
  }
  if (o.passed) o.detail = std::to_string(cases) + " cases, k = 1, 2";
  return o;
}

Outcome coxeter_multi() {
  Outcome o;
  for (Family f : {Family::A, Family::B, Family::G}) {
    const auto phi = positive_roots(f, 2);
    for (int m = 1; m <= 7; ++m) {
      const auto rep = coxeter_multi_check(phi, m);
      o.require(rep.passed, phi.name() + " m=" + std::to_string(m) + ": " + show(rep.exponents) + " vs " + show(rep.expected));
    }
  }
  if (o.passed) o.detail = "A2, B2, G2 with m = 1..7";
  return o;
}

Outcome cross_checks() {
  Outcome o;
  int files = 0, primes = 0, regions = 0;
  for (const auto& path : fixture_files()) {
    const auto file = load(path);
    const Arrangement& a = file.arrangement;
    const std::string name = path.filename().string();
    const UniPoly chi = charpoly(a, CharpolyMethod::mobius);
    o.require(charpoly(a, CharpolyMethod::delres) == chi, name + ": delres");
    o.require(charpoly(a, CharpolyMethod::finitefield) == chi, name + ": finite field");
    for (auto q : finite_field_primes(a, 3)) {
      o.require(Scalar(static_cast<unsigned long>(count_complement_mod(a, q))) == chi(Scalar(static_cast<unsigned long>(q))),
                name + ": count mod " + std::to_string(q));
      ++primes;
    }
    if (a.dimension() <= 2 && a.size() <= 8) {
      const auto c = chamber_counts(a);
      const auto r = test::region_oracle(a);
      o.require(c.chambers == r.chambers && c.bounded == r.bounded, name + ": chambers");
      ++regions;
    }
    ++files;
  }
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> c(-3, 3);
  int samples = 0;
  while (samples < 100) {
    const int ell = 2 + static_cast<int>(rng() % 2);
    const Arrangement a = ell == 2 ? test::random_lines(rng, 3, 5) : test::random_central(rng, 3, 4, 2);
    Multiplicity m;
    for (std::size_t i = 0; i < a.size(); ++i) m.values.push_back(1 + static_cast<int>(rng() % 2));
    Multiplicity lower = m;
    for (auto& v : lower.values) --v;
    for (int d = 1; d <= 4 && samples < 100; ++d) {
      for (const auto& delta_field : graded_basis(a, m, d)) {
        if (samples >= 100) break;
        std::vector<MultiPoly> comps;
        for (int i = 0; i < ell; ++i) {
          MultiPoly p = MultiPoly::constant(ell, c(rng));
          for (int j = 0; j < ell; ++j) p += MultiPoly::constant(ell, c(rng)) * MultiPoly::variable(ell, j);
          comps.push_back(p);
        }
        const VectorField eta(std::move(comps));
        o.require(is_member(nabla(eta, delta_field), a, lower), "nabla sample " + std::to_string(samples));
        ++samples;
      }
    }
  }
  if (o.passed) {
    o.detail = std::to_string(files) + " fixtures, " + std::to_string(primes) + " prime counts, " +
               std::to_string(regions) + " region oracles, " + std::to_string(samples) + " nabla samples";
  }
  return o;
}

Outcome identities() {
  Outcome o;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> e(1 + rng() % 5);
    std::vector<long> roots;
    for (auto& x : e) {
      x = static_cast<int>(rng() % 9);
      roots.push_back(x);
    }
    o.require(solomon_terao_free(e) == roots_product(roots), "solomon-terao " + show(e));
  }
  for (const auto& em : emitted) {
    o.require(terao_factor_check(em.chi, em.exponents), em.where + ": terao");
    o.require(chern_relation_check(em.chi, em.exponents, em.ell), em.where + ": chern");
  }
  // Negative fixtures: an irreducible quadratic factor, and a mismatched linear term.
  const UniPoly irreducible = UniPoly({-2, 1}) * UniPoly({7, -4, 1});
  for (int a = 0; a <= 6; ++a) {
    for (int b = a; b <= 6; ++b) {
      for (int c = b; c <= 6; ++c) o.require(!terao_factor_check(irreducible, std::vector<int>{a, b, c}), "irreducible factor accepted");
    }
  }
  o.require(!chern_relation_check(roots_product({1, 1}), std::vector<int>{1, 2}, 2), "chern negative fixture");
  const auto bad = load(std::filesystem::path(HYPARR_FIXTURE_DIR) / "a3_window_1_1_cone.arr").arrangement;
  const auto verdict = free_test(bad);
  o.require(verdict.status == Verdict::not_free, "a3 [1,1] cone verdict");
  o.require(!terao_factor_check(charpoly(bad), std::vector<int>{0, 1, 2, 3}), "a3 [1,1] cone factorization");
  if (o.passed) o.detail = "50 solomon-terao, " + std::to_string(emitted.size()) + " free certificates, negatives rejected";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "braid charpoly and saito basis", 5, braid},
      {2, "fig1 freeness and multirestriction", 2, fig1},
      {3, "G2 catalan cone", 5, g2cat},
      {4, "t-family exponents and delta sweep", 5, tfamily},
      {5, "closed-form exponents and delta bound", 60, typical},
      {6, "A3 window charpolys and conjectures", 10, a3_windows},
      {7, "Edelman-Reiner freeness", 120, edelman_reiner},
      {8, "rank-2 Coxeter multiarrangements", 30, coxeter_multi},
      {9, "method and oracle cross-checks", 60, cross_checks},
      {10, "identity suite", 10, identities},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.limit_seconds;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("criterion %2d %s  %-40s %7.2fs / %3.0fs  %s%s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(), secs,
                c.limit_seconds, o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
