#include <doctest.h>

#include <random>

#include "hyparr/error.hpp"
#include "hyparr/matrix.hpp"
#include "hyparr/multipoly.hpp"
#include "hyparr/realroots.hpp"
#include "hyparr/unipoly.hpp"
#include "support.hpp"

using namespace hyparr;

namespace {

Scalar rat(long n, long d) {
  Scalar s(n, d);
  s.canonicalize();
  return s;
}

MatrixQ rows_of(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<VectorQ> r;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    VectorQ v;
    for (long x : row) v.emplace_back(x);
    cols = v.size();
    r.push_back(std::move(v));
  }
  return MatrixQ::from_rows(r, cols);
}

VectorZ ints(std::initializer_list<long> v) {
  VectorZ out;
  for (long x : v) out.emplace_back(x);
  return out;
}

MatrixQ random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long box) {
  std::uniform_int_distribution<long> dist(-box, box);
  MatrixQ m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rat(dist(rng), 1 + std::abs(dist(rng)) % 3);
  }
  return m;
}

UniPoly random_poly(std::mt19937_64& rng, int degree, long box) {
  std::uniform_int_distribution<long> dist(-box, box);
  std::vector<Scalar> c;
  for (int i = 0; i <= degree; ++i) c.emplace_back(dist(rng));
  if (c.back() == 0) c.back() = 1;
  return UniPoly(c);
}

}  // namespace

TEST_SUITE("exact-algebra") {
  TEST_CASE("scalar literals") {
    CHECK(parse_scalar("3/6") == rat(1, 2));
    CHECK(parse_scalar("-4") == Scalar(-4));
    CHECK(to_string(parse_scalar("-10/4")) == "-5/2");
    CHECK_THROWS_AS(parse_scalar("10/-4"), ParseError);
    CHECK_THROWS_AS(parse_scalar("1/0"), ParseError);
    CHECK_THROWS_AS(parse_scalar("x"), ParseError);
    CHECK_THROWS_AS(parse_scalar(""), ParseError);
  }

  TEST_CASE("scalars form a field") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (int k = 0; k < 200; ++k) {
      const Scalar a = rat(dist(rng), 1 + std::abs(dist(rng)));
      const Scalar b = rat(dist(rng), 1 + std::abs(dist(rng)));
      const Scalar c = rat(dist(rng), 1 + std::abs(dist(rng)));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      if (a != 0) CHECK(a * (1 / a) == 1);
      const Scalar s = a + b;
      CHECK(s.get_den() > 0);
      CHECK(gcd(mpz_class(abs(s.get_num())), mpz_class(s.get_den())) == 1);
    }
  }

  TEST_CASE("primitive integer vectors") {
    const VectorQ v{rat(-1, 2), rat(1, 3), 0};
    CHECK(primitive_integer(std::span<const Scalar>(v)) == ints({3, -2, 0}));
    const VectorQ w{0, Scalar(-4), Scalar(6)};
    CHECK(primitive_integer(std::span<const Scalar>(w)) == ints({0, 2, -3}));
  }

  TEST_CASE("kernel_basis examples") {
    auto k = kernel_basis(rows_of({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == ints({1, -1}));
    CHECK(kernel_basis(MatrixQ::identity(2)).empty());
    k = kernel_basis(rows_of({{1, 2}, {2, 4}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == ints({2, -1}));
    k = kernel_basis(MatrixQ(0, 3));
    REQUIRE(k.size() == 3);
    CHECK(k[2] == ints({0, 0, 1}));
  }

  TEST_CASE("kernel vectors annihilate and rank-nullity") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = 1 + trial % 6;
      const std::size_t c = 1 + (trial * 7) % 8;
      // Low-rank products exercise degenerate pivots.
      MatrixQ m = random_matrix(rng, r, 2, 4) * random_matrix(rng, 2, c, 4);
      if (trial % 3 == 0) m = random_matrix(rng, r, c, 5);
      const auto basis = kernel_basis(m);
      CHECK(rank(m) + basis.size() == c);
      for (const auto& v : basis) {
        const auto image = m.apply(to_rational(v));
        for (const auto& x : image) CHECK(x == 0);
        const auto canon = primitive_integer(std::span<const Integer>(v));
        CHECK(canon == v);
      }
      if (m.rows() > 0) CHECK(nullity_upper_bound(m) >= basis.size());
    }
  }

  TEST_CASE("canonical kernel is the reduced-echelon basis") {
    // Kernel of [[1, 2, 3]] spanned by (-2,1,0) and (-3,0,1), then normalized sign.
    auto k = kernel_basis(rows_of({{1, 2, 3}}));
    REQUIRE(k.size() == 2);
    CHECK(k[0] == ints({2, -1, 0}));
    CHECK(k[1] == ints({3, 0, -1}));
  }

  TEST_CASE("large kernels match the reduced echelon form") {
    // Above the size threshold kernel_basis and rank take the modular route;
    // rational_echelon stays fraction-free, so it serves as the reference.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t r = 60 + 10 * static_cast<std::size_t>(trial);
      const std::size_t c = 80;
      const std::size_t inner = 20 + 9 * static_cast<std::size_t>(trial);
      MatrixQ m = random_matrix(rng, r, inner, 6) * random_matrix(rng, inner, c, 6);
      // Dependent columns early on shift the pivot pattern away from the identity.
      for (std::size_t i = 0; i < r; ++i) m(i, 1) = m(i, 0) * 3;
      const auto ref = rational_echelon(m);
      const auto basis = kernel_basis(m);
      REQUIRE(basis.size() == c - ref.pivot_columns.size());
      CHECK(rank(m) == ref.pivot_columns.size());
      std::vector<bool> pivot(c, false);
      for (auto p : ref.pivot_columns) pivot[p] = true;
      std::size_t t = 0;
      for (std::size_t f = 0; f < c; ++f) {
        if (pivot[f]) continue;
        VectorQ v(c);
        v[f] = 1;
        for (std::size_t k = 0; k < ref.pivot_columns.size(); ++k) v[ref.pivot_columns[k]] = -ref.rows[k][f];
        CHECK(basis[t++] == primitive_integer(std::span<const Scalar>(v)));
      }
    }
  }

  TEST_CASE("det examples") {
    CHECK(det(rows_of({{1, 1, 1}, {1, 2, 4}, {1, 3, 9}})) == 2);
    CHECK(det(MatrixQ::identity(3)) == 1);
    CHECK(det(rows_of({{1, 2}, {2, 4}})) == 0);
    CHECK(det(rows_of({{0, 1}, {1, 0}})) == -1);
    CHECK_THROWS_AS(det(rows_of({{1, 2}})), DimensionError);
  }

  TEST_CASE("det is multiplicative") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + trial % 5;
      const MatrixQ a = random_matrix(rng, n, n, 6);
      const MatrixQ b = random_matrix(rng, n, n, 6);
      CHECK(det(a * b) == det(a) * det(b));
    }
  }

  TEST_CASE("rational echelon") {
    const auto e = rational_echelon(rows_of({{2, 4, 6}, {1, 1, 1}}));
    REQUIRE(e.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK(e.rows[0] == VectorQ{1, 0, -1});
    CHECK(e.rows[1] == VectorQ{0, 1, 2});
  }

  TEST_CASE("univariate arithmetic") {
    const UniPoly t = UniPoly::monomial(1, 1);
    const UniPoly p = test::falling(3);
    CHECK(p == UniPoly({0, 2, -3, 1}));
    CHECK(p.to_string() == "t^3 - 3*t^2 + 2*t");
    const auto [q, r] = UniPoly::divmod(p, t - UniPoly::constant(1));
    CHECK(r.is_zero());
    CHECK(q == UniPoly({0, -2, 1}));
    CHECK(UniPoly::gcd(p, pow(t, 2)) == t);
    CHECK(UniPoly({7}).to_string() == "7");
    CHECK(UniPoly().to_string() == "0");
    CHECK(UniPoly({rat(-1, 2), 0, 1}).to_string() == "t^2 - 1/2");
  }

  TEST_CASE("compose_affine examples") {
    const UniPoly t2({0, 0, 1});
    CHECK(compose_affine(t2, 1, -1) == UniPoly({1, -2, 1}));
    const UniPoly p = test::falling(3);
    CHECK(compose_affine(p, -1, 2) == -p);  // t(t-1)(t-2) at 2-t is -(t)(t-1)(t-2)
    CHECK(compose_affine(p, 1, 0) == p);
  }

  TEST_CASE("compose_affine shift inverse") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int k = 0; k < 50; ++k) {
      const UniPoly p = random_poly(rng, k % 6, 20);
      const Scalar b = rat(dist(rng), 1 + std::abs(dist(rng)));
      CHECK(compose_affine(compose_affine(p, 1, b), 1, -b) == p);
    }
  }

  TEST_CASE("all_real_roots_nonpositive examples") {
    CHECK(all_real_roots_nonpositive(UniPoly({2, 3, 1})));
    CHECK_FALSE(all_real_roots_nonpositive(UniPoly({-1, 1})));
    CHECK_FALSE(all_real_roots_nonpositive(UniPoly({1, 0, 1})));
    CHECK_THROWS_AS(all_real_roots_nonpositive(UniPoly()), DomainError);
    // Repeated and zero roots.
    CHECK(all_real_roots_nonpositive(UniPoly({0, 0, 1})));
    CHECK(all_real_roots_nonpositive(pow(UniPoly({3, 1}), 4) * UniPoly({0, 1})));
    CHECK_FALSE(all_real_roots_nonpositive(pow(UniPoly({1, 0, 1}), 2)));
    CHECK(all_real_roots_nonpositive(UniPoly({5})));
  }

  TEST_CASE("all_real_roots_nonpositive agrees with the Hermite oracle") {
    std::mt19937_64 rng(17);
    int agree_true = 0;
    for (int k = 0; k < 400; ++k) {
      UniPoly p = random_poly(rng, 1 + k % 4, 6);
      if (k % 4 == 0) {
        // Products of nonpositive roots to hit the true side often.
        std::uniform_int_distribution<long> root(-5, 0);
        p = UniPoly::from_roots({Scalar(root(rng)), Scalar(root(rng)), rat(root(rng), 2)});
      }
      const bool ours = all_real_roots_nonpositive(p);
      CHECK(ours == test::hermite_all_real_nonpositive(p));
      agree_true += ours ? 1 : 0;
    }
    CHECK(agree_true > 50);
  }

  TEST_CASE("Sturm counts") {
    const auto chain = sturm_sequence(UniPoly::from_roots({-2, 1, 3}));
    CHECK(count_real_roots(chain) == 3);
    CHECK(count_real_roots(chain, 0, 4) == 2);
    const auto census = root_census(pow(UniPoly({-1, 1}), 3) * UniPoly({1, 0, 1}));
    CHECK(census.distinct == 3);
    CHECK(census.distinct_real == 1);
    CHECK(census.positive == 1);
  }

  TEST_CASE("multivariate arithmetic") {
    const MultiPoly x = MultiPoly::variable(2, 0);
    const MultiPoly y = MultiPoly::variable(2, 1);
    const MultiPoly f = (x + y) * (x - y);
    CHECK(f == x * x - y * y);
    CHECK(f.homogeneous_degree() == 2);
    CHECK(f.to_string(default_variable_names(2)) == "x^2 - y^2");
    const auto q = f.divide_linear(x - y);
    REQUIRE(q);
    CHECK(*q == x + y);
    CHECK_FALSE((x * x + y * y).divide_linear(x - y));
    CHECK(f.derivative(0) == Scalar(2) * x);
    const VectorQ pt{3, 2};
    CHECK(f.evaluate(pt) == 5);
    const std::vector<MultiPoly> images{y, x};
    CHECK(((x - y) * x).substitute(images) == (y - x) * y);
    CHECK(monomials_of_degree(3, 2).size() == 6);
    CHECK(monomials_of_degree(3, 2).front() == Monomial{2, 0, 0});
    CHECK(monomial_count(3, 17) == 171);
    CHECK(default_variable_names(4)[3] == "x4");
  }

  TEST_CASE("divide_linear on random products") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> dist(-4, 4);
    for (int k = 0; k < 50; ++k) {
      std::vector<Scalar> a{dist(rng), dist(rng), dist(rng)};
      if (a[0] == 0 && a[1] == 0 && a[2] == 0) a[2] = 1;
      const MultiPoly l = MultiPoly::linear(a);
      MultiPoly g(3);
      for (int t = 0; t < 4; ++t) {
        Monomial m{static_cast<int>(std::abs(dist(rng))) % 3, static_cast<int>(std::abs(dist(rng))) % 3, 1};
        g.add_term(m, Scalar(dist(rng)));
      }
      const auto q = (l * g).divide_linear(l);
      REQUIRE(q);
      CHECK(*q == g);
    }
  }
}
