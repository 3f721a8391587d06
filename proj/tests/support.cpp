#include "support.hpp"

#include <algorithm>
#include <set>

#include "hyparr/matrix.hpp"

namespace hyparr::test {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

Hyperplane from_longs(const std::vector<long>& normal, long d) {
  VectorZ n;
  for (long v : normal) n.emplace_back(v);
  return Hyperplane(std::span<const Integer>(n), Integer(d));
}

bool push_distinct(std::vector<Hyperplane>& hs, const Hyperplane& h) {
  if (std::find(hs.begin(), hs.end(), h) != hs.end()) return false;
  hs.push_back(h);
  return true;
}

}  // namespace

Arrangement braid(int n) {
  std::vector<Hyperplane> hs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<long> a(static_cast<std::size_t>(n), 0);
      a[static_cast<std::size_t>(i)] = 1;
      a[static_cast<std::size_t>(j)] = -1;
      hs.push_back(from_longs(a, 0));
    }
  }
  return Arrangement(n, hs);
}

Arrangement boolean(int ell) {
  std::vector<Hyperplane> hs;
  for (int i = 0; i < ell; ++i) {
    std::vector<long> a(static_cast<std::size_t>(ell), 0);
    a[static_cast<std::size_t>(i)] = 1;
    hs.push_back(from_longs(a, 0));
  }
  return Arrangement(ell, hs);
}

Arrangement fig1() {
  return Arrangement(3, {Hyperplane::of({0, 0, 1}), Hyperplane::of({1, 0, 0}), Hyperplane::of({0, 1, 0}),
                         Hyperplane::of({1, 0, -1}), Hyperplane::of({1, 0, 1}), Hyperplane::of({0, 1, -1}),
                         Hyperplane::of({0, 1, 1}), Hyperplane::of({1, -1, 0}), Hyperplane::of({1, 1, 0})});
}

Arrangement t_family(long t) {
  return Arrangement(2, {Hyperplane::of({1, 0}), Hyperplane::of({0, 1}), Hyperplane::of({1, 1}),
                         Hyperplane::of({t, -1})});
}

Arrangement lines(const std::vector<std::pair<long, long>>& normals) {
  std::vector<Hyperplane> hs;
  for (auto [a, b] : normals) hs.push_back(Hyperplane::of({a, b}));
  return Arrangement(2, hs);
}

std::vector<VectorField> power_sum_fields(int n) {
  std::vector<VectorField> out;
  for (int k = 0; k < n; ++k) {
    std::vector<MultiPoly> c;
    for (int i = 0; i < n; ++i) c.push_back(MultiPoly::variable(n, i).pow(static_cast<unsigned>(k)));
    out.emplace_back(std::move(c));
  }
  return out;
}

Arrangement random_lines(std::mt19937_64& rng, int n, long box) {
  std::vector<Hyperplane> hs;
  while (static_cast<int>(hs.size()) < n) {
    const long a = uniform(rng, -box, box);
    const long b = uniform(rng, -box, box);
    if (a == 0 && b == 0) continue;
    push_distinct(hs, Hyperplane::of({a, b}));
  }
  return Arrangement(2, hs);
}

Arrangement random_central(std::mt19937_64& rng, int ell, int n, long box) {
  std::vector<Hyperplane> hs;
  while (static_cast<int>(hs.size()) < n) {
    std::vector<long> a;
    bool nonzero = false;
    for (int j = 0; j < ell; ++j) {
      a.push_back(uniform(rng, -box, box));
      nonzero = nonzero || a.back() != 0;
    }
    if (nonzero) push_distinct(hs, from_longs(a, 0));
  }
  return Arrangement(ell, hs);
}

Arrangement random_affine(std::mt19937_64& rng, int ell, int n, long box) {
  std::vector<Hyperplane> hs;
  while (static_cast<int>(hs.size()) < n) {
    std::vector<long> a;
    bool nonzero = false;
    for (int j = 0; j < ell; ++j) {
      a.push_back(uniform(rng, -box, box));
      nonzero = nonzero || a.back() != 0;
    }
    if (nonzero) push_distinct(hs, from_longs(a, uniform(rng, -box, box)));
  }
  return Arrangement(ell, hs);
}

UniPoly falling(int n) {
  UniPoly p = UniPoly::constant(1);
  for (int k = 0; k < n; ++k) p = p * UniPoly::linear_root(k);
  return p;
}

int signature(std::vector<std::vector<Scalar>> m) {
  int sig = 0;
  std::size_t n = m.size();
  std::vector<bool> done(n, false);
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i) {
      if (!done[i] && m[i][i] != 0) piv = i;
    }
    if (piv == n) {
      // No usable diagonal: combine two indices with a nonzero off-diagonal entry.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j && !done[i] && !done[j] && m[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == n) return sig;
      for (std::size_t k = 0; k < n; ++k) m[pi][k] += m[pj][k];
      for (std::size_t k = 0; k < n; ++k) m[k][pi] += m[k][pj];
      continue;
    }
    const Scalar p = m[piv][piv];
    sig += (p > 0) ? 1 : -1;
    done[piv] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m[i][piv] == 0) continue;
      const Scalar f = m[i][piv] / p;
      for (std::size_t k = 0; k < n; ++k) m[i][k] -= f * m[piv][k];
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m[piv][i] == 0) continue;
      const Scalar f = m[piv][i] / p;
      for (std::size_t k = 0; k < n; ++k) m[k][i] -= f * m[k][piv];
    }
  }
}

bool hermite_all_real_nonpositive(const UniPoly& q) {
  const UniPoly p = q.monic();
  const int n = p.degree();
  if (n <= 0) return true;
  std::vector<Scalar> s(static_cast<std::size_t>(2 * n + 1));
  s[0] = n;
  for (int k = 1; k <= 2 * n; ++k) {
    Scalar acc = 0;
    for (int i = 1; i <= std::min(k - 1, n); ++i) acc += p.coeff(n - i) * s[static_cast<std::size_t>(k - i)];
    if (k <= n) acc += Scalar(k) * p.coeff(n - k);
    s[static_cast<std::size_t>(k)] = -acc;
  }
  std::vector<std::vector<Scalar>> h(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n)));
  auto h1 = h;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(i + j)];
      h1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(i + j + 1)];
    }
  }
  MatrixQ hm(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) hm(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s[static_cast<std::size_t>(i + j)];
  }
  const int distinct = static_cast<int>(rank(hm));
  const int real = signature(h);
  if (real != distinct) return false;
  const int zero = (p.coeff(0) == 0) ? 1 : 0;
  const int positive = (real - zero + signature(h1)) / 2;
  return positive == 0;
}

namespace {

/// Exact sign of a.x - d at the grid point (-R + 2R i / N, -R + 2R j / N).
int grid_sign(const Hyperplane& h, long r, long n, long i, long j) {
  const __int128 a0 = h.normal()[0].get_si();
  const __int128 a1 = h.normal()[1].get_si();
  const __int128 d = h.constant().get_si();
  const __int128 x = -static_cast<__int128>(r) * n + 2 * static_cast<__int128>(r) * i;
  const __int128 y = -static_cast<__int128>(r) * n + 2 * static_cast<__int128>(r) * j;
  const __int128 v = a0 * x + a1 * y - d * n;
  return (v > 0) - (v < 0);
}

}  // namespace

Regions region_oracle(const Arrangement& a) {
  const int ell = a.dimension();
  if (a.empty()) return {1, 1};
  const int rk = a.rank();
  if (rk == 1) {
    // Parallel family: positions along the common normal direction.
    const VectorZ& base = a[0].normal();
    std::set<Scalar> positions;
    for (const auto& h : a.hyperplanes()) {
      std::size_t k = 0;
      while (base[k] == 0) ++k;
      const Scalar lambda = Scalar(h.normal()[k]) / Scalar(base[k]);
      positions.insert(Scalar(h.constant()) / lambda);
    }
    const long count = static_cast<long>(positions.size());
    return {count + 1, count - 1};
  }
  if (ell != 2) throw std::invalid_argument("region oracle handles ell <= 2 only");

  Scalar reach = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const Scalar a0(a[i].normal()[0]), a1(a[i].normal()[1]), b0(a[j].normal()[0]), b1(a[j].normal()[1]);
      const Scalar det = a0 * b1 - a1 * b0;
      if (det == 0) continue;
      const Scalar x = (Scalar(a[i].constant()) * b1 - a1 * Scalar(a[j].constant())) / det;
      const Scalar y = (a0 * Scalar(a[j].constant()) - Scalar(a[i].constant()) * b0) / det;
      reach = std::max({reach, Scalar(abs(x)), Scalar(abs(y))});
    }
  }
  mpz_class ceil_reach;
  mpz_cdiv_q(ceil_reach.get_mpz_t(), reach.get_num_mpz_t(), reach.get_den_mpz_t());
  const long r = 2 * ceil_reach.get_si() + 1;

  auto sample = [&](long n, bool boundary_only) {
    std::set<std::vector<int>> seen;
    std::vector<int> sv(a.size());
    auto visit = [&](long i, long j) {
      for (std::size_t k = 0; k < a.size(); ++k) {
        sv[k] = grid_sign(a[k], r, n, i, j);
        if (sv[k] == 0) return;
      }
      seen.insert(sv);
    };
    if (boundary_only) {
      for (long i = 0; i <= n; ++i) {
        visit(i, 0);
        visit(i, n);
        visit(0, i);
        visit(n, i);
      }
    } else {
      for (long i = 0; i <= n; ++i) {
        for (long j = 0; j <= n; ++j) visit(i, j);
      }
    }
    return seen;
  };

  Regions last{-1, -1};
  int stable = 0;
  for (long n = 32; n <= 2048; n *= 2) {
    const auto all = sample(n, false);
    const auto outer = sample(8 * n, true);
    const Regions now{static_cast<long>(all.size()), static_cast<long>(all.size() - outer.size())};
    if (now.chambers == last.chambers && now.bounded == last.bounded) {
      if (++stable == 2) return now;
    } else {
      stable = 0;
    }
    last = now;
  }
  return last;
}

std::size_t graded_dim_oracle(const Arrangement& a, const Multiplicity& m, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int ell = a.dimension();
  const auto monos = monomials_of_degree(ell, d);
  const std::size_t nm = monos.size();
  MatrixQ rows(0, static_cast<std::size_t>(ell) * nm);

  auto derivative_at = [&](const Monomial& mu, const Monomial& beta, const VectorQ& p) {
    Scalar v = 1;
    for (int j = 0; j < ell; ++j) {
      const int e = mu[static_cast<std::size_t>(j)];
      const int b = beta[static_cast<std::size_t>(j)];
      if (b > e) return Scalar(0);
      for (int k = 0; k < b; ++k) v *= (e - k);
      for (int k = 0; k < e - b; ++k) v *= p[static_cast<std::size_t>(j)];
    }
    return v;
  };

  for (std::size_t h = 0; h < a.size(); ++h) {
    if (m[h] == 0) continue;
    const RestrictionChart chart(a[h]);
    for (int order = 0; order < m[h]; ++order) {
      if (order > d) break;
      const int room = d - order;
      const std::size_t points =
          (ell == 1) ? 1 : static_cast<std::size_t>(monomial_count(ell - 1, room).get_ui()) + 2;
      for (const auto& beta : monomials_of_degree(ell, order)) {
        for (std::size_t s = 0; s < points; ++s) {
          VectorQ y;
          for (int j = 0; j + 1 < ell; ++j) y.emplace_back(uniform(rng, -1000, 1000));
          const VectorQ p = chart.lift(y);
          VectorQ row(static_cast<std::size_t>(ell) * nm);
          for (int i = 0; i < ell; ++i) {
            const Scalar ai(a[h].normal()[static_cast<std::size_t>(i)]);
            if (ai == 0) continue;
            for (std::size_t k = 0; k < nm; ++k) row[static_cast<std::size_t>(i) * nm + k] = ai * derivative_at(monos[k], beta, p);
          }
          rows.append_row(row);
        }
      }
    }
  }
  if (rows.rows() == 0) return rows.cols();
  return rows.cols() - rank(rows);
}

}  // namespace hyparr::test
