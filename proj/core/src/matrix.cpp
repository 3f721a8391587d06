#include "hyparr/matrix.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hyparr/error.hpp"

namespace hyparr {

MatrixQ MatrixQ::identity(std::size_t n) {
  MatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

MatrixQ MatrixQ::from_rows(const std::vector<VectorQ>& rows, std::size_t cols) {
  MatrixQ m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void MatrixQ::append_row(std::span<const Scalar> row) {
  if (row.size() != cols_) throw DimensionError("row length does not match column count");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

MatrixQ operator*(const MatrixQ& a, const MatrixQ& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  MatrixQ out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
    }
  }
  return out;
}

VectorQ MatrixQ::apply(std::span<const Scalar> v) const {
  if (v.size() != cols_) throw DimensionError("vector length does not match column count");
  VectorQ out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (v[j] != 0) out[i] += (*this)(i, j) * v[j];
    }
  }
  return out;
}

namespace {

using IntRows = std::vector<VectorZ>;

// Matrices with at least this many entries go through the modular kernel.
constexpr std::size_t kModularThreshold = 4096;

IntRows integer_rows(const MatrixQ& m) {
  IntRows rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    VectorZ r = primitive_integer(m.row(i));
    bool zero = true;
    for (const auto& x : r) {
      if (x != 0) {
        zero = false;
        break;
      }
    }
    if (!zero) rows.push_back(std::move(r));
  }
  return rows;
}

std::size_t bit_size(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

// Fraction-free Gauss-Jordan elimination. After step k every pivot row carries
// the same pivot value and all entries are minors of the input, so the
// division by the previous pivot is exact.
EchelonForm eliminate(IntRows rows, std::size_t cols) {
  EchelonForm ef;
  Integer prev = 1;
  Integer t;
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols && k < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t i = k; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      if (best == rows.size() || bit_size(rows[i][c]) < bit_size(rows[best][c])) best = i;
    }
    if (best == rows.size()) continue;
    std::swap(rows[k], rows[best]);
    const Integer p = rows[k][c];
    const VectorZ& pr = rows[k];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == k) continue;
      VectorZ& r = rows[i];
      const Integer f = r[c];
      if (f == 0 && prev == p) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == c) continue;
        // r[j] = (p * r[j] - f * pr[j]) / prev
        mpz_mul(t.get_mpz_t(), p.get_mpz_t(), r[j].get_mpz_t());
        if (f != 0 && pr[j] != 0) mpz_submul(t.get_mpz_t(), f.get_mpz_t(), pr[j].get_mpz_t());
        if (prev != 1) mpz_divexact(r[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        else r[j].swap(t);
      }
      r[c] = 0;
      if (i < k) r[ef.pivot_columns[i]] = p;
    }
    ef.pivot_columns.push_back(c);
    prev = p;
    ++k;
  }
  // Rows below k vanished; rows above carry pivot `prev` after their final update.
  ef.rank = k;
  rows.resize(k);
  ef.rows = std::move(rows);
  ef.pivot = prev;
  return ef;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}


std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

const std::vector<std::uint64_t>& kernel_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> out;
    Integer q;
    for (int i = 1; i <= 48; ++i) {
      q = (Integer(1) << 62) - Integer(static_cast<unsigned long>(i)) * (Integer(1) << 32);
      mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
      out.push_back(mpz_get_ui(q.get_mpz_t()));
    }
    return out;
  }();
  return primes;
}

/// Forward elimination mod p, then back substitution restricted to the free
/// columns: entry [k][t] is the reduced echelon entry of pivot row k in free column t.
struct ModKernel {
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free;
  std::vector<std::vector<std::uint64_t>> entries;
};

ModKernel mod_kernel(const IntRows& rows, std::size_t cols, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> a;
  a.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::uint64_t> v(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      if (row[j] == 0) continue;
      const std::uint64_t r = mpz_fdiv_ui(row[j].get_mpz_t(), p);
      v[j] = r;
    }
    a.push_back(std::move(v));
  }
  ModKernel out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = k;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) {
      out.free.push_back(c);
      continue;
    }
    std::swap(a[piv], a[k]);
    const std::uint64_t inv = powmod(a[k][c], p - 2, p);
    auto& pr = a[k];
    std::vector<std::size_t> support;
    for (std::size_t j = c; j < cols; ++j) {
      if (pr[j] == 0) continue;
      pr[j] = mulmod(pr[j], inv, p);
      support.push_back(j);
    }
    for (std::size_t i = k + 1; i < a.size(); ++i) {
      const std::uint64_t f = a[i][c];
      if (f == 0) continue;
      auto& r = a[i];
      for (auto j : support) r[j] = submod(r[j], mulmod(f, pr[j], p), p);
    }
    out.pivots.push_back(c);
    ++k;
  }
  a.resize(k);
  const std::size_t nf = out.free.size();
  out.entries.assign(k, std::vector<std::uint64_t>(nf, 0));
  for (std::size_t kk = k; kk-- > 0;) {
    auto& e = out.entries[kk];
    for (std::size_t t = 0; t < nf; ++t) e[t] = a[kk][out.free[t]];
    for (std::size_t jj = kk + 1; jj < k; ++jj) {
      const std::uint64_t u = a[kk][out.pivots[jj]];
      if (u == 0) continue;
      const auto& ej = out.entries[jj];
      for (std::size_t t = 0; t < nf; ++t) {
        if (ej[t] != 0) e[t] = submod(e[t], mulmod(u, ej[t], p), p);
      }
    }
  }
  return out;
}

/// n/d = u mod m with |n|, d <= sqrt(m/2).
bool rational_reconstruct(const Integer& u, const Integer& m, Scalar& out) {
  Integer bound = m / 2;
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  Integer r0 = m, r1 = u, s0 = 0, s1 = 1, q, t;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    t = r0 - q * r1;
    r0.swap(r1);
    r1.swap(t);
    t = s0 - q * s1;
    s0.swap(s1);
    s1.swap(t);
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
  if (g != 1) return false;
  out = Scalar(r1) / Scalar(s1);
  return true;
}

/// Multi-modular kernel with exact verification; nullopt when reconstruction does not settle.
std::optional<std::vector<VectorZ>> modular_kernel(const IntRows& rows, std::size_t cols) {
  std::optional<ModKernel> acc;
  std::vector<std::vector<Integer>> residues;
  Integer modulus = 1;
  for (const std::uint64_t p : kernel_primes()) {
    ModKernel mk = mod_kernel(rows, cols, p);
    if (acc && mk.pivots != acc->pivots) {
      // Fewer pivots means p divides a minor; more means the earlier primes did.
      if (mk.pivots.size() <= acc->pivots.size()) continue;
      acc.reset();
    }
    const Integer P(static_cast<unsigned long>(p));
    if (!acc) {
      residues.assign(mk.pivots.size(), std::vector<Integer>(mk.free.size()));
      for (std::size_t k = 0; k < mk.pivots.size(); ++k) {
        for (std::size_t t = 0; t < mk.free.size(); ++t) residues[k][t] = Integer(static_cast<unsigned long>(mk.entries[k][t]));
      }
      modulus = P;
      acc = std::move(mk);
    } else {
      Integer inv;
      mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t());
      Integer t1;
      for (std::size_t k = 0; k < acc->pivots.size(); ++k) {
        for (std::size_t t = 0; t < acc->free.size(); ++t) {
          Integer& x = residues[k][t];
          // x + modulus * ((r - x) / modulus mod p)
          t1 = Integer(static_cast<unsigned long>(mk.entries[k][t])) - x;
          t1 *= inv;
          mpz_fdiv_r(t1.get_mpz_t(), t1.get_mpz_t(), P.get_mpz_t());
          x += modulus * t1;
        }
      }
      modulus *= P;
    }

    // Reconstruct one vector per free column and check it exactly against every row.
    std::vector<VectorZ> basis;
    bool ok = true;
    for (std::size_t t = 0; t < acc->free.size() && ok; ++t) {
      VectorQ v(cols);
      v[acc->free[t]] = 1;
      for (std::size_t k = 0; k < acc->pivots.size() && acc->pivots[k] < acc->free[t]; ++k) {
        if (residues[k][t] == 0) continue;
        Scalar e;
        if (!rational_reconstruct(residues[k][t], modulus, e)) {
          ok = false;
          break;
        }
        v[acc->pivots[k]] = -e;
      }
      if (!ok) break;
      VectorZ z = primitive_integer(std::span<const Scalar>(v));
      Integer dot;
      for (const auto& row : rows) {
        dot = 0;
        for (std::size_t j = 0; j < cols; ++j) {
          if (z[j] != 0 && row[j] != 0) mpz_addmul(dot.get_mpz_t(), row[j].get_mpz_t(), z[j].get_mpz_t());
        }
        if (dot != 0) {
          ok = false;
          break;
        }
      }
      basis.push_back(std::move(z));
    }
    if (ok) return basis;
  }
  return std::nullopt;
}

}  // namespace

EchelonForm reduced_echelon(const MatrixQ& m) { return eliminate(integer_rows(m), m.cols()); }

RationalEchelon rational_echelon(const MatrixQ& m) {
  const EchelonForm ef = reduced_echelon(m);
  RationalEchelon out;
  out.pivot_columns = ef.pivot_columns;
  for (const auto& r : ef.rows) {
    VectorQ q;
    q.reserve(r.size());
    for (const auto& x : r) {
      Scalar v(x, ef.pivot);
      v.canonicalize();
      q.push_back(std::move(v));
    }
    out.rows.push_back(std::move(q));
  }
  return out;
}

Scalar det(const MatrixQ& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Scale rows to integers, remembering the factor.
  Scalar scale = 1;
  IntRows rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer den = 1;
    for (const auto& x : m.row(i)) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    rows[i].reserve(n);
    for (const auto& x : m.row(i)) rows[i].push_back(x.get_num() * (den / x.get_den()));
    scale /= den;
  }
  int sign = 1;
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && rows[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(rows[piv], rows[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_mul(t.get_mpz_t(), rows[k][k].get_mpz_t(), rows[i][j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), rows[i][k].get_mpz_t(), rows[k][j].get_mpz_t());
        mpz_divexact(rows[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      rows[i][k] = 0;
    }
    prev = rows[k][k];
  }
  Scalar d(prev);
  d *= scale;
  return sign < 0 ? Scalar(-d) : d;
}

std::size_t rank(const MatrixQ& m) {
  if (m.rows() * m.cols() >= kModularThreshold) return m.cols() - kernel_basis(m).size();
  return reduced_echelon(m).rank;
}

std::vector<VectorZ> kernel_basis(const MatrixQ& m) {
  const std::size_t n = m.cols();
  if (m.rows() * m.cols() >= kModularThreshold) {
    const IntRows rows = integer_rows(m);
    if (rows.empty()) return kernel_basis(MatrixQ(0, n));
    if (auto k = modular_kernel(rows, n)) return *std::move(k);
  }
  const EchelonForm ef = reduced_echelon(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : ef.pivot_columns) is_pivot[c] = true;
  std::vector<VectorZ> basis;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    VectorZ v(n, 0);
    v[j] = ef.pivot;
    for (std::size_t i = 0; i < ef.rank; ++i) v[ef.pivot_columns[i]] = -ef.rows[i][j];
    basis.push_back(primitive_integer(std::span<const Integer>(v)));
  }
  return basis;
}

std::size_t nullity_upper_bound(const MatrixQ& m, std::uint64_t prime) {
  const std::size_t cols = m.cols();
  std::vector<std::vector<std::uint64_t>> rows;
  const Integer P(std::to_string(prime));
  Integer r;
  for (const auto& row : integer_rows(m)) {
    std::vector<std::uint64_t> v(cols);
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_fdiv_r(r.get_mpz_t(), row[j].get_mpz_t(), P.get_mpz_t());
      v[j] = mpz_get_ui(r.get_mpz_t());
    }
    rows.push_back(std::move(v));
  }
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols && k < rows.size(); ++c) {
    std::size_t piv = k;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[k]);
    const std::uint64_t inv = powmod(rows[k][c], prime - 2, prime);
    for (std::size_t j = c; j < cols; ++j) rows[k][j] = mulmod(rows[k][j], inv, prime);
    for (std::size_t i = k + 1; i < rows.size(); ++i) {
      const std::uint64_t f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        const std::uint64_t s = mulmod(f, rows[k][j], prime);
        rows[i][j] = rows[i][j] >= s ? rows[i][j] - s : rows[i][j] + prime - s;
      }
    }
    ++k;
  }
  return cols - k;
}

}  // namespace hyparr
