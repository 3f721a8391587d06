#include "hyparr/multipoly.hpp"

#include <numeric>
#include <sstream>

#include "hyparr/error.hpp"

namespace hyparr {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

namespace {

void enumerate_monomials(int n, int d, int pos, Monomial& cur, std::vector<Monomial>& out) {
  if (pos == n - 1) {
    cur[static_cast<std::size_t>(pos)] = d;
    out.push_back(cur);
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur[static_cast<std::size_t>(pos)] = e;
    enumerate_monomials(n, d - e, pos + 1, cur, out);
  }
}

void check_arity(const MultiPoly& a, const MultiPoly& b) {
  if (a.arity() != b.arity()) {
    throw DimensionError("polynomial arity mismatch: " + std::to_string(a.arity()) + " vs " +
                         std::to_string(b.arity()));
  }
}

}  // namespace

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(static_cast<std::size_t>(n), 0);
  enumerate_monomials(n, d, 0, cur, out);
  return out;
}

Integer monomial_count(int n, int d) {
  if (d < 0) return 0;
  if (n == 0) return d == 0 ? 1 : 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(d + n - 1), static_cast<unsigned long>(n - 1));
  return r;
}

MultiPoly MultiPoly::constant(int arity, const Scalar& c) {
  MultiPoly p(arity);
  p.add_term(Monomial(static_cast<std::size_t>(arity), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(int arity, int index) {
  if (index < 0 || index >= arity) throw DimensionError("variable index out of range");
  Monomial m(static_cast<std::size_t>(arity), 0);
  m[static_cast<std::size_t>(index)] = 1;
  return term(1, std::move(m));
}

MultiPoly MultiPoly::term(const Scalar& c, Monomial m) {
  MultiPoly p(static_cast<int>(m.size()));
  p.add_term(m, c);
  return p;
}

MultiPoly MultiPoly::linear(std::span<const Scalar> coeffs, const Scalar& offset) {
  const int n = static_cast<int>(coeffs.size());
  MultiPoly p(n);
  Monomial m(coeffs.size(), 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    m[j] = 1;
    p.add_term(m, coeffs[j]);
    m[j] = 0;
  }
  p.add_term(m, offset);
  return p;
}

Scalar MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
  return d;
}

std::optional<int> MultiPoly::homogeneous_degree() const {
  std::optional<int> d;
  for (const auto& [m, c] : terms_) {
    const int k = total_degree(m);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

bool MultiPoly::is_constant() const { return degree() <= 0; }

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
  if (static_cast<int>(m.size()) != arity_) throw DimensionError("monomial length does not match arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_arity(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_arity(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_arity(a, b);
  MultiPoly out(a.arity_);
  Monomial m(static_cast<std::size_t>(a.arity_));
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

MultiPoly operator*(const Scalar& c, const MultiPoly& a) {
  MultiPoly out(a.arity_);
  if (c == 0) return out;
  out.terms_ = a.terms_;
  for (auto& [m, x] : out.terms_) x *= c;
  return out;
}

MultiPoly MultiPoly::operator-() const { return Scalar(-1) * *this; }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::multiply_monomial(const Monomial& mono) const {
  if (static_cast<int>(mono.size()) != arity_) throw DimensionError("monomial length does not match arity");
  MultiPoly out(arity_);
  for (const auto& [m, c] : terms_) {
    Monomial s = m;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += mono[i];
    out.terms_.emplace_hint(out.terms_.end(), std::move(s), c);
  }
  return out;
}

MultiPoly MultiPoly::derivative(int index) const {
  if (index < 0 || index >= arity_) throw DimensionError("variable index out of range");
  MultiPoly out(arity_);
  const auto k = static_cast<std::size_t>(index);
  for (const auto& [m, c] : terms_) {
    if (m[k] == 0) continue;
    Monomial d = m;
    d[k] -= 1;
    out.add_term(d, c * m[k]);
  }
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(arity_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Scalar MultiPoly::evaluate(std::span<const Scalar> point) const {
  if (static_cast<int>(point.size()) != arity_) throw DimensionError("evaluation point has wrong length");
  Scalar acc = 0;
  for (const auto& [m, c] : terms_) {
    Scalar v = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      Scalar p;
      mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), static_cast<unsigned long>(m[i]));
      mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), static_cast<unsigned long>(m[i]));
      v *= p;
    }
    acc += v;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (static_cast<int>(images.size()) != arity_) throw DimensionError("substitution needs one image per variable");
  const int target = images.empty() ? 0 : images[0].arity();
  for (const auto& im : images) {
    if (im.arity() != target) throw DimensionError("substitution images disagree in arity");
  }
  // powers[j][e] = images[j]^e, built lazily
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t j, int e) -> const MultiPoly& {
    auto& pw = powers[j];
    if (pw.empty()) pw.push_back(constant(target, 1));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * images[j]);
    return pw[static_cast<std::size_t>(e)];
  };
  MultiPoly out(target);
  for (const auto& [m, c] : terms_) {
    MultiPoly t = constant(target, c);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] != 0) t = t * power(j, m[j]);
    }
    out += t;
  }
  return out;
}

std::optional<MultiPoly> MultiPoly::divide_linear(const MultiPoly& alpha) const {
  check_arity(*this, alpha);
  if (alpha.is_zero() || alpha.degree() != 1) throw DomainError("divide_linear needs a nonzero linear form");
  // The lex-leading term of alpha is a_p x_p for the first variable p it involves.
  const auto& [lead_m, lead_c] = *alpha.terms_.begin();
  std::size_t p = 0;
  while (lead_m[p] == 0) ++p;
  MultiPoly rem = *this;
  MultiPoly quo(arity_);
  while (!rem.is_zero()) {
    const auto [m, c] = *rem.terms_.begin();
    if (m[p] == 0) return std::nullopt;
    Monomial q = m;
    q[p] -= 1;
    const Scalar qc = c / lead_c;
    quo.add_term(q, qc);
    for (const auto& [am, ac] : alpha.terms_) {
      Monomial s = q;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += am[i];
      rem.add_term(s, -qc * ac);
    }
  }
  return quo;
}

std::string MultiPoly::to_string(std::span<const std::string> vars) const {
  if (static_cast<int>(vars.size()) < arity_) throw DimensionError("not enough variable names");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || total_degree(m) == 0) {
      os << hyparr::to_string(mag);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << vars[i];
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> default_variable_names(int n) {
  std::vector<std::string> v;
  if (n <= 3) {
    const char* names[] = {"x", "y", "z"};
    for (int i = 0; i < n; ++i) v.emplace_back(names[i]);
  } else {
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  }
  return v;
}

}  // namespace hyparr
