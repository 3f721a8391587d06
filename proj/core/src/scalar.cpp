#include "hyparr/scalar.hpp"

#include <cctype>

#include "hyparr/error.hpp"

namespace hyparr {

namespace {

bool valid_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!valid_integer_literal(num)) {
    throw ParseError(0, "malformed rational literal '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) return Scalar(parse_integer(num));
  const std::string_view den = text.substr(slash + 1);
  if (!valid_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError(0, "malformed rational literal '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw ParseError(0, "zero denominator in '" + std::string(text) + "'");
  Scalar q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& s) { return s.get_str(10); }

std::string to_string(const Integer& z) { return z.get_str(10); }

VectorZ primitive_integer(std::span<const Scalar> v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  VectorZ out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_num() * (den / x.get_den()));
  return primitive_integer(std::span<const Integer>(out));
}

VectorZ primitive_integer(std::span<const Integer> v) {
  Integer g = 0;
  int sign = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (sign == 0 && x != 0) sign = sgn(x);
  }
  VectorZ out(v.begin(), v.end());
  if (g == 0) return out;
  if (sign < 0) g = -g;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

VectorQ to_rational(std::span<const Integer> v) {
  VectorQ out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Integer to_integer(const Scalar& s) {
  if (s.get_den() != 1) throw DomainError("expected an integer, got " + to_string(s));
  return s.get_num();
}

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw DomainError("integer " + to_string(z) + " out of range");
  return z.get_si();
}

}  // namespace hyparr
