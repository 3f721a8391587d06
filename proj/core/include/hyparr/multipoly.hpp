#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyparr/scalar.hpp"

namespace hyparr {

/// Exponent tuple of a monomial in ell variables.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// All monomials of total degree d in n variables, lex-descending (x1^d first).
std::vector<Monomial> monomials_of_degree(int n, int d);

/// Number of monomials of degree d in n variables, C(d+n-1, n-1).
Integer monomial_count(int n, int d);

/// Sparse multivariate polynomial over Q in a fixed number of variables.
/// Terms are kept in lex-descending order, the first term is the lex-leading one.
/// No zero coefficient is ever stored.
class MultiPoly {
 public:
  using Terms = std::map<Monomial, Scalar, std::greater<>>;

  MultiPoly() = default;
  explicit MultiPoly(int arity) : arity_(arity) {}

  static MultiPoly constant(int arity, const Scalar& c);
  static MultiPoly variable(int arity, int index);
  static MultiPoly term(const Scalar& c, Monomial m);
  /// sum_j coeffs[j] * x_j + offset
  static MultiPoly linear(std::span<const Scalar> coeffs, const Scalar& offset = 0);

  int arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const Monomial& m) const;

  /// -1 for zero.
  int degree() const;
  /// Degree of the homogeneous polynomial, nullopt if inhomogeneous; zero is homogeneous of any degree (nullopt).
  std::optional<int> homogeneous_degree() const;
  bool is_constant() const;

  void add_term(const Monomial& m, const Scalar& c);

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Scalar& c, const MultiPoly& a);
  MultiPoly operator-() const;
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly multiply_monomial(const Monomial& m) const;
  MultiPoly derivative(int index) const;
  MultiPoly pow(unsigned e) const;

  Scalar evaluate(std::span<const Scalar> point) const;

  /// Replaces x_j by images[j]; all images share one arity, which becomes the result's.
  MultiPoly substitute(std::span<const MultiPoly> images) const;

  /// Exact quotient by a nonzero linear form, nullopt if not divisible.
  std::optional<MultiPoly> divide_linear(const MultiPoly& alpha) const;

  /// Rendering with the given variable names, e.g. "x^3 - 2*x*y + 1/2".
  std::string to_string(std::span<const std::string> vars) const;

 private:
  int arity_ = 0;
  Terms terms_;
};

/// Default variable names: x, y, z for up to three variables, x1..xn otherwise.
std::vector<std::string> default_variable_names(int n);

}  // namespace hyparr
