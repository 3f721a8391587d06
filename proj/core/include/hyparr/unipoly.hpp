#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hyparr/scalar.hpp"

namespace hyparr {

/// Dense univariate polynomial over Q; coefficient i belongs to t^i.
/// The leading stored coefficient is nonzero, the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coefficients);
  UniPoly(std::initializer_list<long> coefficients);

  static UniPoly constant(const Scalar& c);
  static UniPoly monomial(const Scalar& c, int degree);
  /// t - root
  static UniPoly linear_root(const Scalar& root);
  /// Product of (t - r) over the given roots.
  static UniPoly from_roots(const std::vector<Scalar>& roots);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  /// Coefficient of t^i, zero beyond the degree.
  Scalar coeff(int i) const;
  const Scalar& leading() const;

  Scalar operator()(const Scalar& t) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Multiplies so that the leading coefficient is positive and the
  /// coefficients are coprime integers.
  UniPoly primitive() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Scalar& c, const UniPoly& a);
  UniPoly operator-() const;
  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

  /// Euclidean division; throws DomainError for a zero divisor.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }

  /// Monic gcd; gcd(0, 0) = 0.
  static UniPoly gcd(UniPoly a, UniPoly b);

  /// Human-readable form in the variable `var`, e.g. "t^3 - 3*t^2 + 2*t".
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Scalar> coeffs_;
};

/// p(a*t + b), expanded exactly.
UniPoly compose_affine(const UniPoly& p, const Scalar& a, const Scalar& b);

/// Exact power.
UniPoly pow(const UniPoly& p, unsigned e);

}  // namespace hyparr
