#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyparr/multipoly.hpp"

namespace hyparr {

/// Polynomial derivation sum_i f_i d/dx_i.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<MultiPoly> components);

  static VectorField zero(int arity);
  /// The Euler field sum x_i d_i.
  static VectorField euler(int arity);
  /// d/dx_i
  static VectorField partial(int arity, int index);

  int arity() const { return static_cast<int>(components_.size()); }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  /// Common degree of the nonzero components when they are all homogeneous of
  /// one degree; nullopt otherwise (including the zero field).
  std::optional<int> pdeg() const;

  /// theta(f) = sum_i f_i * df/dx_i
  MultiPoly apply(const MultiPoly& f) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const MultiPoly& f, const VectorField& v);
  friend bool operator==(const VectorField&, const VectorField&) = default;

  /// "f_1; f_2; ...; f_ell"
  std::string to_string(std::span<const std::string> vars) const;

 private:
  std::vector<MultiPoly> components_;
};

}  // namespace hyparr
