#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hyparr/multipoly.hpp"
#include "hyparr/scalar.hpp"

namespace hyparr {

/// Affine hyperplane a.x = d in canonical form: (a | d) is a primitive integer
/// vector whose first nonzero entry (necessarily in a) is positive.
class Hyperplane {
 public:
  Hyperplane(std::span<const Scalar> normal, const Scalar& constant = 0);
  Hyperplane(std::span<const Integer> normal, const Integer& constant = 0);
  /// Convenience for literals: Hyperplane::of({1, -1}, 0).
  static Hyperplane of(std::initializer_list<long> normal, long constant = 0);

  int dimension() const { return static_cast<int>(normal_.size()); }
  const VectorZ& normal() const { return normal_; }
  const Integer& constant() const { return constant_; }
  bool is_linear() const { return constant_ == 0; }
  /// Index of the first nonzero normal entry; its coefficient is positive.
  int pivot() const;
  /// The canonical row (a | d).
  VectorQ augmented_row() const;

  /// The linear form a.x (without the constant).
  MultiPoly linear_form() const;
  /// a.x - d
  MultiPoly defining_polynomial() const;

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend std::strong_ordering operator<=>(const Hyperplane& a, const Hyperplane& b);

  std::string to_string(std::span<const std::string> vars) const;

 private:
  void canonicalize(VectorZ row);
  VectorZ normal_;
  Integer constant_;
};

/// Nonnegative multiplicity per hyperplane index.
struct Multiplicity {
  std::vector<int> values;

  static Multiplicity constant(std::size_t n, int value) {
    return Multiplicity{std::vector<int>(n, value)};
  }
  std::size_t size() const { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }
  int weight() const;
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
};

/// Ordered set of distinct hyperplanes in Q^ell.
class Arrangement {
 public:
  explicit Arrangement(int dimension) : dimension_(dimension) {}
  /// Throws DomainError on a duplicate hyperplane and DimensionError on a dimension mismatch.
  Arrangement(int dimension, std::vector<Hyperplane> hyperplanes);

  int dimension() const { return dimension_; }
  std::size_t size() const { return hyperplanes_.size(); }
  bool empty() const { return hyperplanes_.empty(); }
  const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
  const Hyperplane& operator[](std::size_t i) const { return hyperplanes_[i]; }

  bool is_central() const;
  /// Rank of the normal vectors.
  int rank() const;
  /// Index of a hyperplane, or size() when absent.
  std::size_t find(const Hyperplane& h) const;

  Arrangement without(std::size_t index) const;
  /// Sub-arrangement on the given indices, in the given order.
  Arrangement subset(std::span<const std::size_t> indices) const;

  /// Q(A, m) = prod alpha_i^{m_i}; requires a central arrangement.
  MultiPoly defining_polynomial(const Multiplicity& m) const;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

 private:
  int dimension_;
  std::vector<Hyperplane> hyperplanes_;
};

/// Affine parametrization of a hyperplane H_i: the pivot variable is solved
/// for, the remaining ell-1 coordinates (in order) are kept.
struct RestrictionChart {
  int ambient_dimension = 0;
  int pivot = 0;
  Hyperplane hyperplane;
  /// images[j] expresses ambient x_j in chart coordinates (arity ell-1).
  std::vector<MultiPoly> images;

  explicit RestrictionChart(const Hyperplane& h);
  /// Chart coordinates -> ambient point on H.
  VectorQ lift(std::span<const Scalar> chart_point) const;
  /// Restriction of a polynomial to H in chart coordinates.
  MultiPoly pullback(const MultiPoly& f) const;
};

struct Restriction {
  Arrangement arrangement;
  RestrictionChart chart;
  /// sources[k]: indices of the hyperplanes of A (other than H_i) meeting H_i in hyperplane k.
  std::vector<std::vector<std::size_t>> sources;
};

/// A^{H_i}: nonempty intersections H_i with the other hyperplanes, deduplicated,
/// in order of first appearance, written in the chart of H_i.
Restriction restrict(const Arrangement& a, std::size_t index);

struct ZieglerRestriction {
  Arrangement arrangement;
  Multiplicity multiplicity;
  RestrictionChart chart;
};

/// Ziegler multirestriction (A^{H_i}, m^{H_i}); requires a central arrangement.
ZieglerRestriction ziegler(const Arrangement& a, std::size_t index);

/// Cone: a.x = d becomes a.x - d z = 0 with z appended as the last coordinate,
/// and H_0 = {z = 0} is inserted at index 0.
Arrangement cone(const Arrangement& a);

struct Essentialization {
  Arrangement arrangement;
  /// Ambient coordinates kept (pivot columns of the normals' echelon basis).
  std::vector<int> kept_coordinates;
  /// Rows of the reduced echelon basis of the normal space (rank x ell).
  std::vector<VectorQ> basis;
};

/// Projects A to the quotient by the common direction space of its normals;
/// the result has rank equal to its dimension and keeps the hyperplane order.
Essentialization essentialize(const Arrangement& a);

}  // namespace hyparr
