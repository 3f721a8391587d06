#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyparr/arrangement.hpp"
#include "hyparr/unipoly.hpp"

namespace hyparr {

/// Nonempty intersection of hyperplanes, identified by the reduced echelon
/// form of its augmented defining system.
struct Flat {
  /// Rows (a | d) in reduced echelon form over Q; empty for the whole space.
  std::vector<VectorQ> equations;
  int rank = 0;
  /// Sorted indices of all hyperplanes containing the flat.
  std::vector<std::size_t> members;

  friend bool operator==(const Flat&, const Flat&) = default;
};

/// Flats grouped by rank, each rank sorted by echelon form, with Moebius values mu(V, X).
class IntersectionLattice {
 public:
  IntersectionLattice(int dimension, std::vector<std::vector<Flat>> flats,
                      std::vector<std::vector<Integer>> mobius);

  int dimension() const { return dimension_; }
  /// Largest rank that occurs.
  int top_rank() const { return static_cast<int>(flats_.size()) - 1; }
  const std::vector<Flat>& flats(int rank) const { return flats_[static_cast<std::size_t>(rank)]; }
  const Integer& mobius(int rank, std::size_t i) const { return mobius_[static_cast<std::size_t>(rank)][i]; }
  std::size_t size() const;

  /// sum over flats mu(X) t^{dim X}
  UniPoly characteristic_polynomial() const;

 private:
  int dimension_;
  std::vector<std::vector<Flat>> flats_;
  std::vector<std::vector<Integer>> mobius_;
};

IntersectionLattice intersection_lattice(const Arrangement& a);

/// Flat spanned by intersecting the given hyperplanes; throws DomainError if empty.
Flat flat_of(const Arrangement& a, std::span<const std::size_t> indices);

/// A_X: hyperplanes containing X, original order. Throws DomainError if X is not a flat of A.
Arrangement localization(const Arrangement& a, const Flat& x);

enum class CharpolyMethod { mobius, delres, finitefield };

struct FiniteFieldOptions {
  /// Largest admissible q^ell per evaluation.
  std::uint64_t enumeration_budget = 20'000'000;
};

UniPoly charpoly(const Arrangement& a, CharpolyMethod method = CharpolyMethod::mobius,
                 const FiniteFieldOptions& ff = {});

/// Number of points of (Z/qZ)^ell outside every reduced hyperplane.
/// Throws ResourceError when q^ell exceeds the budget.
std::uint64_t count_complement_mod(const Arrangement& a, std::uint64_t q,
                                   std::uint64_t enumeration_budget = 20'000'000);

/// Largest absolute value of a nonzero square minor of the augmented matrix
/// (a | d). Primes above it preserve the intersection poset modulo q.
Integer good_reduction_bound(const Arrangement& a);

/// The primes used by the finite-field method: the first ell+1 primes above the bound.
std::vector<std::uint64_t> finite_field_primes(const Arrangement& a, std::size_t count);

struct ChamberCounts {
  Integer chambers;
  Integer bounded;
};

/// (|chi(-1)|, |chi(1)|). For a non-essential arrangement the second value counts
/// chambers bounded modulo the common direction space (the empty arrangement gives 1).
ChamberCounts chamber_counts(const Arrangement& a);

/// b_i with chi(t) = sum (-1)^i b_i t^{ell-i}; throws InvariantViolation on a sign failure.
std::vector<Integer> betti(const Arrangement& a);

}  // namespace hyparr
