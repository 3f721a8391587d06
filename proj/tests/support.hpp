#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyparr/arrangement.hpp"
#include "hyparr/unipoly.hpp"
#include "hyparr/vector_field.hpp"

namespace hyparr::test {

Arrangement braid(int n);
Arrangement boolean(int ell);
/// z, x, y, x - z, x + z, y - z, y + z, x - y, x + y
Arrangement fig1();
/// x, y, x + y, t x - y in the plane.
Arrangement t_family(long t);
Arrangement lines(const std::vector<std::pair<long, long>>& normals);
/// Power-sum fields sum_i x_i^k d_i, k = 0..n-1.
std::vector<VectorField> power_sum_fields(int n);

/// Distinct random lines through the origin with normals in [-box, box]^2.
Arrangement random_lines(std::mt19937_64& rng, int n, long box = 12);
/// Random central arrangement in dimension ell with distinct normals.
Arrangement random_central(std::mt19937_64& rng, int ell, int n, long box = 3);
/// Random affine arrangement with integer data.
Arrangement random_affine(std::mt19937_64& rng, int ell, int n, long box = 3);

UniPoly falling(int n);

/// Oracle: every complex root of q is real and <= 0, decided by the signatures
/// of the Hermite forms built from the Newton power sums.
bool hermite_all_real_nonpositive(const UniPoly& q);
/// Signature of a symmetric rational matrix by congruence diagonalization.
int signature(std::vector<std::vector<Scalar>> m);

struct Regions {
  long chambers = 0;
  long bounded = 0;
};
/// Oracle for ell <= 2: distinct sign vectors of refined grid samples, bounded regions
/// being those absent from the boundary of a box enclosing all vertices.
/// Non-essential inputs are projected to their essential part first.
Regions region_oracle(const Arrangement& a);

/// Oracle for dim D(A, m)_d: alpha^m divides f iff every partial derivative of
/// order < m vanishes on H, tested at random points of each hyperplane.
std::size_t graded_dim_oracle(const Arrangement& a, const Multiplicity& m, int d, std::uint64_t seed = 7);

}  // namespace hyparr::test
