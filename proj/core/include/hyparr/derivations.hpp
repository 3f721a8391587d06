#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hyparr/arrangement.hpp"
#include "hyparr/certificate.hpp"
#include "hyparr/matrix.hpp"
#include "hyparr/vector_field.hpp"

namespace hyparr {

struct DerivationOptions {
  /// Largest number of coefficient unknowns ell * C(d+ell-1, ell-1) per degree.
  std::size_t unknown_budget = 60'000;
};

/// theta in D(A, m): theta(alpha_i) is divisible by alpha_i^{m_i} for every i.
/// Requires a central arrangement.
bool is_member(const VectorField& theta, const Arrangement& a, const Multiplicity& m);

/// Linear conditions on the coefficients of a degree-d field in D(A, m).
/// Unknown j <-> (component j / N, monomial j % N) with the degree-d monomials in
/// lex-descending order. Unknowns forced to vanish by coordinate hyperplanes are
/// eliminated; `live` maps matrix columns back to unknowns.
struct DegreeSystem {
  int arity = 0;
  int degree = 0;
  std::vector<Monomial> monomials;
  std::vector<std::size_t> live;
  MatrixQ conditions;

  std::size_t unknowns() const { return static_cast<std::size_t>(arity) * monomials.size(); }
  VectorField field(std::span<const Integer> live_coefficients) const;
  /// Coefficient vector of a homogeneous degree-d field over all unknowns.
  VectorQ coordinates(const VectorField& theta) const;
};

DegreeSystem degree_system(const Arrangement& a, const Multiplicity& m, int d,
                           const DerivationOptions& opt = {});

/// dim_Q D(A, m)_d
std::size_t graded_dim(const Arrangement& a, const Multiplicity& m, int d,
                       const DerivationOptions& opt = {});

/// Canonical basis of D(A, m)_d: the reduced echelon kernel basis of the
/// degree system, each field with coprime integer coefficients.
std::vector<VectorField> graded_basis(const Arrangement& a, const Multiplicity& m, int d,
                                      const DerivationOptions& opt = {});

/// Cheap upper bound for dim D(A, m)_d (exact whenever it returns 0).
std::size_t graded_dim_upper_bound(const Arrangement& a, const Multiplicity& m, int d,
                                   const DerivationOptions& opt = {});

/// d -> dim D(A, m)_d for 0 <= d <= dmax (dmax defaults to |m|).
std::map<int, std::size_t> hilbert(const Arrangement& a, const Multiplicity& m,
                                   std::optional<int> dmax = std::nullopt,
                                   const DerivationOptions& opt = {});

/// Exponents (d1, d2), d1 <= d2, of a central essential rank-2 multiarrangement
/// with positive multiplicities; d1 is the smallest degree with D(A, m)_d != 0.
std::pair<int, int> exponents_rank2(const Arrangement& a, const Multiplicity& m,
                                    const DerivationOptions& opt = {});

/// |d1 - d2|
int delta(const Arrangement& a, const Multiplicity& m, const DerivationOptions& opt = {});

/// Saito's criterion for ell candidate fields: membership plus
/// det[theta_j(x_i)] = c * Q(A, m) with c a nonzero constant.
/// A failure refers to the candidates only; the certificate notes say so.
FreenessCertificate saito_check(const Arrangement& a, const Multiplicity& m,
                                std::span<const VectorField> candidates);

/// Determinant of a square polynomial matrix by memoized minor expansion.
MultiPoly polynomial_det(const std::vector<std::vector<MultiPoly>>& rows);

/// Covariant derivative: nabla_eta theta = sum_i eta(theta_i) d_i.
VectorField nabla(const VectorField& eta, const VectorField& theta);

/// theta = g * theta_E + theta_1 with g = theta(alpha_i) / alpha_i and
/// theta_1(alpha_i) = 0, for theta in D(A) of a central arrangement.
struct D1Split {
  MultiPoly g;
  VectorField theta1;
};
D1Split split_d1(const VectorField& theta, const Arrangement& a, std::size_t index);

/// Restriction of theta with theta(alpha_i) = 0 to H_i, in the chart of H_i.
VectorField restrict_field(const VectorField& theta, const Arrangement& a, std::size_t index);

}  // namespace hyparr
