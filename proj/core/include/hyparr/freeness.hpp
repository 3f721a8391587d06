#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hyparr/arrangement.hpp"
#include "hyparr/certificate.hpp"
#include "hyparr/derivations.hpp"

namespace hyparr {

struct FreenessOptions {
  DerivationOptions derivations;
  /// Most determinant evaluations multi_free_search may spend.
  std::size_t saito_budget = 10'000;
  /// Restrict the pivot loops to one hyperplane.
  std::optional<std::size_t> pivot;
  /// At rank >= 4 let the local-freeness criterion decide instead of the b2 comparison.
  bool char4_decides = false;
};

/// A central arrangement together with a chosen pivot hyperplane.
struct ConeForm {
  Arrangement arrangement;
  std::size_t pivot = 0;
};
/// Validates centrality and the pivot index.
ConeForm cone_form(const Arrangement& a, std::size_t pivot);

/// Freeness of a central arrangement, dispatched on the rank.
FreenessCertificate free_test(const Arrangement& a, const FreenessOptions& opt = {});

/// Rank 3: b2 of chi(A,t)/(t-1) against the product of the multirestriction exponents.
FreenessCertificate free_test_rank3(const Arrangement& a, std::size_t pivot, const FreenessOptions& opt = {});

/// Rank >= 4: certified multirestriction exponents, then the b2 identity, with the
/// local-freeness criterion as cross-check and fallback.
FreenessCertificate free_test_highrank(const Arrangement& a, std::size_t pivot, const FreenessOptions& opt = {});

/// A_X is free for every flat X inside H_pivot other than the center.
bool locally_free_along(const Arrangement& a, std::size_t pivot, const FreenessOptions& opt = {});

/// Semidecision for multiarrangements of rank <= 4: returns Free with a verified
/// basis or Unknown, never NotFree. `hint` proposes exponents to try first; rank 4
/// is searched only along the hint.
FreenessCertificate multi_free_search(const Arrangement& a, const Multiplicity& m, const FreenessOptions& opt = {},
                                      std::optional<std::vector<int>> hint = std::nullopt);

/// chi(t) = prod (t - e_i)
bool terao_factor_check(const UniPoly& chi, std::span<const int> exponents);

/// t^ell chi(1/t) = prod (1 - d_i t) modulo t^ell
bool chern_relation_check(const UniPoly& chi, std::span<const int> exponents, int ell);

/// prod over e of the limit at x = 1 of (t(1-x) - (1-x^e)) / ((1-x) x^e).
UniPoly solomon_terao_free(std::span<const int> exponents);

/// Nonnegative integer roots with multiplicity when p splits that way over Z (sorted).
std::optional<std::vector<int>> integer_roots(const UniPoly& p);

}  // namespace hyparr
