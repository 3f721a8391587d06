#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyparr/arrangement.hpp"
#include "hyparr/certificate.hpp"
#include "hyparr/freeness.hpp"
#include "hyparr/unipoly.hpp"

namespace hyparr {

enum class Family { A, B, C, D, G };

Family parse_family(std::string_view s);
std::string to_string(Family f);

struct RootSystem {
  Family family = Family::A;
  int rank = 0;
  /// Positive roots as integer linear forms on Q^rank.
  std::vector<VectorZ> positive_roots;
  std::vector<int> exponents;
  int coxeter_number = 0;

  std::string name() const;
};

/// Supported: A1-A4, B2-B4, C2-C4, D3-D4, G2. Type A uses the chart x_{l+1} = 0.
RootSystem positive_roots(Family family, int rank);

/// Alpha(x) = k for alpha positive and lo <= k <= hi.
struct DeformationSpec {
  RootSystem phi;
  int lo = 0;
  int hi = 0;
};

/// Hyperplanes ordered by root, then by level.
Arrangement deformation(const DeformationSpec& spec);
Arrangement coxeter_arrangement(const RootSystem& phi);

enum class ErKind { catalan, shi };

struct ErReport {
  FreenessCertificate certificate;
  /// chi of the deformation itself (not of its cone).
  UniPoly charpoly;
  std::vector<int> expected_exponents;
  UniPoly expected_charpoly;
  bool exponents_match = false;
  bool charpoly_match = false;
  bool passed() const { return exponents_match && charpoly_match; }
};

/// Freeness and chi of the cone over the Catalan window [-k, k] or the Shi window [1-k, k].
ErReport er_verify(const RootSystem& phi, int k, ErKind kind, const FreenessOptions& opt = {});

struct CoxeterMultiReport {
  std::pair<int, int> exponents;
  std::pair<int, int> expected;
  bool passed = false;
};

/// Rank-2 Coxeter arrangement with constant multiplicity m.
CoxeterMultiReport coxeter_multi_check(const RootSystem& phi, int m, const DerivationOptions& opt = {});

/// The pair (a, b) names the window [-a, b].
struct ConjectureResult {
  bool holds = false;
  bool in_domain = true;
  std::optional<Scalar> center;
  UniPoly charpoly;
  /// Failed identity residual or offending factor; empty when the identity holds.
  std::string witness;
};

ConjectureResult conjecture_fe(const RootSystem& phi, int a, int b);
ConjectureResult conjecture_hshift(const RootSystem& phi, int a, int b);
/// Domain 0 <= a < b; `allow_out_of_domain` admits a = -1 or a = b, flagged in the result.
ConjectureResult conjecture_rh(const RootSystem& phi, int a, int b, bool allow_out_of_domain = false);

}  // namespace hyparr
