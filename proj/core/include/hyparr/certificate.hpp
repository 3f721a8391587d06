#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyparr/scalar.hpp"
#include "hyparr/unipoly.hpp"
#include "hyparr/vector_field.hpp"

namespace hyparr {

enum class Verdict { free, not_free, unknown };

enum class Method { rank_le2, saito_basis, char3, b2_highrank, char4_local, dispatch };

std::string to_string(Verdict v);
/// Tags: "rank<=2", "saito-basis", "char3", "b2-highrank", "char4-local", "dispatch".
std::string to_string(Method m);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Outcome of a freeness decision together with the evidence behind it.
struct FreenessCertificate {
  Verdict status = Verdict::unknown;
  std::optional<std::vector<int>> exponents;
  std::optional<std::vector<VectorField>> basis;
  /// b2 - sum d_i d_j for the b2 criteria.
  std::optional<Integer> obstruction;
  Method method = Method::dispatch;
  std::optional<UniPoly> charpoly;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  void add_check(std::string name, bool passed, std::string detail = {}) {
    checks.push_back(Check{std::move(name), passed, std::move(detail)});
  }
  const Check* find_check(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

}  // namespace hyparr
