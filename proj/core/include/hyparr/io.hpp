#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyparr/arrangement.hpp"
#include "hyparr/multipoly.hpp"
#include "hyparr/vector_field.hpp"

namespace hyparr {

/// Parsed arrangement file. `variables` holds the names from a `vars` line, or the
/// defaults for the dimension when the file has none.
struct ArrangementFile {
  Arrangement arrangement{0};
  Multiplicity multiplicity;
  std::vector<std::string> variables;
  bool explicit_variables = false;
};

/// Grammar:
///   arrangement 1
///   dim L
///   vars NAME ... NAME          (optional, L names)
///   hyp RAT ... RAT = RAT [mult INT]
/// `#` starts a comment. Errors are ParseError with the 1-based line number.
ArrangementFile parse_arrangement(std::string_view text);

/// Canonical text: canonicalized hyperplanes in file order, `mult` only when not 1.
std::string serialize_arrangement(const ArrangementFile& file);
std::string serialize_arrangement(const Arrangement& a, const Multiplicity& m);

/// Sum of terms c*x^e*y^f*... with integer or p/q coefficients.
MultiPoly parse_polynomial(std::string_view text, std::span<const std::string> vars);

/// Components separated by `;`.
VectorField parse_vector_field(std::string_view text, std::span<const std::string> vars);

/// One vector field per nonblank line, `#` comments.
std::vector<VectorField> parse_basis(std::string_view text, std::span<const std::string> vars);

}  // namespace hyparr
