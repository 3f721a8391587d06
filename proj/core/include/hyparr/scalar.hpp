#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyparr {

/// Arbitrary-precision rational; GMP keeps it canonical (gcd 1, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

using VectorQ = std::vector<Scalar>;
using VectorZ = std::vector<Integer>;

/// Parses `p/q` or `p`; throws ParseError (line 0) on malformed text or q = 0.
Scalar parse_scalar(std::string_view text);

std::string to_string(const Scalar& s);
std::string to_string(const Integer& z);

/// Scales a rational vector to a primitive integer vector: denominators cleared,
/// content 1, first nonzero entry positive. The zero vector maps to zeros.
VectorZ primitive_integer(std::span<const Scalar> v);

/// Same normalization applied to an integer vector.
VectorZ primitive_integer(std::span<const Integer> v);

VectorQ to_rational(std::span<const Integer> v);

/// Exact integer conversion; throws DomainError when the scalar is not integral.
Integer to_integer(const Scalar& s);

/// Throws DomainError when |z| does not fit in a long.
long to_long(const Integer& z);

}  // namespace hyparr
