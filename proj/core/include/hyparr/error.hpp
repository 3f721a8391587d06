#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyparr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (zero polynomial, bad window, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch: non-square matrix, arity mismatch, bad index.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configured budget (enumeration size, unknown count, prime bound) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A mathematical invariant that must hold failed; always a bug or bad input data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace hyparr
