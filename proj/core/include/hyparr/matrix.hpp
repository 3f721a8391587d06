#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyparr/scalar.hpp"

namespace hyparr {

/// Dense row-major rational matrix.
class MatrixQ {
 public:
  MatrixQ() = default;
  MatrixQ(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static MatrixQ identity(std::size_t n);
  static MatrixQ from_rows(const std::vector<VectorQ>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// Appends a row; its length must equal cols().
  void append_row(std::span<const Scalar> row);

  friend MatrixQ operator*(const MatrixQ& a, const MatrixQ& b);
  VectorQ apply(std::span<const Scalar> v) const;
  friend bool operator==(const MatrixQ& a, const MatrixQ& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws DimensionError for a non-square matrix.
Scalar det(const MatrixQ& m);

std::size_t rank(const MatrixQ& m);

/// Canonical basis of the right null space: one vector per free column of the
/// reduced echelon form (in column order), each scaled to coprime integers with
/// a positive first nonzero entry. An empty matrix yields the standard basis.
std::vector<VectorZ> kernel_basis(const MatrixQ& m);

/// Fraction-free reduced echelon data of an integer-scaled copy of a matrix.
struct EchelonForm {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  /// Rank rows; every pivot entry equals `pivot`, other pivot columns are zero.
  std::vector<VectorZ> rows;
  Integer pivot = 1;
};

EchelonForm reduced_echelon(const MatrixQ& m);

/// Reduced row echelon form over Q (pivots 1), zero rows dropped.
struct RationalEchelon {
  std::vector<std::size_t> pivot_columns;
  std::vector<VectorQ> rows;
};

RationalEchelon rational_echelon(const MatrixQ& m);

/// Nullity of the matrix reduced modulo a 62-bit prime. Never smaller than the
/// true nullity over Q, so a zero result certifies a trivial kernel.
std::size_t nullity_upper_bound(const MatrixQ& m, std::uint64_t prime = 4611686018427387847ULL);

}  // namespace hyparr
