#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "chaincomm/scalar.hpp"

namespace chaincomm {

/// Dense row-major matrix over a FieldSpec. Empty shapes (0 x n, n x 0)
/// are ordinary values; they appear at both ends of every bounded complex.
class Matrix {
 public:
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);
  /// Entries given as integers, reduced into the field.
  Matrix(FieldSpec field, std::initializer_list<std::initializer_list<std::int64_t>> rows);
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix zero(FieldSpec field, std::size_t rows, std::size_t cols) {
    return Matrix(field, rows, cols);
  }
  static Matrix identity(FieldSpec field, std::size_t n);
  static Matrix scalar(FieldSpec field, std::size_t n, const Scalar& c);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const std::vector<Scalar>& entries() const { return data_; }

  bool is_zero() const;
  /// True iff square and equal to c * I for some scalar c (the 0 x 0 matrix counts).
  bool is_scalar() const;
  Scalar trace() const;
  Matrix transpose() const;

  Matrix column(std::size_t c) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Scalar& c);
  Matrix operator-() const;

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& c) { return a *= c; }
  friend Matrix operator*(const Scalar& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  void require_same_shape(const Matrix& o, const char* op) const;

  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// a*b - b*a.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Horizontal concatenation; all blocks must share a row count. `rows` is
/// used when the list is empty.
Matrix hstack(const std::vector<Matrix>& blocks, FieldSpec field, std::size_t rows);

/// Block-diagonal direct sum.
Matrix direct_sum(const std::vector<Matrix>& blocks, FieldSpec field);

/// Square 3 x 3 block matrix with diagonal block sizes (n0, n1, n2). Blocks
/// are addressed [row][col]; shapes are checked.
Matrix assemble_3x3(const Matrix (&blocks)[3][3], FieldSpec field, std::size_t n0, std::size_t n1,
                    std::size_t n2);

}  // namespace chaincomm
