#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chaincomm/matrix.hpp"

namespace chaincomm {

struct RowReduction {
  Matrix reduced;    // reduced row-echelon form
  Matrix transform;  // invertible, transform * input == reduced
  std::vector<std::size_t> pivots;  // pivot columns, increasing
};

/// Gauss-Jordan elimination. The first nonzero entry at or below the
/// current row is taken as pivot, so results are deterministic.
RowReduction rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of ker m: one column per free variable of the
/// reduced form, with that variable set to 1 and the other free ones to 0.
Matrix kernel_basis(const Matrix& m);

/// Columns form a basis of im m: the pivot columns of m itself.
Matrix image_basis(const Matrix& m);

/// Extends the independent columns of `inside` to a basis of the column
/// span of `ambient_basis`, scanning ambient columns in order and keeping
/// each one that raises the rank. Returns only the added columns.
/// Throws std::invalid_argument if `inside` is dependent or not contained
/// in the ambient span.
Matrix complement_basis(const Matrix& inside, const Matrix& ambient_basis);

/// Some x with a * x == b, free variables set to zero; nullopt when the
/// system is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);

/// Square and of full rank. The 0 x 0 matrix is invertible.
bool is_invertible(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);

// Sylvester equations a*X - X*b == c, with a m x m, b n x n, X and c m x n.
//
// X is flattened row-major: entry (r, s) sits at index r*n + s. Under that
// convention the coefficient matrix of X -> a*X - X*b is
//     kron(a, I_n) - kron(I_m, b^T),
// the operator appearing in the invertibility conditions of the commutator
// constructions. (Column-major flattening gives kron(I_n, a) - kron(b^T, I_m),
// a permutation conjugate of the same operator.)

Matrix sylvester_operator(const Matrix& a, const Matrix& b);
/// m x n -> (m*n) x 1, row-major.
Matrix vectorize(const Matrix& x);
/// Inverse of vectorize.
Matrix unvectorize(const Matrix& v, std::size_t rows, std::size_t cols);

/// Throws std::invalid_argument on shape mismatch.
std::optional<Matrix> sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c);

// Enumeration over finite fields. Matrices of a shape are numbered so that
// index order is lexicographic order on row-major canonical entries.

/// q^(rows*cols) when it is finite and at most `limit`.
std::optional<std::uint64_t> matrix_count(const FieldSpec& f, std::size_t rows, std::size_t cols,
                                          std::uint64_t limit);
Matrix matrix_from_index(const FieldSpec& f, std::size_t rows, std::size_t cols, std::uint64_t index);

}  // namespace chaincomm
