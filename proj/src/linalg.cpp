#include "chaincomm/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace chaincomm {

namespace {

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

// row[target] -= factor * row[source]
void eliminate(Matrix& m, std::size_t target, std::size_t source, const Scalar& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!m(source, c).is_zero()) m(target, c) -= factor * m(source, c);
}

void scale_row(Matrix& m, std::size_t r, const Scalar& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) *= factor;
}

}  // namespace

RowReduction rref(const Matrix& m) {
  const auto& f = m.field();
  Matrix reduced = m;
  Matrix transform = Matrix::identity(f, m.rows());
  std::vector<std::size_t> pivots;

  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && reduced(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;

    swap_rows(reduced, row, pivot);
    swap_rows(transform, row, pivot);
    const Scalar inv = reduced(row, col).inverse();
    scale_row(reduced, row, inv);
    scale_row(transform, row, inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || reduced(r, col).is_zero()) continue;
      const Scalar factor = reduced(r, col);
      eliminate(reduced, r, row, factor);
      eliminate(transform, r, row, factor);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(reduced), std::move(transform), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Matrix kernel_basis(const Matrix& m) {
  const auto& f = m.field();
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : red.pivots) is_pivot[p] = true;

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(f, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const auto fc = free_cols[k];
    basis(fc, k) = Scalar::one(f);
    for (std::size_t r = 0; r < red.pivots.size(); ++r) basis(red.pivots[r], k) = -red.reduced(r, fc);
  }
  return basis;
}

Matrix image_basis(const Matrix& m) {
  const auto red = rref(m);
  Matrix basis(m.field(), m.rows(), red.pivots.size());
  for (std::size_t k = 0; k < red.pivots.size(); ++k) basis.set_block(0, k, m.column(red.pivots[k]));
  return basis;
}

Matrix complement_basis(const Matrix& inside, const Matrix& ambient_basis) {
  if (inside.rows() != ambient_basis.rows())
    throw std::invalid_argument("complement_basis: ambient dimension mismatch");
  const auto& f = inside.field();
  if (rank(inside) != inside.cols())
    throw std::invalid_argument("complement_basis: inside columns are dependent");
  const auto ambient_rank = rank(ambient_basis);
  if (rank(hstack({inside, ambient_basis}, f, inside.rows())) != ambient_rank)
    throw std::invalid_argument("complement_basis: inside is not contained in the ambient span");

  Matrix current = inside;
  std::vector<Matrix> added;
  for (std::size_t c = 0; c < ambient_basis.cols() && current.cols() < ambient_rank; ++c) {
    auto candidate = hstack({current, ambient_basis.column(c)}, f, current.rows());
    if (rank(candidate) == candidate.cols()) {
      current = std::move(candidate);
      added.push_back(ambient_basis.column(c));
    }
  }
  return hstack(added, f, inside.rows());
}

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_linear: row count mismatch");
  const auto& f = a.field();
  const auto red = rref(a);
  const Matrix tb = red.transform * b;
  const auto r = red.pivots.size();
  for (std::size_t row = r; row < tb.rows(); ++row)
    for (std::size_t c = 0; c < tb.cols(); ++c)
      if (!tb(row, c).is_zero()) return std::nullopt;

  Matrix x(f, a.cols(), b.cols());
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t c = 0; c < b.cols(); ++c) x(red.pivots[k], c) = tb(k, c);
  return x;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw std::invalid_argument("kron: field mismatch");
  Matrix k(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) return std::nullopt;
  auto red = rref(m);
  if (red.pivots.size() != m.rows()) return std::nullopt;
  return std::move(red.transform);
}

Matrix sylvester_operator(const Matrix& a, const Matrix& b) {
  if (!a.is_square() || !b.is_square()) throw std::invalid_argument("sylvester_operator: non-square input");
  const auto& f = a.field();
  return kron(a, Matrix::identity(f, b.rows())) - kron(Matrix::identity(f, a.rows()), b.transpose());
}

Matrix vectorize(const Matrix& x) {
  return Matrix(x.field(), x.rows() * x.cols(), 1, x.entries());
}

Matrix unvectorize(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 || v.rows() != rows * cols) throw std::invalid_argument("unvectorize: shape mismatch");
  return Matrix(v.field(), rows, cols, v.entries());
}

std::optional<Matrix> sylvester_solve(const Matrix& a, const Matrix& b, const Matrix& c) {
  if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows())
    throw std::invalid_argument("sylvester_solve: dimension mismatch");
  auto x = solve_linear(sylvester_operator(a, b), vectorize(c));
  if (!x) return std::nullopt;
  return unvectorize(*x, c.rows(), c.cols());
}

std::optional<std::uint64_t> matrix_count(const FieldSpec& f, std::size_t rows, std::size_t cols,
                                          std::uint64_t limit) {
  if (!f.is_finite()) return std::nullopt;
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < rows * cols; ++k) {
    if (n > limit / f.modulus()) return std::nullopt;
    n *= f.modulus();
  }
  return n;
}

Matrix matrix_from_index(const FieldSpec& f, std::size_t rows, std::size_t cols, std::uint64_t index) {
  if (!f.is_finite()) throw std::invalid_argument("matrix_from_index over an infinite field");
  const auto p = f.modulus();
  std::vector<Scalar> entries(rows * cols, Scalar::zero(f));
  for (std::size_t k = rows * cols; k-- > 0;) {
    entries[k] = Scalar::residue(static_cast<std::uint32_t>(index % p), static_cast<std::uint32_t>(p));
    index /= p;
  }
  if (index != 0) throw std::out_of_range("matrix index out of range");
  return Matrix(f, rows, cols, std::move(entries));
}

}  // namespace chaincomm
