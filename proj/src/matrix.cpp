#include "chaincomm/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace chaincomm {

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

Matrix::Matrix(FieldSpec field, std::initializer_list<std::initializer_list<std::int64_t>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (auto v : row) data_.push_back(Scalar::from_int(field, v));
  }
}

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
  for (const auto& e : data_)
    if (e.field() != field) throw std::invalid_argument("entry from a different field");
}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  return scalar(field, n, Scalar::one(field));
}

Matrix Matrix::scalar(FieldSpec field, std::size_t n, const Scalar& c) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& e : data_)
    if (!e.is_zero()) return false;
  return true;
}

bool Matrix::is_scalar() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r == c ? !((*this)(r, c) == (*this)(0, 0)) : !(*this)(r, c).is_zero()) return false;
    }
  return true;
}

Scalar Matrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::column(std::size_t c) const { return block(0, c, rows_, 1); }

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw std::out_of_range("block out of range");
  Matrix b(field_, nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r)
    for (std::size_t c = 0; c < ncols; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("block out of range");
  if (b.field_ != field_) throw std::invalid_argument("block from a different field");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

void Matrix::require_same_shape(const Matrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
    throw std::invalid_argument(std::string(op) + ": shape or field mismatch");
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(o, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(o, "subtract");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Scalar& c) {
  for (auto& e : data_) e *= c;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& e : m.data_) e = -e;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_ || a.field_ != b.field_)
    throw std::invalid_argument("multiply: inner dimension or field mismatch");
  Matrix m(a.field_, a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(r, k);
      if (x.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c)
        if (!b(k, c).is_zero()) m(r, c) += x * b(k, c);
    }
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).to_string();
    os << ']';
  }
  os << ']';
  if (empty()) os << " (" << rows_ << 'x' << cols_ << ')';
  return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix hstack(const std::vector<Matrix>& blocks, FieldSpec field, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw std::invalid_argument("hstack: row count mismatch");
    cols += b.cols();
  }
  Matrix m(field, rows, cols);
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(0, c0, b);
    c0 += b.cols();
  }
  return m;
}

Matrix direct_sum(const std::vector<Matrix>& blocks, FieldSpec field) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix m(field, rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    m.set_block(r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

Matrix assemble_3x3(const Matrix (&blocks)[3][3], FieldSpec field, std::size_t n0, std::size_t n1,
                    std::size_t n2) {
  const std::size_t sizes[3] = {n0, n1, n2};
  const std::size_t offsets[3] = {0, n0, n0 + n1};
  Matrix m(field, n0 + n1 + n2, n0 + n1 + n2);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const auto& b = blocks[r][c];
      if (b.rows() != sizes[r] || b.cols() != sizes[c])
        throw std::invalid_argument("assemble_3x3: block (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") has the wrong shape");
      m.set_block(offsets[r], offsets[c], b);
    }
  return m;
}

}  // namespace chaincomm
