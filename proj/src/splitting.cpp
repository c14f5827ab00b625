#include "chaincomm/splitting.hpp"

#include <string>

#include "chaincomm/linalg.hpp"

namespace chaincomm {

Splitting::Splitting(ComplexPtr complex, std::vector<SplitDegree> degrees)
    : complex_(std::move(complex)), degrees_(std::move(degrees)) {
  if (degrees_.size() != complex_->dims().size()) throw std::invalid_argument("one split degree per window degree");
}

std::size_t Splitting::boundary_dim(int i) const {
  return complex_->in_window(i) ? at(i).boundary_dim : 0;
}

std::size_t Splitting::cohomology_dim(int i) const {
  return complex_->in_window(i) ? at(i).cohomology_dim : 0;
}

Matrix Splitting::basis_or_empty(int i) const {
  if (complex_->in_window(i)) return at(i).basis;
  return Matrix::zero(complex_->field(), 0, 0);
}

Matrix Splitting::inverse_or_empty(int i) const {
  if (complex_->in_window(i)) return at(i).inverse;
  return Matrix::zero(complex_->field(), 0, 0);
}

Matrix Splitting::to_split(int i, const Matrix& m) const { return inverse_or_empty(i) * m * basis_or_empty(i); }

Matrix Splitting::from_split(int i, const Matrix& m) const { return basis_or_empty(i) * m * inverse_or_empty(i); }

Matrix Splitting::homotopy_to_split(int i, const Matrix& s) const {
  return inverse_or_empty(i - 1) * s * basis_or_empty(i);
}

Matrix Splitting::homotopy_from_split(int i, const Matrix& s) const {
  return basis_or_empty(i - 1) * s * inverse_or_empty(i);
}

Matrix Splitting::standard_differential(int i) const {
  const auto& f = complex_->field();
  Matrix d = Matrix::zero(f, complex_->dim(i + 1), complex_->dim(i));
  const auto corner = boundary_dim(i + 1);
  const auto col0 = complex_->dim(i) - corner;  // C_i is the last block of V_i
  for (std::size_t r = 0; r < corner; ++r) d(r, col0 + r) = Scalar::one(f);
  return d;
}

Splitting split_complex(const ComplexPtr& c) {
  const auto& f = c->field();
  std::vector<Matrix> boundary_bases;  // B_lo .. B_{hi+1}
  for (int i = c->lo(); i <= c->hi() + 1; ++i) boundary_bases.push_back(image_basis(c->differential(i - 1)));

  std::vector<SplitDegree> degrees;
  for (int i = c->lo(); i <= c->hi(); ++i) {
    const auto k = static_cast<std::size_t>(i - c->lo());
    const auto& boundaries = boundary_bases[k];
    const auto& next_boundaries = boundary_bases[k + 1];
    const auto d = c->differential(i);
    auto lifts = complement_basis(boundaries, kernel_basis(d));
    auto preimages = solve_linear(d, next_boundaries);
    if (!preimages) throw std::logic_error("image basis of d_" + std::to_string(i) + " has no preimage");
    auto basis = hstack({boundaries, lifts, *preimages}, f, c->dim(i));
    auto inv = inverse(basis);
    if (!inv) throw std::logic_error("split basis at degree " + std::to_string(i) + " is singular");
    degrees.push_back({boundaries.cols(), lifts.cols(), next_boundaries.cols(), std::move(basis), std::move(*inv)});
  }

  Splitting s(c, std::move(degrees));
  for (int i = c->lo(); i < c->hi(); ++i) {
    const auto conj = s.at(i + 1).inverse * c->differential(i) * s.at(i).basis;
    if (!(conj == s.standard_differential(i)))
      throw std::logic_error("split differential at degree " + std::to_string(i) + " is not in standard form");
  }
  return s;
}

bool operator==(const BlockData& a, const BlockData& b) {
  if (a.lo != b.lo || a.degrees.size() != b.degrees.size()) return false;
  for (std::size_t k = 0; k < a.degrees.size(); ++k) {
    const auto &x = a.degrees[k], &y = b.degrees[k];
    if (!(x.boundary == y.boundary && x.cohomology == y.cohomology && x.g == y.g && x.h == y.h && x.k == y.k))
      return false;
  }
  return true;
}

BlockData extract_blocks(const ChainEndomorphism& phi, const Splitting& s) {
  const auto& c = phi.complex();
  BlockData out{c.lo(), {}};
  std::vector<Matrix> corner_blocks;  // (3,3) block at each degree
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& sd = s.at(i);
    const auto b = sd.boundary_dim, h = sd.cohomology_dim, n = sd.next_boundary_dim;
    const auto m = s.to_split(i, phi.at(i));
    const auto lower_left = m.block(b, 0, h + n, b);
    const auto lower_mid = m.block(b + h, b, n, h);
    if (!lower_left.is_zero() || !lower_mid.is_zero())
      throw BlockStructureError("endomorphism has a nonzero sub-diagonal block at degree " + std::to_string(i));
    out.degrees.push_back({m.block(0, 0, b, b), m.block(b, b, h, h), m.block(0, b, b, h), m.block(0, b + h, b, n),
                           m.block(b, b + h, h, n)});
    corner_blocks.push_back(m.block(b + h, b + h, n, n));
  }
  for (int i = c.lo(); i < c.hi(); ++i) {
    if (!(corner_blocks[static_cast<std::size_t>(i - c.lo())] == out.at(i + 1).boundary))
      throw BlockStructureError("phi^B blocks disagree between degrees " + std::to_string(i) + " and " +
                                std::to_string(i + 1));
  }
  // B_{hi+1} = 0, so the last corner block is empty by shape.
  return out;
}

Matrix next_boundary_block(const BlockData& blocks, const Splitting& s, int i) {
  if (s.complex().in_window(i + 1)) return blocks.at(i + 1).boundary;
  return Matrix::zero(s.complex().field(), 0, 0);
}

ChainEndomorphism assemble(const BlockData& blocks, const Splitting& s) {
  const auto& c = s.complex();
  const auto& f = c.field();
  if (blocks.lo != c.lo() || blocks.degrees.size() != c.dims().size())
    throw std::invalid_argument("block data does not cover the splitting's window");
  std::vector<Matrix> maps;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& sd = s.at(i);
    const auto b = sd.boundary_dim, h = sd.cohomology_dim, n = sd.next_boundary_dim;
    const auto& db = blocks.at(i);
    const Matrix parts[3][3] = {
        {db.boundary, db.g, db.h},
        {Matrix::zero(f, h, b), db.cohomology, db.k},
        {Matrix::zero(f, n, b), Matrix::zero(f, n, h), next_boundary_block(blocks, s, i)},
    };
    maps.push_back(s.from_split(i, assemble_3x3(parts, f, b, h, n)));
  }
  return ChainEndomorphism(s.complex_ptr(), std::move(maps));
}

}  // namespace chaincomm
