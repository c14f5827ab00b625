#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chaincomm/complex.hpp"

namespace chaincomm {

/// Change of basis V_i = B_i + H_i + C_i at one degree, where B_i = im d_{i-1},
/// B_i + H_i = ker d_i and d_i maps C_i isomorphically onto B_{i+1}.
struct SplitDegree {
  std::size_t boundary_dim;    // b_i
  std::size_t cohomology_dim;  // h_i
  std::size_t next_boundary_dim;  // b_{i+1} = dim C_i
  Matrix basis;    // columns: basis of B_i, cocycle lifts of H_i, preimages of B_{i+1}'s basis
  Matrix inverse;  // basis^{-1}
};

/// In the split bases every d_i is the block matrix with an identity in the
/// top-right (B_{i+1} <- C_i) corner and zeros elsewhere.
class Splitting {
 public:
  Splitting(ComplexPtr complex, std::vector<SplitDegree> degrees);

  const ChainComplex& complex() const { return *complex_; }
  const ComplexPtr& complex_ptr() const { return complex_; }
  const SplitDegree& at(int i) const { return degrees_.at(static_cast<std::size_t>(i - complex_->lo())); }
  /// b_i for any integer i (zero outside lo+1 .. hi).
  std::size_t boundary_dim(int i) const;
  std::size_t cohomology_dim(int i) const;

  /// basis_i^{-1} * m * basis_i for an endomorphism of V_i.
  Matrix to_split(int i, const Matrix& m) const;
  Matrix from_split(int i, const Matrix& m) const;
  /// For S : V_i -> V_{i-1}: basis_{i-1}^{-1} * s * basis_i, and back.
  Matrix homotopy_to_split(int i, const Matrix& s) const;
  Matrix homotopy_from_split(int i, const Matrix& s) const;

  /// The standard corner matrix that d_i becomes, dims(i+1) x dims(i).
  Matrix standard_differential(int i) const;

 private:
  Matrix basis_or_empty(int i) const;
  Matrix inverse_or_empty(int i) const;

  ComplexPtr complex_;
  std::vector<SplitDegree> degrees_;
};

/// Deterministic construction: B_i from image_basis(d_{i-1}), cohomology
/// lifts from complement_basis inside ker d_i, and C_i by solve_linear
/// preimages of B_{i+1}'s basis. The conjugated differentials are checked
/// against the standard form (std::logic_error if they differ).
/// Precondition: c is a valid complex.
Splitting split_complex(const ComplexPtr& c);

/// Upper block-triangular pieces of a chain endomorphism in split
/// coordinates:
///
///     [ phi^B_i   g_i      h_i         ]
///     [ 0         phi^H_i  k_i         ]
///     [ 0         0        phi^B_{i+1} ]
///
/// `boundary` holds phi^B_i; the (3,3) block is the next degree's
/// `boundary`, so it is not stored twice.
struct DegreeBlocks {
  Matrix boundary;    // phi^B_i, b_i x b_i
  Matrix cohomology;  // phi^H_i, h_i x h_i
  Matrix g;           // b_i x h_i
  Matrix h;           // b_i x b_{i+1}
  Matrix k;           // h_i x b_{i+1}
};

struct BlockData {
  int lo;
  std::vector<DegreeBlocks> degrees;  // lo .. hi

  const DegreeBlocks& at(int i) const { return degrees.at(static_cast<std::size_t>(i - lo)); }
  DegreeBlocks& at(int i) { return degrees.at(static_cast<std::size_t>(i - lo)); }
  friend bool operator==(const BlockData& a, const BlockData& b);
};

/// Raised when a supposed chain map has a nonzero block below the diagonal
/// or inconsistent phi^B blocks between degrees.
class BlockStructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

BlockData extract_blocks(const ChainEndomorphism& phi, const Splitting& s);

/// Inverse of extract_blocks. Throws std::invalid_argument on block shape
/// mismatch with the splitting.
ChainEndomorphism assemble(const BlockData& blocks, const Splitting& s);

/// phi^B_{i+1} as seen from degree i: the empty matrix past the window.
Matrix next_boundary_block(const BlockData& blocks, const Splitting& s, int i);

}  // namespace chaincomm
