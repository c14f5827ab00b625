#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "chaincomm/matrix.hpp"

namespace chaincomm {

/// Cohomologically indexed complex, V_i = 0 outside the window [lo, hi].
/// d_i : V_i -> V_{i+1} is stored for lo <= i < hi; every other d_i is the
/// empty zero map of the appropriate shape.
class ChainComplex {
 public:
  /// Throws std::invalid_argument on bad shapes. d o d = 0 is *not* checked
  /// here; see validate_complex.
  ChainComplex(FieldSpec field, int lo, std::vector<std::size_t> dims, std::vector<Matrix> differentials);

  const FieldSpec& field() const { return field_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
  bool in_window(int i) const { return i >= lo_ && i <= hi(); }

  std::size_t dim(int i) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// Defined for every integer i.
  Matrix differential(int i) const;
  /// Interior differentials d_lo .. d_{hi-1}.
  const std::vector<Matrix>& differentials() const { return diffs_; }

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

 private:
  FieldSpec field_;
  int lo_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
};

using ComplexPtr = std::shared_ptr<const ChainComplex>;

struct Violation {
  int degree;
  std::string identity;
  std::string detail;
};

std::vector<Violation> validate_complex(const ChainComplex& c);

/// Degreewise family of maps over a shared complex. `shift` is 0 for
/// endomorphisms (phi_i : V_i -> V_i) and -1 for homotopies
/// (S_i : V_i -> V_{i-1}). Maps are stored for every degree in the window.
template <int Shift>
class GradedMap {
 public:
  /// Throws std::invalid_argument on shape mismatch.
  GradedMap(ComplexPtr complex, std::vector<Matrix> maps) : complex_(std::move(complex)), maps_(std::move(maps)) {
    if (!complex_) throw std::invalid_argument("null complex");
    if (maps_.size() != complex_->dims().size()) throw std::invalid_argument("one map per window degree expected");
    for (int i = complex_->lo(); i <= complex_->hi(); ++i) {
      const auto& m = at(i);
      if (m.field() != complex_->field() || m.rows() != complex_->dim(i + Shift) || m.cols() != complex_->dim(i))
        throw std::invalid_argument("map at degree " + std::to_string(i) + " has the wrong shape");
    }
  }

  static GradedMap zero(ComplexPtr c) {
    std::vector<Matrix> maps;
    for (int i = c->lo(); i <= c->hi(); ++i) maps.push_back(Matrix::zero(c->field(), c->dim(i + Shift), c->dim(i)));
    return GradedMap(std::move(c), std::move(maps));
  }

  const ComplexPtr& complex_ptr() const { return complex_; }
  const ChainComplex& complex() const { return *complex_; }
  const Matrix& at(int i) const { return maps_.at(static_cast<std::size_t>(i - complex_->lo())); }
  /// Empty matrix of the right shape outside the window.
  Matrix map(int i) const {
    if (complex_->in_window(i)) return at(i);
    return Matrix::zero(complex_->field(), complex_->dim(i + Shift), complex_->dim(i));
  }
  const std::vector<Matrix>& maps() const { return maps_; }

  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return *a.complex_ == *b.complex_ && a.maps_ == b.maps_;
  }

 private:
  ComplexPtr complex_;
  std::vector<Matrix> maps_;
};

/// The chain-map condition is not enforced on construction; use
/// validate_chain_map.
using ChainEndomorphism = GradedMap<0>;
using Homotopy = GradedMap<-1>;

ChainEndomorphism identity_endomorphism(const ComplexPtr& c);

std::vector<Violation> validate_chain_map(const ChainEndomorphism& phi);

struct Cohomology {
  std::size_t dim;
  Matrix cocycle_basis;   // representatives of a basis of H^i, dims(i) x dim
  Matrix boundary_basis;  // basis of B_i = im d_{i-1}
};

Cohomology cohomology(const ChainComplex& c, int i);

/// Matrix of phi on the basis of H^i chosen by cohomology(): each
/// representative is pushed through phi_i and re-expressed modulo B_i.
Matrix induced_cohomology_map(const ChainEndomorphism& phi, int i);

/// Coordinates of the class of each column of `cocycles` in the basis
/// `representatives` of H^i (modulo `boundaries`). Throws std::logic_error if
/// some column is not a cocycle in the span.
Matrix cohomology_coordinates(const Matrix& cocycles, const Matrix& boundaries, const Matrix& representatives);

struct Stretch {
  int start;
  int end;
  friend bool operator==(const Stretch&, const Stretch&) = default;
};

/// Maximal runs [start, end] inside the window along which every d_i with
/// start <= i < end is nonzero; d_{start-1} and d_end are zero. Singletons
/// are included.
std::vector<Stretch> stretches(const ChainComplex& c);

/// A complex is quasi-bounded when some differential is the zero map.
/// `degree` is a witness index, searched from lo - 1 upward.
struct QuasiBoundedness {
  bool holds;
  int degree;
};
QuasiBoundedness quasi_boundedness(const ChainComplex& c);

struct StretchTrace {
  Stretch stretch;
  Scalar trace;             // sum of (-1)^i tr(phi_i)
  Scalar cohomology_trace;  // sum of (-1)^i tr(phi^H_i)
};

struct TraceReport {
  int lo;
  std::vector<Scalar> traces;             // tr_i, i = lo..hi
  std::vector<Scalar> cohomology_traces;  // tr_i^H
  std::vector<StretchTrace> stretch_traces;
  bool quasi_bounded;
  // Part (b) conditions of the four characterizations.
  bool pointwise_traceless;        // tr_i = 0 for all i
  bool commutator_condition;       // tr_i = tr_i^H = 0 for all i
  bool cohomology_traceless;       // tr_i^H = 0 for all i
  bool stretch_sums_vanish;        // tr_S = 0 for every stretch

  const Scalar& trace(int i) const { return traces.at(static_cast<std::size_t>(i - lo)); }
  const Scalar& cohomology_trace(int i) const { return cohomology_traces.at(static_cast<std::size_t>(i - lo)); }
};

TraceReport trace_report(const ChainEndomorphism& phi);

/// d_{i-1} S_i + S_{i+1} d_i at every degree; always a chain map.
ChainEndomorphism homotopy_boundary(const Homotopy& s);

// Endomorphism algebra. Operands must live on equal complexes
// (std::invalid_argument otherwise).
ChainEndomorphism operator+(const ChainEndomorphism& a, const ChainEndomorphism& b);
ChainEndomorphism operator-(const ChainEndomorphism& a, const ChainEndomorphism& b);
ChainEndomorphism compose(const ChainEndomorphism& a, const ChainEndomorphism& b);
ChainEndomorphism scale(const ChainEndomorphism& a, const Scalar& c);
/// a o b - b o a; asserted to be a chain map whenever a and b are.
ChainEndomorphism commutator(const ChainEndomorphism& a, const ChainEndomorphism& b);

}  // namespace chaincomm
