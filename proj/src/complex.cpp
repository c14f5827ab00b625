#include "chaincomm/complex.hpp"

#include <stdexcept>

#include "chaincomm/linalg.hpp"

namespace chaincomm {

ChainComplex::ChainComplex(FieldSpec field, int lo, std::vector<std::size_t> dims, std::vector<Matrix> differentials)
    : field_(field), lo_(lo), dims_(std::move(dims)), diffs_(std::move(differentials)) {
  if (dims_.empty()) throw std::invalid_argument("complex window must contain at least one degree");
  if (diffs_.size() != dims_.size() - 1)
    throw std::invalid_argument("expected " + std::to_string(dims_.size() - 1) + " differentials, got " +
                                std::to_string(diffs_.size()));
  for (int i = lo_; i < hi(); ++i) {
    const auto& d = diffs_[static_cast<std::size_t>(i - lo_)];
    if (d.field() != field_ || d.rows() != dim(i + 1) || d.cols() != dim(i))
      throw std::invalid_argument("differential d_" + std::to_string(i) + " must be " + std::to_string(dim(i + 1)) +
                                  "x" + std::to_string(dim(i)));
  }
}

std::size_t ChainComplex::dim(int i) const {
  return in_window(i) ? dims_[static_cast<std::size_t>(i - lo_)] : 0;
}

Matrix ChainComplex::differential(int i) const {
  if (i >= lo_ && i < hi()) return diffs_[static_cast<std::size_t>(i - lo_)];
  return Matrix::zero(field_, dim(i + 1), dim(i));
}

std::vector<Violation> validate_complex(const ChainComplex& c) {
  std::vector<Violation> out;
  for (int i = c.lo(); i + 1 < c.hi(); ++i) {
    const auto composite = c.differential(i + 1) * c.differential(i);
    if (!composite.is_zero())
      out.push_back({i, "d_{i+1} d_i = 0", "d_" + std::to_string(i + 1) + " d_" + std::to_string(i) + " = " +
                                               composite.to_string()});
  }
  return out;
}

ChainEndomorphism identity_endomorphism(const ComplexPtr& c) {
  std::vector<Matrix> maps;
  for (int i = c->lo(); i <= c->hi(); ++i) maps.push_back(Matrix::identity(c->field(), c->dim(i)));
  return ChainEndomorphism(c, std::move(maps));
}

std::vector<Violation> validate_chain_map(const ChainEndomorphism& phi) {
  const auto& c = phi.complex();
  std::vector<Violation> out;
  for (int i = c.lo(); i < c.hi(); ++i) {
    const auto d = c.differential(i);
    const auto lhs = phi.at(i + 1) * d;
    const auto rhs = d * phi.at(i);
    if (!(lhs == rhs))
      out.push_back({i, "phi_{i+1} d_i = d_i phi_i", lhs.to_string() + " != " + rhs.to_string()});
  }
  return out;
}

Cohomology cohomology(const ChainComplex& c, int i) {
  auto boundaries = image_basis(c.differential(i - 1));
  auto cocycles = kernel_basis(c.differential(i));
  auto reps = complement_basis(boundaries, cocycles);
  return {reps.cols(), std::move(reps), std::move(boundaries)};
}

Matrix cohomology_coordinates(const Matrix& cocycles, const Matrix& boundaries, const Matrix& representatives) {
  const auto& f = cocycles.field();
  const auto basis = hstack({boundaries, representatives}, f, cocycles.rows());
  const auto x = solve_linear(basis, cocycles);
  if (!x) throw std::logic_error("cohomology_coordinates: vector is not a cocycle");
  return x->block(boundaries.cols(), 0, representatives.cols(), cocycles.cols());
}

Matrix induced_cohomology_map(const ChainEndomorphism& phi, int i) {
  const auto h = cohomology(phi.complex(), i);
  return cohomology_coordinates(phi.map(i) * h.cocycle_basis, h.boundary_basis, h.cocycle_basis);
}

std::vector<Stretch> stretches(const ChainComplex& c) {
  std::vector<Stretch> out;
  int start = c.lo();
  while (start <= c.hi()) {
    int end = start;
    while (end < c.hi() && !c.differential(end).is_zero()) ++end;
    out.push_back({start, end});
    start = end + 1;
  }
  return out;
}

QuasiBoundedness quasi_boundedness(const ChainComplex& c) {
  // Outside the window every differential is an empty matrix, so the
  // search terminates at hi at the latest.
  for (int i = c.lo() - 1; i <= c.hi(); ++i)
    if (c.differential(i).is_zero()) return {true, i};
  return {false, 0};
}

TraceReport trace_report(const ChainEndomorphism& phi) {
  const auto& c = phi.complex();
  const auto& f = c.field();
  TraceReport r{c.lo(), {}, {}, {}, quasi_boundedness(c).holds, true, true, true, true};
  for (int i = c.lo(); i <= c.hi(); ++i) {
    r.traces.push_back(phi.at(i).trace());
    r.cohomology_traces.push_back(induced_cohomology_map(phi, i).trace());
    r.pointwise_traceless = r.pointwise_traceless && r.traces.back().is_zero();
    r.cohomology_traceless = r.cohomology_traceless && r.cohomology_traces.back().is_zero();
  }
  r.commutator_condition = r.pointwise_traceless && r.cohomology_traceless;
  for (const auto& s : stretches(c)) {
    Scalar t = Scalar::zero(f), th = Scalar::zero(f);
    for (int i = s.start; i <= s.end; ++i) {
      if (i % 2 == 0) {
        t += r.trace(i);
        th += r.cohomology_trace(i);
      } else {
        t -= r.trace(i);
        th -= r.cohomology_trace(i);
      }
    }
    r.stretch_sums_vanish = r.stretch_sums_vanish && t.is_zero();
    r.stretch_traces.push_back({s, std::move(t), std::move(th)});
  }
  return r;
}

ChainEndomorphism homotopy_boundary(const Homotopy& s) {
  const auto& c = s.complex();
  std::vector<Matrix> maps;
  for (int i = c.lo(); i <= c.hi(); ++i)
    maps.push_back(c.differential(i - 1) * s.map(i) + s.map(i + 1) * c.differential(i));
  ChainEndomorphism out(s.complex_ptr(), std::move(maps));
  if (validate_complex(c).empty() && !validate_chain_map(out).empty())
    throw std::logic_error("homotopy boundary failed the chain-map condition");
  return out;
}

namespace {

void require_same_complex(const ChainEndomorphism& a, const ChainEndomorphism& b) {
  if (a.complex_ptr() != b.complex_ptr() && !(a.complex() == b.complex()))
    throw std::invalid_argument("endomorphisms of different complexes");
}

template <class Op>
ChainEndomorphism degreewise(const ChainEndomorphism& a, const ChainEndomorphism& b, Op op) {
  require_same_complex(a, b);
  std::vector<Matrix> maps;
  for (std::size_t k = 0; k < a.maps().size(); ++k) maps.push_back(op(a.maps()[k], b.maps()[k]));
  return ChainEndomorphism(a.complex_ptr(), std::move(maps));
}

}  // namespace

ChainEndomorphism operator+(const ChainEndomorphism& a, const ChainEndomorphism& b) {
  return degreewise(a, b, [](const Matrix& x, const Matrix& y) { return x + y; });
}

ChainEndomorphism operator-(const ChainEndomorphism& a, const ChainEndomorphism& b) {
  return degreewise(a, b, [](const Matrix& x, const Matrix& y) { return x - y; });
}

ChainEndomorphism compose(const ChainEndomorphism& a, const ChainEndomorphism& b) {
  return degreewise(a, b, [](const Matrix& x, const Matrix& y) { return x * y; });
}

ChainEndomorphism scale(const ChainEndomorphism& a, const Scalar& c) {
  std::vector<Matrix> maps;
  for (const auto& m : a.maps()) maps.push_back(m * c);
  return ChainEndomorphism(a.complex_ptr(), std::move(maps));
}

ChainEndomorphism commutator(const ChainEndomorphism& a, const ChainEndomorphism& b) {
  auto out = degreewise(a, b, [](const Matrix& x, const Matrix& y) { return commutator(x, y); });
  if (validate_chain_map(a).empty() && validate_chain_map(b).empty() && !validate_chain_map(out).empty())
    throw std::logic_error("commutator of chain maps failed the chain-map condition");
  return out;
}

}  // namespace chaincomm
