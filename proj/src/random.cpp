#include "chaincomm/random.hpp"

#include <limits>

#include "chaincomm/linalg.hpp"
#include "chaincomm/splitting.hpp"

namespace chaincomm {

std::uint64_t Rng::below(std::uint64_t n) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  const auto limit = max - max % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Scalar random_scalar(Rng& rng, const FieldSpec& f) {
  if (f.is_finite()) return Scalar::from_int(f, static_cast<std::int64_t>(rng.below(f.modulus())));
  return Scalar::from_int(f, rng.between(-3, 3));
}

Matrix random_matrix(Rng& rng, const FieldSpec& f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar(rng, f);
  return m;
}

Matrix random_invertible(Rng& rng, const FieldSpec& f, std::size_t n) {
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        m(r, c) = f.is_finite() ? random_scalar(rng, f) : Scalar::from_int(f, rng.between(-2, 2));
    if (is_invertible(m)) return m;
  }
}

ComplexPtr random_complex(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t length, int lo) {
  if (length == 0) throw std::invalid_argument("random_complex: empty window");
  // b[k] = rank of d_{lo+k-1}; b[0] = b[length] = 0.
  std::vector<std::size_t> b(length + 1, 0), h(length, 0), dims(length, 0);
  for (std::size_t k = 0; k < length; ++k) {
    const auto room = max_dim - b[k];
    b[k + 1] = k + 1 < length ? rng.below(room + 1) : 0;
    h[k] = rng.below(room - b[k + 1] + 1);
    dims[k] = b[k] + h[k] + b[k + 1];
  }
  std::vector<Matrix> bases;
  for (auto d : dims) bases.push_back(random_invertible(rng, f, d));
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k + 1 < length; ++k) {
    Matrix std_form(f, dims[k + 1], dims[k]);
    for (std::size_t r = 0; r < b[k + 1]; ++r) std_form(r, dims[k] - b[k + 1] + r) = Scalar::one(f);
    diffs.push_back(bases[k + 1] * std_form * *inverse(bases[k]));
  }
  return std::make_shared<const ChainComplex>(f, lo, std::move(dims), std::move(diffs));
}

namespace {

BlockData random_blocks(Rng& rng, const Splitting& s) {
  const auto& c = s.complex();
  const auto& f = c.field();
  BlockData out{c.lo(), {}};
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& sd = s.at(i);
    const auto b = sd.boundary_dim, h = sd.cohomology_dim, n = sd.next_boundary_dim;
    out.degrees.push_back({random_matrix(rng, f, b, b), random_matrix(rng, f, h, h), random_matrix(rng, f, b, h),
                           random_matrix(rng, f, b, n), random_matrix(rng, f, h, n)});
  }
  return out;
}

void subtract_at_origin(Matrix& m, const Scalar& t) { m(0, 0) -= t; }

}  // namespace

ChainEndomorphism random_chain_map(Rng& rng, const ComplexPtr& c) {
  const auto s = split_complex(c);
  return assemble(random_blocks(rng, s), s);
}

ChainEndomorphism random_pointwise_traceless(Rng& rng, const ComplexPtr& c) {
  const auto s = split_complex(c);
  auto blocks = random_blocks(rng, s);
  const auto degree_trace = [&](int i) {
    auto t = blocks.at(i).boundary.trace() + blocks.at(i).cohomology.trace();
    if (c->in_window(i + 1)) t += blocks.at(i + 1).boundary.trace();
    return t;
  };
  // Greedy: cancel tr phi_i on H_i if it is nonzero, else on B_{i+1}. When
  // neither exists, make every block traceless instead.
  bool stuck = false;
  for (int i = c->lo(); i <= c->hi() && !stuck; ++i) {
    const auto t = degree_trace(i);
    if (t.is_zero()) continue;
    if (s.at(i).cohomology_dim > 0)
      subtract_at_origin(blocks.at(i).cohomology, t);
    else if (s.at(i).next_boundary_dim > 0)
      subtract_at_origin(blocks.at(i + 1).boundary, t);
    else
      stuck = true;
  }
  if (stuck) {
    for (auto& db : blocks.degrees) {
      if (db.boundary.rows() > 0) subtract_at_origin(db.boundary, db.boundary.trace());
      if (db.cohomology.rows() > 0) subtract_at_origin(db.cohomology, db.cohomology.trace());
    }
  }
  for (int i = c->lo(); i <= c->hi(); ++i)
    if (!degree_trace(i).is_zero()) throw std::logic_error("random_pointwise_traceless left a nonzero trace");
  return assemble(blocks, s);
}

Homotopy random_homotopy(Rng& rng, const ComplexPtr& c) {
  std::vector<Matrix> maps;
  for (int i = c->lo(); i <= c->hi(); ++i) maps.push_back(random_matrix(rng, c->field(), c->dim(i - 1), c->dim(i)));
  return Homotopy(c, std::move(maps));
}

ChainEndomorphism random_endomorphism(Rng& rng, const ComplexPtr& c, Ensure ensure) {
  switch (ensure) {
    case Ensure::None: return random_chain_map(rng, c);
    case Ensure::Theorem1: return random_pointwise_traceless(rng, c);
    case Ensure::Theorem2: {
      auto a = random_chain_map(rng, c);
      auto b = random_chain_map(rng, c);
      return commutator(a, b);
    }
    case Ensure::Theorem3: {
      auto a = random_chain_map(rng, c);
      auto b = random_chain_map(rng, c);
      auto comm = commutator(a, b);
      return comm + homotopy_boundary(random_homotopy(rng, c));
    }
    case Ensure::Theorem4: {
      auto base = random_pointwise_traceless(rng, c);
      return base + homotopy_boundary(random_homotopy(rng, c));
    }
  }
  throw std::invalid_argument("unknown Ensure value");
}

}  // namespace chaincomm
