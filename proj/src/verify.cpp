#include "chaincomm/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "chaincomm/linalg.hpp"

namespace chaincomm {

namespace {

std::string deg(const char* what, int i) { return std::string(what) + " degree " + std::to_string(i); }

bool shape_matches(const Matrix& m, std::size_t rows, std::size_t cols, const FieldSpec& f) {
  return m.rows() == rows && m.cols() == cols && m.field() == f;
}

// Checks that `maps` is a chain endomorphism of c, in c's own differentials.
void check_chain_map(const ChainComplex& c, const std::vector<Matrix>& maps, const char* what, VerificationResult& r) {
  if (maps.size() != c.dims().size()) {
    r.fail({what, "one map per degree", std::to_string(maps.size()), std::to_string(c.dims().size())});
    return;
  }
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& m = maps[static_cast<std::size_t>(i - c.lo())];
    if (!shape_matches(m, c.dim(i), c.dim(i), c.field())) {
      r.fail({deg(what, i), "shape", std::to_string(m.rows()) + "x" + std::to_string(m.cols()),
              std::to_string(c.dim(i)) + "x" + std::to_string(c.dim(i))});
      return;
    }
  }
  for (int i = c.lo(); i < c.hi(); ++i) {
    const auto d = c.differential(i);
    const auto lhs = maps[static_cast<std::size_t>(i + 1 - c.lo())] * d;
    const auto rhs = d * maps[static_cast<std::size_t>(i - c.lo())];
    if (!(lhs == rhs)) r.fail({deg(what, i), "f_{i+1} d_i = d_i f_i", lhs.to_string(), rhs.to_string()});
  }
}

bool same_complex(const ChainComplex& a, const ChainComplex& b) { return &a == &b || a == b; }

// phi_i - (d_{i-1} S_i + S_{i+1} d_i), recomputed from scratch.
std::vector<Matrix> homotopy_remainder(const ChainEndomorphism& phi, const Homotopy& s) {
  const auto& c = phi.complex();
  const auto& f = c.field();
  const auto s_at = [&](int i) {
    if (c.in_window(i)) return s.maps()[static_cast<std::size_t>(i - c.lo())];
    return Matrix::zero(f, c.dim(i - 1), c.dim(i));
  };
  std::vector<Matrix> out;
  for (int i = c.lo(); i <= c.hi(); ++i)
    out.push_back(phi.maps()[static_cast<std::size_t>(i - c.lo())] - c.differential(i - 1) * s_at(i) -
                  s_at(i + 1) * c.differential(i));
  return out;
}

void check_commutator_equals(const ChainComplex& c, const std::vector<Matrix>& target, const std::vector<Matrix>& a,
                             const std::vector<Matrix>& b, const char* what, VerificationResult& r) {
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto k = static_cast<std::size_t>(i - c.lo());
    if (!shape_matches(a[k], c.dim(i), c.dim(i), c.field()) || !shape_matches(b[k], c.dim(i), c.dim(i), c.field())) {
      r.fail({deg(what, i), "shape", "", ""});
      continue;
    }
    const auto lhs = a[k] * b[k] - b[k] * a[k];
    if (!(lhs == target[k])) r.fail({deg(what, i), "a b - b a = target", lhs.to_string(), target[k].to_string()});
  }
}

}  // namespace

VerificationResult verify_commutator(const ChainEndomorphism& phi, const CommutatorWitness& w) {
  VerificationResult r;
  const auto& c = phi.complex();
  if (!same_complex(c, w.alpha.complex()) || !same_complex(c, w.beta.complex())) {
    r.fail({"witness", "same complex", "", ""});
    return r;
  }
  check_chain_map(c, w.alpha.maps(), "alpha", r);
  check_chain_map(c, w.beta.maps(), "beta", r);
  if (!r.ok) return r;
  check_commutator_equals(c, phi.maps(), w.alpha.maps(), w.beta.maps(), "commutator", r);
  return r;
}

VerificationResult verify_pointwise(const ChainEndomorphism& phi, const PointwiseWitness& w) {
  VerificationResult r;
  const auto& c = phi.complex();
  if (w.lo != c.lo() || w.pairs.size() != c.dims().size()) {
    r.fail({"witness", "one pair per degree", std::to_string(w.pairs.size()), std::to_string(c.dims().size())});
    return r;
  }
  std::vector<Matrix> a, b;
  for (const auto& pr : w.pairs) {
    a.push_back(pr.p);
    b.push_back(pr.q);
  }
  check_commutator_equals(c, phi.maps(), a, b, "pointwise", r);
  return r;
}

VerificationResult verify_homotopy_witness(const ChainEndomorphism& phi, const HomotopyWitness& w) {
  VerificationResult r;
  const auto& c = phi.complex();
  if (!same_complex(c, w.homotopy.complex())) {
    r.fail({"homotopy", "same complex", "", ""});
    return r;
  }
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& s = w.homotopy.maps()[static_cast<std::size_t>(i - c.lo())];
    if (!shape_matches(s, c.dim(i - 1), c.dim(i), c.field())) {
      r.fail({deg("homotopy", i), "shape", "", ""});
      return r;
    }
  }
  const auto remainder = homotopy_remainder(phi, w.homotopy);
  const auto remainder_map = ChainEndomorphism(phi.complex_ptr(), remainder);
  if (const auto* cw = std::get_if<CommutatorWitness>(&w.residual)) {
    auto sub = verify_commutator(remainder_map, *cw);
    for (auto& v : sub.violations) r.fail(std::move(v));
  } else {
    auto sub = verify_pointwise(remainder_map, std::get<PointwiseWitness>(w.residual));
    for (auto& v : sub.violations) r.fail(std::move(v));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exhaustive commutator tables over tiny fields.

namespace {

struct PairTable {
  std::uint32_t p;
  std::size_t n;
  std::uint64_t count;
  std::vector<std::vector<std::uint8_t>> entries;  // decoded matrices, index order
  std::vector<std::int64_t> first_p, first_q;      // per target index, -1 if unreached
};

std::vector<std::uint8_t> decode(std::uint64_t index, std::uint32_t p, std::size_t len) {
  std::vector<std::uint8_t> e(len);
  for (std::size_t k = len; k-- > 0;) {
    e[k] = static_cast<std::uint8_t>(index % p);
    index /= p;
  }
  return e;
}

std::uint64_t encode(const std::vector<std::uint8_t>& e, std::uint32_t p) {
  std::uint64_t index = 0;
  for (auto v : e) index = index * p + v;
  return index;
}

std::unique_ptr<PairTable> build_table(std::uint32_t p, std::size_t n) {
  auto t = std::make_unique<PairTable>();
  t->p = p;
  t->n = n;
  t->count = 1;
  for (std::size_t k = 0; k < n * n; ++k) t->count *= p;
  for (std::uint64_t k = 0; k < t->count; ++k) t->entries.push_back(decode(k, p, n * n));
  t->first_p.assign(t->count, -1);
  t->first_q.assign(t->count, -1);

  std::vector<std::uint8_t> comm(n * n);
  for (std::uint64_t a = 0; a < t->count; ++a) {
    const auto& x = t->entries[a];
    for (std::uint64_t b = 0; b < t->count; ++b) {
      const auto& y = t->entries[b];
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          std::uint32_t acc = 0;
          for (std::size_t k = 0; k < n; ++k)
            acc += x[r * n + k] * y[k * n + c] + (p - 1) * y[r * n + k] * x[k * n + c];
          comm[r * n + c] = static_cast<std::uint8_t>(acc % p);
        }
      const auto target = encode(comm, p);
      if (t->first_p[target] < 0) {
        t->first_p[target] = static_cast<std::int64_t>(a);
        t->first_q[target] = static_cast<std::int64_t>(b);
      }
    }
  }
  return t;
}

const PairTable& pair_table(std::uint32_t p, std::size_t n) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::size_t>, std::unique_ptr<PairTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, n}];
  if (!slot) slot = build_table(p, n);
  return *slot;
}

bool within_enumeration_bounds(const FieldSpec& f, std::size_t n) {
  if (!f.is_finite()) return false;
  switch (f.modulus()) {
    case 2: return n <= 3;
    case 3:
    case 5: return n <= 2;
    default: return false;
  }
}

Matrix to_matrix(const FieldSpec& f, std::size_t n, const std::vector<std::uint8_t>& e) {
  std::vector<Scalar> entries;
  for (auto v : e) entries.push_back(Scalar::from_int(f, v));
  return Matrix(f, n, n, std::move(entries));
}

std::vector<std::uint8_t> to_entries(const Matrix& m) {
  std::vector<std::uint8_t> e;
  for (const auto& s : m.entries()) e.push_back(static_cast<std::uint8_t>(s.residue_value()));
  return e;
}

}  // namespace

std::optional<std::pair<Matrix, Matrix>> brute_force_commutator(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("brute_force_commutator: non-square matrix");
  const auto& f = m.field();
  const auto n = m.rows();
  if (!within_enumeration_bounds(f, n))
    throw std::invalid_argument("brute_force_commutator: " + std::to_string(n) + "x" + std::to_string(n) + " over " +
                                f.to_string() + " is beyond the enumeration bounds");
  const auto p = static_cast<std::uint32_t>(f.modulus());
  const auto& t = pair_table(p, n);
  const auto target = encode(to_entries(m), p);
  if (t.first_p[target] < 0) return std::nullopt;
  return std::pair{to_matrix(f, n, t.entries[static_cast<std::size_t>(t.first_p[target])]),
                   to_matrix(f, n, t.entries[static_cast<std::size_t>(t.first_q[target])])};
}

// ---------------------------------------------------------------------------
// The F_2 counterexample.

namespace {

const FieldSpec& f2() {
  static const FieldSpec f = FieldSpec::prime(2);
  return f;
}

Matrix m2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return Matrix(f2(), {{a, b}, {c, d}}); }

bool same_set(std::vector<Matrix> a, std::vector<Matrix> b) {
  const auto key = [](const Matrix& m) { return m.to_string(); };
  const auto less = [&](const Matrix& x, const Matrix& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  return a == b;
}

}  // namespace

std::vector<Matrix> published_commutants_m() {
  return {m2(0, 0, 0, 1), m2(0, 0, 1, 0), m2(0, 0, 1, 1), m2(1, 0, 0, 0), m2(1, 0, 1, 0), m2(1, 0, 1, 1)};
}

std::vector<Matrix> published_commutants_n() {
  return {m2(0, 0, 0, 1), m2(0, 1, 0, 0), m2(0, 1, 0, 1), m2(1, 0, 0, 0), m2(1, 1, 0, 0), m2(1, 1, 0, 1)};
}

std::vector<std::pair<Matrix, Matrix>> published_admissible_pairs() {
  return {{m2(0, 0, 1, 0), m2(1, 1, 0, 1)}, {m2(1, 0, 1, 1), m2(0, 1, 0, 0)}};
}

std::vector<Matrix> published_q_candidates() {
  return {m2(0, 0, 0, 1), m2(0, 0, 1, 1), m2(1, 0, 0, 0), m2(1, 0, 1, 0)};
}

Example2Report example2_search() {
  const auto& f = f2();
  const auto m = m2(0, 0, 1, 0);
  const auto nn = m2(0, 1, 0, 0);
  const auto i2 = Matrix::identity(f, 2);
  const auto count = *matrix_count(f, 2, 2, 16);

  std::vector<Matrix> all;
  for (std::uint64_t k = 0; k < count; ++k) all.push_back(matrix_from_index(f, 2, 2, k));
  const auto solutions = [&](const Matrix& p, const Matrix& target) {
    std::vector<Matrix> qs;
    for (const auto& q : all)
      if (p * q - q * p == target) qs.push_back(q);
    return qs;
  };

  Example2Report rep;
  for (const auto& p : all) {
    if (!solutions(p, m).empty()) rep.commutants_m.push_back(p);
    if (!solutions(p, nn).empty()) rep.commutants_n.push_back(p);
  }

  for (const auto& p : rep.commutants_m)
    for (const auto& s : rep.commutants_n)
      if (is_invertible(kron(p, i2) - kron(i2, s.transpose()))) rep.admissible_pairs.emplace_back(p, s);

  std::vector<Matrix> q_union;
  for (const auto& [p, s] : rep.admissible_pairs) {
    if (std::any_of(rep.q_candidates.begin(), rep.q_candidates.end(), [&](const auto& e) { return e.first == p; }))
      continue;
    auto qs = solutions(p, m);
    for (const auto& q : qs)
      if (std::find(q_union.begin(), q_union.end(), q) == q_union.end()) q_union.push_back(q);
    rep.q_candidates.emplace_back(p, std::move(qs));
  }

  for (const auto& q1 : q_union)
    for (const auto& q2 : q_union) {
      ++rep.q_pair_trials;
      if (is_invertible(kron(q2, i2) - kron(i2, q1.transpose()))) ++rep.q_pair_successes;
    }

  bool matches = same_set(rep.commutants_m, published_commutants_m()) &&
                 same_set(rep.commutants_n, published_commutants_n()) && same_set(q_union, published_q_candidates()) &&
                 rep.q_pair_trials == 16 && rep.q_pair_successes == 0;
  const auto published = published_admissible_pairs();
  matches = matches && rep.admissible_pairs.size() == published.size();
  for (const auto& pr : published)
    matches = matches && std::any_of(rep.admissible_pairs.begin(), rep.admissible_pairs.end(), [&](const auto& e) {
                return e.first == pr.first && e.second == pr.second;
              });
  for (const auto& [p, qs] : rep.q_candidates) matches = matches && same_set(qs, published_q_candidates());
  rep.matches_published = matches;
  return rep;
}

// ---------------------------------------------------------------------------
// Chain-map space search.

std::vector<ChainEndomorphism> chain_map_basis(const ComplexPtr& c) {
  const auto& f = c->field();
  std::vector<std::size_t> offsets;
  std::size_t vars = 0;
  for (int i = c->lo(); i <= c->hi(); ++i) {
    offsets.push_back(vars);
    vars += c->dim(i) * c->dim(i);
  }
  const auto maps_from = [&](const Matrix& column) {
    std::vector<Matrix> maps;
    for (int i = c->lo(); i <= c->hi(); ++i) {
      const auto n = c->dim(i);
      const auto off = offsets[static_cast<std::size_t>(i - c->lo())];
      std::vector<Scalar> e;
      for (std::size_t k = 0; k < n * n; ++k) e.push_back(column(off + k, 0));
      maps.emplace_back(f, n, n, std::move(e));
    }
    return maps;
  };

  // Constraint matrix: column v holds the entries of f_{i+1} d_i - d_i f_i for
  // the v-th unit variable.
  std::size_t constraint_rows = 0;
  for (int i = c->lo(); i < c->hi(); ++i) constraint_rows += c->dim(i + 1) * c->dim(i);
  Matrix constraints(f, constraint_rows, vars);
  for (std::size_t v = 0; v < vars; ++v) {
    Matrix unit(f, vars, 1);
    unit(v, 0) = Scalar::one(f);
    const auto maps = maps_from(unit);
    std::size_t row = 0;
    for (int i = c->lo(); i < c->hi(); ++i) {
      const auto d = c->differential(i);
      const auto defect = maps[static_cast<std::size_t>(i + 1 - c->lo())] * d - d * maps[static_cast<std::size_t>(i - c->lo())];
      for (const auto& e : defect.entries()) constraints(row++, v) = e;
    }
  }
  const auto kernel = kernel_basis(constraints);
  std::vector<ChainEndomorphism> basis;
  for (std::size_t k = 0; k < kernel.cols(); ++k) basis.emplace_back(c, maps_from(kernel.column(k)));
  return basis;
}

std::optional<CommutatorWitness> brute_force_chain_commutator(const ChainEndomorphism& phi) {
  const auto& c = phi.complex();
  const auto& f = c.field();
  if (!f.is_finite()) throw std::invalid_argument("brute_force_chain_commutator: needs a finite field");
  std::size_t total = 0;
  for (auto d : c.dims()) total += d;
  if (total > 6) throw std::invalid_argument("brute_force_chain_commutator: total dimension exceeds 6");

  const auto basis = chain_map_basis(phi.complex_ptr());
  const auto r = basis.size();
  const auto alphas = matrix_count(f, r, 1, 1u << 16);
  if (!alphas) throw std::invalid_argument("brute_force_chain_commutator: chain-map space too large to enumerate");

  const auto flatten = [&](const std::vector<Matrix>& maps) {
    std::vector<Scalar> e;
    for (const auto& m : maps)
      for (const auto& s : m.entries()) e.push_back(s);
    return e;
  };
  const auto target_entries = flatten(phi.maps());
  const Matrix target(f, target_entries.size(), 1, target_entries);

  for (std::uint64_t idx = 0; idx < *alphas; ++idx) {
    const auto coeffs = matrix_from_index(f, r, 1, idx);
    auto alpha = ChainEndomorphism::zero(phi.complex_ptr());
    for (std::size_t j = 0; j < r; ++j)
      if (!coeffs(j, 0).is_zero()) {
        std::vector<Matrix> maps;
        for (std::size_t k = 0; k < alpha.maps().size(); ++k)
          maps.push_back(alpha.maps()[k] + basis[j].maps()[k] * coeffs(j, 0));
        alpha = ChainEndomorphism(phi.complex_ptr(), std::move(maps));
      }
    // [alpha, beta] is linear in beta's coordinates on the basis.
    Matrix system(f, target_entries.size(), r);
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<Matrix> comm;
      for (std::size_t k = 0; k < alpha.maps().size(); ++k)
        comm.push_back(alpha.maps()[k] * basis[j].maps()[k] - basis[j].maps()[k] * alpha.maps()[k]);
      const auto col = flatten(comm);
      for (std::size_t row = 0; row < col.size(); ++row) system(row, j) = col[row];
    }
    const auto y = solve_linear(system, target);
    if (!y) continue;
    auto beta = ChainEndomorphism::zero(phi.complex_ptr());
    for (std::size_t j = 0; j < r; ++j)
      if (!(*y)(j, 0).is_zero()) {
        std::vector<Matrix> maps;
        for (std::size_t k = 0; k < beta.maps().size(); ++k)
          maps.push_back(beta.maps()[k] + basis[j].maps()[k] * (*y)(j, 0));
        beta = ChainEndomorphism(phi.complex_ptr(), std::move(maps));
      }
    return CommutatorWitness{std::move(alpha), std::move(beta)};
  }
  return std::nullopt;
}

}  // namespace chaincomm
