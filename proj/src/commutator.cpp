#include "chaincomm/commutator.hpp"

#include <algorithm>
#include <optional>

#include "chaincomm/linalg.hpp"

namespace chaincomm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TraceObstruction: return "TraceObstruction";
    case ErrorCode::StretchObstruction: return "StretchObstruction";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::SelectionExhausted: return "SelectionExhausted";
    case ErrorCode::FiniteFieldUnsupported: return "FiniteFieldUnsupported";
    case ErrorCode::InconsistentTrace: return "InconsistentTrace";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kSearchLimit = 1u << 16;
constexpr std::uint64_t kVectorCandidateLimit = 1u << 12;

std::size_t field_capacity(const FieldSpec& f, std::size_t wanted) {
  return f.is_finite() ? static_cast<std::size_t>(std::min<std::uint64_t>(f.modulus(), wanted)) : wanted;
}

Matrix unit_vector(const FieldSpec& f, std::size_t n, std::size_t k) {
  Matrix v(f, n, 1);
  v(k, 0) = Scalar::one(f);
  return v;
}

// Candidate first basis vectors for the zero-diagonal reduction: e_k, then
// e_i + e_j, then (small finite fields) every nonzero vector.
std::vector<Matrix> reduction_candidates(const FieldSpec& f, std::size_t n) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(unit_vector(f, n, k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(unit_vector(f, n, i) + unit_vector(f, n, j));
  if (auto count = matrix_count(f, n, 1, kVectorCandidateLimit))
    for (std::uint64_t idx = 1; idx < *count; ++idx) out.push_back(matrix_from_index(f, n, 1, idx));
  return out;
}

// Invertible P with P^{-1} m P of zero diagonal, for traceless m.
std::optional<Matrix> zero_diagonal_basis(const Matrix& m) {
  const auto& f = m.field();
  const auto n = m.rows();
  if (m.is_zero()) return Matrix::identity(f, n);
  if (m.is_scalar()) return std::nullopt;  // nonzero traceless scalar: no such basis

  const auto standard = Matrix::identity(f, n);
  for (const auto& v : reduction_candidates(f, n)) {
    const auto w = m * v;
    const auto pair = hstack({v, w}, f, n);
    if (rank(pair) < 2) continue;
    const auto basis = hstack({pair, complement_basis(pair, standard)}, f, n);
    const auto conj = *inverse(basis) * m * basis;  // column 0 is e_1, so entry (0,0) vanishes
    auto inner = zero_diagonal_basis(conj.block(1, 1, n - 1, n - 1));
    if (!inner) continue;
    return basis * direct_sum({Matrix::identity(f, 1), *inner}, f);
  }
  return std::nullopt;
}

std::optional<CommutatorPair> distinct_diagonal_pair(const Matrix& m) {
  const auto& f = m.field();
  const auto n = m.rows();
  if (field_capacity(f, n) < n) return std::nullopt;
  const auto basis = zero_diagonal_basis(m);
  if (!basis) return std::nullopt;
  const auto basis_inv = *inverse(*basis);
  const auto zd = basis_inv * m * *basis;

  Matrix p(f, n, n), q(f, n, n);
  for (std::size_t j = 0; j < n; ++j) p(j, j) = Scalar::from_int(f, static_cast<std::int64_t>(j));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k) q(j, k) = zd(j, k) / (p(j, j) - p(k, k));
  return CommutatorPair{*basis * p * basis_inv, *basis * q * basis_inv};
}

// First p in lexicographic order for which [p, q] = m is solvable in q.
std::optional<CommutatorPair> searched_pair(const Matrix& m) {
  const auto& f = m.field();
  const auto n = m.rows();
  const auto count = matrix_count(f, n, n, kSearchLimit);
  if (!count) return std::nullopt;
  const auto rhs = vectorize(m);
  for (std::uint64_t idx = 0; idx < *count; ++idx) {
    auto p = matrix_from_index(f, n, n, idx);
    if (auto q = solve_linear(sylvester_operator(p, p), rhs)) return CommutatorPair{std::move(p), unvectorize(*q, n, n)};
  }
  return std::nullopt;
}

Matrix shifted(const Matrix& m, const Scalar& lambda) {
  return m + Matrix::scalar(m.field(), m.rows(), lambda);
}

Matrix entry_or_empty(std::span<const Matrix> v, std::size_t i, const FieldSpec& f) {
  return i < v.size() ? v[i] : Matrix::zero(f, 0, 0);
}

// Shift values tried by the selection scans: 0, 1, 2, ... over Q (bounded by
// `needed`, enough to dodge every eigenvalue), all residues over F_p.
std::vector<Scalar> shift_candidates(const FieldSpec& f, std::size_t needed) {
  const auto count = f.is_finite() ? f.modulus() : needed + 1;
  std::vector<Scalar> out;
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(Scalar::from_int(f, static_cast<std::int64_t>(k)));
  return out;
}

void require_traceless_degrees(const TraceReport& r, bool degreewise, bool cohomology) {
  for (std::size_t k = 0; k < r.traces.size(); ++k) {
    const int i = r.lo + static_cast<int>(k);
    if (degreewise && !r.traces[k].is_zero())
      throw ConstructionError(ErrorCode::TraceObstruction,
                              "tr(phi_" + std::to_string(i) + ") = " + r.traces[k].to_string() + " is nonzero", i,
                              std::nullopt, TraceKind::Degreewise);
    if (cohomology && !r.cohomology_traces[k].is_zero())
      throw ConstructionError(ErrorCode::TraceObstruction,
                              "tr(phi^H_" + std::to_string(i) + ") = " + r.cohomology_traces[k].to_string() +
                                  " is nonzero",
                              i, std::nullopt, TraceKind::Cohomology);
  }
}

std::vector<Scalar> degree_traces(const ChainEndomorphism& phi) {
  std::vector<Scalar> out;
  for (const auto& m : phi.maps()) out.push_back(m.trace());
  return out;
}

// Matrix on V_i that is `middle` on the H_i summand and zero elsewhere, in
// original coordinates.
Matrix cohomology_summand_map(const Splitting& s, int i, const Matrix& middle) {
  const auto& sd = s.at(i);
  const auto& f = s.complex().field();
  return s.from_split(i, direct_sum({Matrix::zero(f, sd.boundary_dim, sd.boundary_dim), middle,
                                     Matrix::zero(f, sd.next_boundary_dim, sd.next_boundary_dim)},
                                    f));
}

void require_chain_map(const ChainEndomorphism& m, const char* what) {
  if (!validate_chain_map(m).empty()) throw std::logic_error(std::string(what) + " is not a chain map");
}

}  // namespace

CommutatorPair am_commutator(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("am_commutator: non-square matrix");
  const auto& f = m.field();
  if (!m.trace().is_zero())
    throw ConstructionError(ErrorCode::TraceObstruction, "matrix has trace " + m.trace().to_string());
  const auto n = m.rows();
  if (m.is_zero()) return {Matrix::zero(f, n, n), Matrix::zero(f, n, n)};

  auto pair = distinct_diagonal_pair(m);
  if (!pair) pair = searched_pair(m);
  if (!pair)
    throw ConstructionError(ErrorCode::FieldTooSmall,
                            "no commutator construction for a " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrix over " + f.to_string());
  if (!(commutator(pair->p, pair->q) == m)) throw std::logic_error("am_commutator produced a wrong pair");
  return std::move(*pair);
}

std::vector<Matrix> commutants(const Matrix& m, const FieldSpec& field, std::size_t size) {
  if (!field.is_finite()) throw std::invalid_argument("commutants: enumeration needs a finite field");
  if (m.field() != field || m.rows() != size || m.cols() != size)
    throw std::invalid_argument("commutants: target shape or field mismatch");
  const auto count = matrix_count(field, size, size, 1u << 10);
  if (!count) throw std::invalid_argument("commutants: enumeration too large");
  std::vector<Matrix> all;
  for (std::uint64_t k = 0; k < *count; ++k) all.push_back(matrix_from_index(field, size, size, k));
  std::vector<Matrix> out;
  for (const auto& p : all)
    for (const auto& q : all)
      if (commutator(p, q) == m) {
        out.push_back(p);
        break;
      }
  return out;
}

LemmaAOutput lemma_a(std::span<const Matrix> ms, std::span<const Matrix> ns, const FieldSpec& field) {
  const auto len = std::max(ms.size(), ns.size());
  LemmaAOutput out;
  for (std::size_t i = 0; i < len; ++i) {
    auto [p, q] = am_commutator(entry_or_empty(ms, i, field));
    auto [s, t] = am_commutator(entry_or_empty(ns, i, field));
    out.p.push_back(std::move(p));
    out.q.push_back(std::move(q));
    out.s.push_back(std::move(s));
    out.t.push_back(std::move(t));
  }
  const auto p_at = [&](std::size_t i) { return i < len ? out.p[i] : Matrix::zero(field, 0, 0); };

  // s_i + lambda I keeps [s_i, t_i]; the two operators it enters lose
  // invertibility for at most dim-many lambdas each.
  for (std::size_t i = 0; i < len; ++i) {
    const auto next_p = p_at(i + 1);
    const auto n = out.s[i].rows();
    const auto needed = out.p[i].rows() * n + n * next_p.rows();
    bool found = false;
    for (const auto& lambda : shift_candidates(field, needed)) {
      auto s = shifted(out.s[i], lambda);
      if (is_invertible(sylvester_operator(out.p[i], s)) && is_invertible(sylvester_operator(s, next_p))) {
        out.s[i] = std::move(s);
        found = true;
        break;
      }
    }
    if (!found)
      throw ConstructionError(ErrorCode::SelectionExhausted,
                              "no shift of s_" + std::to_string(i) + " over " + field.to_string() +
                                  " makes both Sylvester operators invertible");
  }

  // Sweep upward: q_{i+1} + mu I keeps [p_{i+1}, q_{i+1}] and only enters the
  // (q_{i+1}, q_i) and (q_{i+2}, q_{i+1}) conditions; the latter is fixed later.
  for (std::size_t i = 0; i + 1 < len; ++i) {
    const auto needed = out.q[i + 1].rows() * out.q[i].rows();
    bool found = false;
    for (const auto& mu : shift_candidates(field, needed)) {
      auto q = shifted(out.q[i + 1], mu);
      if (is_invertible(sylvester_operator(q, out.q[i]))) {
        out.q[i + 1] = std::move(q);
        found = true;
        break;
      }
    }
    if (!found)
      throw ConstructionError(ErrorCode::SelectionExhausted,
                              "no shift of q_" + std::to_string(i + 1) + " over " + field.to_string() +
                                  " makes the (q_" + std::to_string(i + 1) + ", q_" + std::to_string(i) +
                                  ") operator invertible");
  }

  if (const auto failed = check_lemma_a(ms, ns, out); !failed.empty())
    throw std::logic_error("lemma_a selection failed its own check at " + failed.front());
  return out;
}

std::vector<std::string> check_lemma_a(std::span<const Matrix> ms, std::span<const Matrix> ns,
                                       const LemmaAOutput& out) {
  std::vector<std::string> failed;
  const auto len = out.p.size();
  if (out.q.size() != len || out.s.size() != len || out.t.size() != len || std::max(ms.size(), ns.size()) != len)
    return {"length"};
  const auto f = len ? out.p[0].field() : FieldSpec::rationals();
  const auto empty = Matrix::zero(f, 0, 0);
  for (std::size_t i = 0; i < len; ++i) {
    const auto tag = "[" + std::to_string(i) + "]";
    const auto& next_p = i + 1 < len ? out.p[i + 1] : empty;
    const auto& next_q = i + 1 < len ? out.q[i + 1] : empty;
    if (!(commutator(out.p[i], out.q[i]) == entry_or_empty(ms, i, f))) failed.push_back("A1" + tag);
    if (!(commutator(out.s[i], out.t[i]) == entry_or_empty(ns, i, f))) failed.push_back("A2" + tag);
    if (!is_invertible(sylvester_operator(out.p[i], out.s[i]))) failed.push_back("A3" + tag);
    if (!is_invertible(sylvester_operator(next_q, out.q[i]))) failed.push_back("A4" + tag);
    if (!is_invertible(sylvester_operator(out.s[i], next_p))) failed.push_back("A5" + tag);
  }
  return failed;
}

PointwiseWitness theorem1_witness(const ChainEndomorphism& phi) {
  const auto& c = phi.complex();
  PointwiseWitness w{c.lo(), {}};
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto tr = phi.at(i).trace();
    if (!tr.is_zero())
      throw ConstructionError(ErrorCode::TraceObstruction,
                              "tr(phi_" + std::to_string(i) + ") = " + tr.to_string() + " is nonzero", i, std::nullopt,
                              TraceKind::Degreewise);
    w.pairs.push_back(am_commutator(phi.at(i)));
  }
  return w;
}

CommutatorConstruction theorem2_construction(const ChainEndomorphism& phi) {
  const auto& c = phi.complex();
  const auto& f = c.field();
  if (f.is_finite())
    throw ConstructionError(ErrorCode::FiniteFieldUnsupported,
                            "the commutator construction needs an infinite field; " + f.to_string() + " is finite");
  if (!quasi_boundedness(c).holds) throw std::logic_error("finitely supported complex is not quasi-bounded");
  require_traceless_degrees(trace_report(phi), true, true);

  auto split = split_complex(phi.complex_ptr());
  auto blocks = extract_blocks(phi, split);

  // tr phi_i = tr phi^B_i + tr phi^H_i + tr phi^B_{i+1} with B_lo = 0 forces
  // every phi^B block to be traceless.
  std::vector<Matrix> ms, ns;
  for (const auto& db : blocks.degrees) {
    if (!db.boundary.trace().is_zero()) throw std::logic_error("boundary block with nonzero trace");
    ms.push_back(db.boundary);
    ns.push_back(db.cohomology);
  }
  auto sel = lemma_a(ms, ns, f);

  const auto len = ms.size();
  const auto empty = Matrix::zero(f, 0, 0);
  std::vector<Matrix> xs, ts, zs, alpha, beta;
  for (std::size_t k = 0; k < len; ++k) {
    const int i = c.lo() + static_cast<int>(k);
    const auto& db = blocks.degrees[k];
    const auto& p = sel.p[k];
    const auto& q = sel.q[k];
    const auto& s = sel.s[k];
    const auto& t = sel.t[k];
    const auto& p_next = k + 1 < len ? sel.p[k + 1] : empty;
    const auto& q_next = k + 1 < len ? sel.q[k + 1] : empty;

    auto x = sylvester_solve(p, s, db.g);
    auto tt = sylvester_solve(-q, -q_next, db.h);
    auto z = sylvester_solve(s, p_next, db.k);
    if (!x || !tt || !z) throw std::logic_error("Sylvester system unsolvable despite invertible operators");

    const auto b = p.rows(), h = s.rows(), n = p_next.rows();
    const Matrix a_parts[3][3] = {
        {p, Matrix::zero(f, b, h), *tt},
        {Matrix::zero(f, h, b), s, Matrix::zero(f, h, n)},
        {Matrix::zero(f, n, b), Matrix::zero(f, n, h), p_next},
    };
    const Matrix b_parts[3][3] = {
        {q, *x, Matrix::zero(f, b, n)},
        {Matrix::zero(f, h, b), t, *z},
        {Matrix::zero(f, n, b), Matrix::zero(f, n, h), q_next},
    };
    alpha.push_back(split.from_split(i, assemble_3x3(a_parts, f, b, h, n)));
    beta.push_back(split.from_split(i, assemble_3x3(b_parts, f, b, h, n)));
    xs.push_back(std::move(*x));
    ts.push_back(std::move(*tt));
    zs.push_back(std::move(*z));
  }

  CommutatorWitness w{ChainEndomorphism(phi.complex_ptr(), std::move(alpha)),
                      ChainEndomorphism(phi.complex_ptr(), std::move(beta))};
  require_chain_map(w.alpha, "alpha");
  require_chain_map(w.beta, "beta");
  if (!(commutator(w.alpha, w.beta) == phi)) throw std::logic_error("constructed commutator differs from phi");
  return {std::move(w), std::move(split), std::move(blocks), std::move(sel), std::move(xs), std::move(ts),
          std::move(zs)};
}

CommutatorWitness theorem2_witness(const ChainEndomorphism& phi) { return theorem2_construction(phi).witness; }

HomotopyWitness theorem3_witness(const ChainEndomorphism& phi) {
  const auto& c = phi.complex();
  const auto& f = c.field();
  require_traceless_degrees(trace_report(phi), false, true);

  const auto split = split_complex(phi.complex_ptr());
  const auto blocks = extract_blocks(phi, split);

  // S_i : B_i + H_i + C_i -> B_{i-1} + H_{i-1} + C_{i-1}, with C_{i-1} = B_i:
  //   [ 0         0    0   ]
  //   [ k_{i-1}   0    0   ]
  //   [ phi^B_i   g_i  h_i ]
  std::vector<Matrix> homotopy;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& db = blocks.at(i);
    const auto b_prev = split.boundary_dim(i - 1), h_prev = split.cohomology_dim(i - 1);
    const auto b = split.at(i).boundary_dim, h = split.at(i).cohomology_dim;
    Matrix s(f, c.dim(i - 1), c.dim(i));
    if (c.in_window(i - 1)) s.set_block(b_prev, 0, blocks.at(i - 1).k);
    s.set_block(b_prev + h_prev, 0, db.boundary);
    s.set_block(b_prev + h_prev, b, db.g);
    s.set_block(b_prev + h_prev, b + h, db.h);
    homotopy.push_back(split.homotopy_from_split(i, s));
  }
  Homotopy hs(phi.complex_ptr(), std::move(homotopy));
  const auto remainder = phi - homotopy_boundary(hs);

  std::vector<Matrix> alpha, beta;
  for (int i = c.lo(); i <= c.hi(); ++i) {
    const auto& cohom = blocks.at(i).cohomology;
    if (!(remainder.at(i) == cohomology_summand_map(split, i, cohom)))
      throw std::logic_error("homotopy remainder at degree " + std::to_string(i) + " is not cohomology-diagonal");
    auto [s, t] = am_commutator(cohom);
    alpha.push_back(cohomology_summand_map(split, i, s));
    beta.push_back(cohomology_summand_map(split, i, t));
  }
  CommutatorWitness residual{ChainEndomorphism(phi.complex_ptr(), std::move(alpha)),
                             ChainEndomorphism(phi.complex_ptr(), std::move(beta))};
  require_chain_map(residual.alpha, "residual alpha");
  require_chain_map(residual.beta, "residual beta");
  if (!(commutator(residual.alpha, residual.beta) == remainder))
    throw std::logic_error("residual commutator differs from the homotopy remainder");
  return {std::move(hs), std::move(residual)};
}

LemmaBResult lemma_b_tau(const ComplexPtr& c, std::span<const Scalar> targets) {
  const auto& f = c->field();
  if (targets.size() != c->dims().size()) throw std::invalid_argument("one target trace per window degree expected");
  const auto target = [&](int i) -> const Scalar& { return targets[static_cast<std::size_t>(i - c->lo())]; };

  for (const auto& st : stretches(*c)) {
    Scalar sum = Scalar::zero(f);
    for (int i = st.start; i <= st.end; ++i) sum += i % 2 == 0 ? target(i) : -target(i);
    if (!sum.is_zero())
      throw ConstructionError(ErrorCode::StretchObstruction,
                              "alternating trace sum over stretch [" + std::to_string(st.start) + ", " +
                                  std::to_string(st.end) + "] is " + sum.to_string(),
                              std::nullopt, st);
  }

  const auto split = split_complex(c);
  // S_i for i = lo .. hi+1, with T_i = S_i + S_{i+1}. B vanishes at every
  // stretch start, so each stretch restarts the recurrence from zero.
  std::vector<Scalar> s_values(c->dims().size() + 1, Scalar::zero(f));
  const auto s_at = [&](int i) -> Scalar& { return s_values[static_cast<std::size_t>(i - c->lo())]; };
  for (const auto& st : stretches(*c)) {
    if (!s_at(st.start).is_zero())
      throw ConstructionError(ErrorCode::InconsistentTrace,
                              "recurrence leaves " + s_at(st.start).to_string() + " at stretch start " +
                                  std::to_string(st.start),
                              st.start);
    for (int i = st.start; i <= st.end; ++i) s_at(i + 1) = target(i) - s_at(i);
  }
  for (int i = c->lo(); i <= c->hi() + 1; ++i)
    if (split.boundary_dim(i) == 0 && !s_at(i).is_zero())
      throw ConstructionError(ErrorCode::InconsistentTrace,
                              "propagated trace " + s_at(i).to_string() + " on the zero space B_" + std::to_string(i),
                              i);

  const auto boundary_part = [&](int i) {
    Matrix m(f, split.boundary_dim(i), split.boundary_dim(i));
    if (m.rows() > 0) m(0, 0) = s_at(i);
    return m;
  };

  std::vector<Matrix> tau, sigma;
  for (int i = c->lo(); i <= c->hi(); ++i) {
    const auto& sd = split.at(i);
    tau.push_back(split.from_split(
        i, direct_sum({boundary_part(i), Matrix::zero(f, sd.cohomology_dim, sd.cohomology_dim), boundary_part(i + 1)},
                      f)));
    Matrix s(f, c->dim(i - 1), c->dim(i));
    s.set_block(c->dim(i - 1) - sd.boundary_dim, 0, boundary_part(i));
    sigma.push_back(split.homotopy_from_split(i, s));
  }
  LemmaBResult out{ChainEndomorphism(c, std::move(tau)), Homotopy(c, std::move(sigma)), std::move(s_values)};
  if (!(homotopy_boundary(out.sigma) == out.tau)) throw std::logic_error("lemma_b_tau: tau is not d sigma + sigma d");
  for (int i = c->lo(); i <= c->hi(); ++i)
    if (!(out.tau.at(i).trace() == target(i)))
      throw ConstructionError(ErrorCode::InconsistentTrace, "tau misses its target trace at degree " + std::to_string(i),
                              i);
  return out;
}

HomotopyWitness theorem4_witness(const ChainEndomorphism& phi) {
  const auto traces = degree_traces(phi);
  auto lb = lemma_b_tau(phi.complex_ptr(), traces);
  const auto remainder = phi - lb.tau;
  PointwiseWitness pw = [&] {
    try {
      return theorem1_witness(remainder);
    } catch (const ConstructionError& e) {
      if (e.code() == ErrorCode::TraceObstruction) throw std::logic_error("remainder after tau is not traceless");
      throw;
    }
  }();
  return {std::move(lb.sigma), std::move(pw)};
}

Analysis analyze(const ChainEndomorphism& phi) {
  auto report = trace_report(phi);
  const bool infinite = !phi.complex().field().is_finite();
  Analysis a{std::move(report), {}};
  const auto& r = a.report;
  a.verdicts[0] = {1, r.pointwise_traceless, r.pointwise_traceless, "pointwise commutator iff every tr_i vanishes"};
  const bool t2 = r.commutator_condition && r.quasi_bounded;
  a.verdicts[1] = {2, t2, t2 && infinite,
                   infinite ? "commutator iff tr_i = tr_i^H = 0 for all i"
                            : "condition evaluated; construction unavailable (needs an infinite field)"};
  a.verdicts[2] = {3, r.cohomology_traceless, r.cohomology_traceless,
                   "homotopic to a commutator iff every tr_i^H vanishes"};
  a.verdicts[3] = {4, r.stretch_sums_vanish, r.stretch_sums_vanish,
                   "homotopic to a pointwise commutator iff every stretch sum vanishes"};
  return a;
}

}  // namespace chaincomm
