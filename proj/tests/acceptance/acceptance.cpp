// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "chaincomm/commutator.hpp"
#include "chaincomm/linalg.hpp"
#include "chaincomm/random.hpp"
#include "chaincomm/splitting.hpp"
#include "chaincomm/verify.hpp"

using namespace chaincomm;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds && out.ok) {
    out.ok = false;
    out.detail = "runtime " + std::to_string(secs) + " s exceeds " + std::to_string(limit_seconds) + " s";
  }
  std::printf("%s %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", name, secs, out.detail.empty() ? "" : ": ",
              out.detail.c_str());
  std::fflush(stdout);
  if (!out.ok) ++failures;
}

std::string at(const char* what, int n) { return std::string(what) + " (instance " + std::to_string(n) + ")"; }

std::optional<ErrorCode> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConstructionError& e) {
    return e.code();
  }
  return std::nullopt;
}

Scalar sign(const FieldSpec& f, int i) { return i % 2 == 0 ? Scalar::one(f) : -Scalar::one(f); }

Outcome example2() {
  Outcome o;
  const auto r = example2_search();
  o.require(r.commutants_m == published_commutants_m(), "C(M) differs from the published set");
  o.require(r.commutants_n == published_commutants_n(), "C(N) differs from the published set");
  o.require(r.commutants_m.size() == 6 && r.commutants_n.size() == 6, "commutant sets are not six elements each");
  o.require(r.admissible_pairs == published_admissible_pairs(), "admissible (p, s) pairs differ");
  for (const auto& [p, qs] : r.q_candidates) o.require(qs == published_q_candidates(), "q candidates differ");
  o.require(r.q_pair_trials == 16, "trial count is " + std::to_string(r.q_pair_trials));
  o.require(r.q_pair_successes == 0, "success count is " + std::to_string(r.q_pair_successes));
  o.require(r.matches_published, "report does not match");
  return o;
}

Outcome f2_equivalence() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto count = *matrix_count(F2, n, n, 1u << 20);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const auto m = matrix_from_index(F2, n, n, idx);
      const auto oracle = brute_force_commutator(m);
      const auto where = m.to_string();
      o.require(oracle.has_value() == m.trace().is_zero(), "trace/oracle disagree on " + where);
      if (oracle) o.require(commutator(oracle->first, oracle->second) == m, "oracle pair wrong on " + where);
      try {
        const auto [p, q] = am_commutator(m);
        o.require(oracle.has_value(), "am_commutator succeeded where the oracle found nothing: " + where);
        o.require(commutator(p, q) == m, "am_commutator pair wrong on " + where);
      } catch (const ConstructionError& e) {
        const bool allowed = e.code() == ErrorCode::FieldTooSmall ||
                             (e.code() == ErrorCode::TraceObstruction && !oracle.has_value());
        o.require(allowed, std::string("am_commutator raised ") + to_string(e.code()) + " on " + where);
      }
    }
  }
  return o;
}

Outcome theorem2_roundtrip() {
  Outcome o;
  Rng rng(2002);
  for (int n = 0; n < 200; ++n) {
    const auto c = random_complex(rng, Q, 4, 1 + rng.below(5), static_cast<int>(rng.below(5)) - 2);
    const auto phi = random_endomorphism(rng, c, Ensure::Theorem2);
    const auto a = analyze(phi);
    o.require(a.report.commutator_condition && a.verdicts[1].condition_holds, at("condition (b) not reported", n));
    const auto cons = theorem2_construction(phi);
    o.require(verify_commutator(phi, cons.witness).ok, at("verify_commutator failed", n));
    const auto& sel = cons.selection;
    const auto empty = Matrix::zero(Q, 0, 0);
    for (int i = c->lo(); i <= c->hi(); ++i) {
      const auto k = static_cast<std::size_t>(i - c->lo());
      const auto& b = cons.blocks.at(i);
      const auto& q_next = k + 1 < sel.q.size() ? sel.q[k + 1] : empty;
      const auto& p_next = k + 1 < sel.p.size() ? sel.p[k + 1] : empty;
      o.require(sel.p[k] * cons.x[k] - cons.x[k] * sel.s[k] == b.g, at("p X - X s != g", n));
      o.require(cons.t[k] * q_next - sel.q[k] * cons.t[k] == b.h, at("T q' - q T != h", n));
      o.require(sel.s[k] * cons.z[k] - cons.z[k] * p_next == b.k, at("s Z - Z p' != k", n));
    }
  }
  return o;
}

Outcome theorem3_roundtrip() {
  Outcome o;
  Rng rng(3003);
  for (int n = 0; n < 200; ++n) {
    const auto c = random_complex(rng, Q, 4, 1 + rng.below(5), static_cast<int>(rng.below(5)) - 2);
    const auto phi = random_endomorphism(rng, c, Ensure::Theorem3);
    const auto r = trace_report(phi);
    o.require(r.cohomology_traceless, at("tr^H not reported zero", n));
    const auto w = theorem3_witness(phi);
    o.require(verify_homotopy_witness(phi, w).ok, at("homotopy witness failed verification", n));
    const auto remainder = phi - homotopy_boundary(w.homotopy);
    const auto s = split_complex(c);
    const auto blocks = extract_blocks(phi, s);
    for (int i = c->lo(); i <= c->hi(); ++i) {
      const auto& sd = s.at(i);
      Matrix expected(Q, c->dim(i), c->dim(i));
      expected.set_block(sd.boundary_dim, sd.boundary_dim, blocks.at(i).cohomology);
      o.require(s.to_split(i, remainder.at(i)) == expected, at("remainder is not diag(0, phi^H, 0)", n));
    }
  }
  return o;
}

Outcome theorem4_roundtrip() {
  Outcome o;
  Rng rng(4004);
  for (int n = 0; n < 200; ++n) {
    const auto c = random_complex(rng, Q, 4, 1 + rng.below(5), static_cast<int>(rng.below(5)) - 2);
    const auto phi = random_endomorphism(rng, c, Ensure::Theorem4);
    const auto r = trace_report(phi);
    o.require(r.stretch_sums_vanish, at("stretch sums not reported zero", n));
    o.require(verify_homotopy_witness(phi, theorem4_witness(phi)).ok, at("theorem 4 witness failed verification", n));
    const auto lb = lemma_b_tau(c, r.traces);
    o.require(homotopy_boundary(lb.sigma) == lb.tau, at("d sigma + sigma d != tau", n));
    for (int i = c->lo(); i <= c->hi(); ++i) o.require(lb.tau.at(i).trace() == phi.at(i).trace(), at("tr(tau_i) != T_i", n));
  }
  return o;
}

Outcome telescoping() {
  Outcome o;
  for (const auto& f : {Q, F2}) {
    Rng rng(f.is_finite() ? 5002 : 5001);
    for (int n = 0; n < 500; ++n) {
      const auto c = random_complex(rng, f, 4, 1 + rng.below(5), static_cast<int>(rng.below(5)) - 2);
      const auto phi = random_chain_map(rng, c);
      for (const auto& st : stretches(*c)) {
        Scalar tr = Scalar::zero(f), trh = Scalar::zero(f);
        for (int i = st.start; i <= st.end; ++i) {
          tr += sign(f, i) * phi.at(i).trace();
          trh += sign(f, i) * induced_cohomology_map(phi, i).trace();
        }
        o.require(tr == trh, at(f.is_finite() ? "tr_S != tr_S^H over F2" : "tr_S != tr_S^H over Q", n));
      }
      const auto r = trace_report(phi);
      for (const auto& st : r.stretch_traces) o.require(st.trace == st.cohomology_trace, at("report disagrees", n));
    }
  }
  return o;
}

Outcome negative_controls() {
  Outcome o;
  Rng rng(6006);
  for (int n = 0; n < 50; ++n) {
    const auto len = 1 + rng.below(4);
    std::vector<std::size_t> dims;
    std::vector<Matrix> diffs;
    for (std::size_t k = 0; k < len; ++k) dims.push_back(1 + rng.below(3));
    for (std::size_t k = 0; k + 1 < len; ++k) diffs.push_back(Matrix::zero(Q, dims[k + 1], dims[k]));
    const auto c = std::make_shared<const ChainComplex>(Q, 0, dims, diffs);
    const auto id = identity_endomorphism(c);
    o.require(error_of([&] { theorem4_witness(id); }) == ErrorCode::StretchObstruction,
              at("identity on zero differentials did not raise StretchObstruction", n));
  }
  for (int n = 0; n < 100; ++n) {
    const auto c = random_complex(rng, Q, 3, 1 + rng.below(4));
    auto phi = random_chain_map(rng, c);
    const auto r = trace_report(phi);
    if (r.pointwise_traceless) phi = phi + identity_endomorphism(c);
    if (trace_report(phi).pointwise_traceless) continue;
    o.require(error_of([&] { theorem1_witness(phi); }) == ErrorCode::TraceObstruction,
              at("nonzero degreewise trace did not raise TraceObstruction", n));
  }
  for (int n = 0; n < 50; ++n) {
    const auto c = random_complex(rng, F2, 3, 1 + rng.below(4));
    const auto phi = random_endomorphism(rng, c, Ensure::Theorem2);
    o.require(error_of([&] { theorem2_witness(phi); }) == ErrorCode::FiniteFieldUnsupported,
              at("theorem2_witness over F2 did not refuse", n));
  }
  return o;
}

Outcome splitting_soundness() {
  Outcome o;
  Rng rng(8008);
  for (int n = 0; n < 500; ++n) {
    const auto& f = n % 2 ? F2 : Q;
    const auto c = random_complex(rng, f, 4, 1 + rng.below(5), static_cast<int>(rng.below(5)) - 2);
    const auto s = split_complex(c);
    for (int i = c->lo(); i < c->hi(); ++i) {
      const auto conj = s.at(i + 1).inverse * c->differential(i) * s.at(i).basis;
      Matrix corner(f, c->dim(i + 1), c->dim(i));
      const auto b = s.at(i).next_boundary_dim;
      for (std::size_t r = 0; r < b; ++r) corner(r, c->dim(i) - b + r) = Scalar::one(f);
      o.require(conj == corner, at("conjugated differential is not the corner matrix", n));
    }
    const auto phi = random_chain_map(rng, c);
    const auto blocks = extract_blocks(phi, s);
    o.require(assemble(blocks, s) == phi, at("assemble(extract(phi)) != phi", n));
    o.require(extract_blocks(assemble(blocks, s), s) == blocks, at("extract(assemble(B)) != B", n));
    for (int i = c->lo(); i <= c->hi(); ++i)
      o.require(blocks.at(i).cohomology.trace() == induced_cohomology_map(phi, i).trace(),
                at("tr(phi^H_i) differs from the induced cohomology map", n));
  }
  return o;
}

}  // namespace

int main() {
  criterion("example2-reproduction", 1.0, example2);
  criterion("theorem1-f2-exhaustive-equivalence", 60.0, f2_equivalence);
  criterion("theorem2-roundtrip", 120.0, theorem2_roundtrip);
  criterion("theorem3-roundtrip", 0, theorem3_roundtrip);
  criterion("theorem4-lemma-b", 0, theorem4_roundtrip);
  criterion("telescoping-identity", 0, telescoping);
  criterion("negative-controls", 0, negative_controls);
  criterion("splitting-soundness", 0, splitting_soundness);
  return failures == 0 ? 0 : 1;
}
