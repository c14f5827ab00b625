#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaincomm/complex.hpp"
#include "chaincomm/witness.hpp"

// Witness checking and exhaustive oracles. Nothing here calls into the
// commutator constructions; only matrix arithmetic and exact-linalg
// primitives are used.

namespace chaincomm {

struct VerificationIssue {
  std::string location;  // "degree 3", "alpha degree 0", ...
  std::string identity;
  std::string lhs;
  std::string rhs;
};

struct VerificationResult {
  bool ok = true;
  std::vector<VerificationIssue> violations;

  void fail(VerificationIssue v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

/// alpha and beta are chain maps of phi's complex and [alpha, beta] = phi.
VerificationResult verify_commutator(const ChainEndomorphism& phi, const CommutatorWitness& w);
/// [a_i, b_i] = phi_i at every degree.
VerificationResult verify_pointwise(const ChainEndomorphism& phi, const PointwiseWitness& w);
/// phi - (dS + Sd) equals the residual commutator, chainwise or pointwise.
VerificationResult verify_homotopy_witness(const ChainEndomorphism& phi, const HomotopyWitness& w);

/// First (p, q) in lexicographic order with p q - q p = m. Enumeration
/// bounds: size <= 3 over F_2, size <= 2 over F_3 and F_5 (any size-1 matrix
/// over those fields too). Throws std::invalid_argument outside them.
std::optional<std::pair<Matrix, Matrix>> brute_force_commutator(const Matrix& m);

struct Example2Report {
  std::vector<Matrix> commutants_m;  // C(M), M = [[0,0],[1,0]]
  std::vector<Matrix> commutants_n;  // C(N), N = [[0,1],[0,0]]
  std::vector<std::pair<Matrix, Matrix>> admissible_pairs;  // (p, s) with kron(p,I) - kron(I,s^T) invertible
  std::vector<std::pair<Matrix, std::vector<Matrix>>> q_candidates;  // per admissible p: all q with [p, q] = M
  std::size_t q_pair_trials = 0;
  std::size_t q_pair_successes = 0;  // (q1, q2) with kron(q2,I) - kron(I,q1^T) invertible
  bool matches_published = false;    // every set above equals the transcribed one, 16 trials, 0 successes
};

/// Exhaustive search over F_2 showing that the invertibility conditions
/// cannot be met simultaneously for the 2 x 2 nilpotent data.
Example2Report example2_search();

/// The sets as printed alongside the counterexample, for comparison.
std::vector<Matrix> published_commutants_m();
std::vector<Matrix> published_commutants_n();
std::vector<std::pair<Matrix, Matrix>> published_admissible_pairs();
std::vector<Matrix> published_q_candidates();

/// Basis of the space of chain endomorphisms of c (solutions of
/// phi_{i+1} d_i = d_i phi_i).
std::vector<ChainEndomorphism> chain_map_basis(const ComplexPtr& c);

/// Exhaustive search for chain maps alpha, beta with [alpha, beta] = phi.
/// alpha runs over the chain-map space in lexicographic coefficient order;
/// for each alpha the condition is linear in beta and solved exactly.
/// Bounds: finite field, total dimension <= 6, at most 2^16 choices of alpha.
std::optional<CommutatorWitness> brute_force_chain_commutator(const ChainEndomorphism& phi);

}  // namespace chaincomm
