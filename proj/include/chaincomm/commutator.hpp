#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "chaincomm/complex.hpp"
#include "chaincomm/errors.hpp"
#include "chaincomm/splitting.hpp"
#include "chaincomm/witness.hpp"

namespace chaincomm {

/// Writes a traceless square matrix as p q - q p.
///
/// Non-scalar input is conjugated to a matrix with zero diagonal; then p is
/// diag(0, 1, ..., n-1) and q is the off-diagonal quotient
/// m_jk / (p_j - p_k), both conjugated back. That needs n distinct field
/// elements. When it is unavailable (small prime fields, or a nonzero
/// traceless scalar matrix) p is searched exhaustively in lexicographic order
/// with q obtained from the linear system [p, q] = m, provided the search
/// space has at most 2^16 elements; otherwise FieldTooSmall.
///
/// Throws ConstructionError(TraceObstruction) for nonzero trace and
/// std::invalid_argument for non-square input.
CommutatorPair am_commutator(const Matrix& m);

/// { P : P Q - Q P = m for some Q } by enumeration of all size x size pairs
/// over a finite field, in lexicographic order. Throws std::invalid_argument
/// over the rationals or when the enumeration exceeds 2^20 pairs.
std::vector<Matrix> commutants(const Matrix& m, const FieldSpec& field, std::size_t size);

struct LemmaAOutput {
  std::vector<Matrix> p, q, s, t;
};

/// Chooses p_i, q_i, s_i, t_i with [p_i, q_i] = M_i, [s_i, t_i] = N_i and
/// the three Sylvester operators (p_i, s_i), (q_{i+1}, q_i), (s_i, p_{i+1})
/// invertible. Indices past the end of either list denote 0 x 0 matrices.
///
/// s_i is shifted by the first lambda (0, 1, 2, ... over Q; every residue
/// over F_p) that makes the (p_i, s_i) and (s_i, p_{i+1}) operators
/// invertible; then, sweeping upward from the first index, q_{i+1} is
/// shifted by the first mu making (q_{i+1}, q_i) invertible.
/// Over a finite field the scan can fail: SelectionExhausted.
LemmaAOutput lemma_a(std::span<const Matrix> ms, std::span<const Matrix> ns, const FieldSpec& field);

/// Names of the failed conditions ("A1[0]", "A4[2]", ...); empty when all hold.
std::vector<std::string> check_lemma_a(std::span<const Matrix> ms, std::span<const Matrix> ns,
                                       const LemmaAOutput& out);

/// TraceObstruction naming the first degree with tr phi_i != 0.
PointwiseWitness theorem1_witness(const ChainEndomorphism& phi);

/// Everything produced on the way to a commutator witness, for inspection:
/// the split block data, the Lemma A selection (indexed from lo) and the
/// solutions X_i, T_i, Z_i of
///     p_i X_i - X_i s_i = g_i,  T_i q_{i+1} - q_i T_i = h_i,  s_i Z_i - Z_i p_{i+1} = k_i.
struct CommutatorConstruction {
  CommutatorWitness witness;
  Splitting splitting;
  BlockData blocks;
  LemmaAOutput selection;
  std::vector<Matrix> x, t, z;
};

/// Rationals only (FiniteFieldUnsupported otherwise). Requires
/// tr_i = tr_i^H = 0 for all i (TraceObstruction).
CommutatorConstruction theorem2_construction(const ChainEndomorphism& phi);
CommutatorWitness theorem2_witness(const ChainEndomorphism& phi);

/// Requires tr_i^H = 0 for all i. The homotopy S removes everything except
/// the cohomology blocks; the residual is a commutator of two chain maps
/// that act only on the cohomology summands.
HomotopyWitness theorem3_witness(const ChainEndomorphism& phi);

struct LemmaBResult {
  ChainEndomorphism tau;
  Homotopy sigma;
  std::vector<Scalar> s_values;  // S_lo .. S_{hi+1}
};

/// Null-homotopic tau = d sigma + sigma d with tr(tau_i) = targets[i - lo].
/// StretchObstruction when the alternating sum of targets over a stretch is
/// nonzero.
LemmaBResult lemma_b_tau(const ComplexPtr& c, std::span<const Scalar> targets);

/// Requires tr_S = 0 for every stretch. Subtracts the Lemma B correction for
/// T_i = tr_i(phi) and writes the pointwise-traceless remainder degreewise.
HomotopyWitness theorem4_witness(const ChainEndomorphism& phi);

struct TheoremVerdict {
  int theorem;
  bool condition_holds;
  bool construction_available;
  std::string note;
};

struct Analysis {
  TraceReport report;
  std::array<TheoremVerdict, 4> verdicts;
};

Analysis analyze(const ChainEndomorphism& phi);

}  // namespace chaincomm
