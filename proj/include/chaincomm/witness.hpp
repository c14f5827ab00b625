#pragma once

#include <variant>
#include <vector>

#include "chaincomm/complex.hpp"

namespace chaincomm {

struct CommutatorPair {
  Matrix p;
  Matrix q;
};

/// Per-degree pairs with a_i b_i - b_i a_i = phi_i; the factors need not be
/// chain maps.
struct PointwiseWitness {
  int lo;
  std::vector<CommutatorPair> pairs;  // lo .. hi

  const CommutatorPair& at(int i) const { return pairs.at(static_cast<std::size_t>(i - lo)); }
};

/// Chain maps alpha, beta with alpha beta - beta alpha = phi.
struct CommutatorWitness {
  ChainEndomorphism alpha;
  ChainEndomorphism beta;
};

/// phi - (dS + Sd) equals the residual's commutator, chainwise or pointwise.
struct HomotopyWitness {
  Homotopy homotopy;
  std::variant<CommutatorWitness, PointwiseWitness> residual;
};

}  // namespace chaincomm
