#pragma once

#include <cstdint>
#include <random>

#include "chaincomm/complex.hpp"

namespace chaincomm {

/// Seeded generator with platform-independent draws (mt19937_64 plus
/// rejection sampling; the std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Uniform residue over F_p; an integer in [-3, 3] over Q.
Scalar random_scalar(Rng& rng, const FieldSpec& f);
Matrix random_matrix(Rng& rng, const FieldSpec& f, std::size_t rows, std::size_t cols);
Matrix random_invertible(Rng& rng, const FieldSpec& f, std::size_t n);

/// Window [lo, lo + length - 1], every dims(i) <= max_dim. Differentials are
/// the standard corner matrices conjugated by random invertible bases, so
/// d o d = 0 holds by construction.
ComplexPtr random_complex(Rng& rng, const FieldSpec& f, std::size_t max_dim, std::size_t length, int lo = 0);

/// Uniform-ish chain map: random blocks in a split basis, assembled.
ChainEndomorphism random_chain_map(Rng& rng, const ComplexPtr& c);
/// Chain map with tr phi_i = 0 at every degree (cohomology traces may not vanish).
ChainEndomorphism random_pointwise_traceless(Rng& rng, const ComplexPtr& c);
Homotopy random_homotopy(Rng& rng, const ComplexPtr& c);

enum class Ensure { None, Theorem1, Theorem2, Theorem3, Theorem4 };

/// Theorem1: pointwise traceless. Theorem2: commutator of random chain
/// maps. Theorem3: that plus a random homotopy boundary. Theorem4: pointwise
/// traceless plus a random homotopy boundary.
ChainEndomorphism random_endomorphism(Rng& rng, const ComplexPtr& c, Ensure ensure);

}  // namespace chaincomm
