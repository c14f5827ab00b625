#pragma once

#include <memory>
#include <vector>

#include "chaincomm/complex.hpp"

namespace chaincomm::testing {

inline const FieldSpec Q = FieldSpec::rationals();
inline const FieldSpec F2 = FieldSpec::prime(2);
inline const FieldSpec F3 = FieldSpec::prime(3);

inline ComplexPtr make_complex(FieldSpec f, int lo, std::vector<std::size_t> dims, std::vector<Matrix> diffs) {
  return std::make_shared<const ChainComplex>(f, lo, std::move(dims), std::move(diffs));
}

// 0 -> k -> k -> 0 with d = [[1]].
inline ComplexPtr exact_line(FieldSpec f = Q) { return make_complex(f, 0, {1, 1}, {Matrix(f, {{1}})}); }

inline Scalar q(long n, long d = 1) { return Scalar::from_rational(mpq_class(n, d)); }

}  // namespace chaincomm::testing
