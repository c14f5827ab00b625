#include "doctest.h"

#include "chaincomm/linalg.hpp"
#include "chaincomm/random.hpp"
#include "chaincomm/splitting.hpp"
#include "helpers.hpp"

using namespace chaincomm;
using namespace chaincomm::testing;

namespace {

// Truncation of the alternating complex with d = [[0,1],[0,0]] and
// phi_i = (-1)^i diag(1,-1): window [0, 3], zero differential at both cuts.
ComplexPtr alternating_window(FieldSpec f = Q) {
  const Matrix d(f, {{0, 1}, {0, 0}});
  return make_complex(f, 0, {2, 2, 2, 2}, {d, d, d});
}

ChainEndomorphism alternating_phi(const ComplexPtr& c) {
  std::vector<Matrix> maps;
  for (int i = c->lo(); i <= c->hi(); ++i) {
    const std::int64_t s = i % 2 == 0 ? 1 : -1;
    maps.push_back(Matrix(c->field(), {{s, 0}, {0, -s}}));
  }
  return ChainEndomorphism(c, maps);
}

}  // namespace

TEST_CASE("validate_complex examples") {
  CHECK(validate_complex(*exact_line()).empty());
  const auto bad = make_complex(Q, 0, {1, 1, 1}, {Matrix(Q, {{1}}), Matrix(Q, {{1}})});
  const auto v = validate_complex(*bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].degree == 0);
  // Example 2's nilpotent block as a complex over F_2.
  const Matrix d(F2, {{0, 0}, {1, 0}});
  CHECK(validate_complex(*make_complex(F2, 0, {2, 2, 2, 2}, {d, d, d})).empty());
  CHECK_THROWS_AS(make_complex(Q, 0, {1, 2}, {Matrix(Q, {{1}})}), std::invalid_argument);
}

TEST_CASE("validate_chain_map examples") {
  const auto c = make_complex(Q, 0, {1, 1, 1}, {Matrix(Q, {{1}}), Matrix(Q, {{0}})});
  CHECK(validate_chain_map(identity_endomorphism(c)).empty());
  const auto doubled = ChainEndomorphism(c, {Matrix(Q, {{1}}), Matrix(Q, {{2}}), Matrix(Q, {{1}})});
  const auto v = validate_chain_map(doubled);
  REQUIRE(v.size() == 1);
  CHECK(v[0].degree == 0);
  CHECK(validate_chain_map(alternating_phi(alternating_window())).empty());
}

TEST_CASE("cohomology examples") {
  const auto c = exact_line();
  CHECK(cohomology(*c, 0).dim == 0);
  CHECK(cohomology(*c, 1).dim == 0);
  const auto z = make_complex(Q, 0, {2, 3}, {Matrix::zero(Q, 3, 2)});
  CHECK(cohomology(*z, 0).dim == 2);
  CHECK(cohomology(*z, 1).dim == 3);
  const auto a = alternating_window();
  CHECK(cohomology(*a, 1).dim == 0);
  CHECK(cohomology(*a, 2).dim == 0);
}

TEST_CASE("induced_cohomology_map examples") {
  const auto z = make_complex(Q, 0, {2, 1}, {Matrix::zero(Q, 1, 2)});
  CHECK(induced_cohomology_map(identity_endomorphism(z), 0) == Matrix::identity(Q, 2));
  CHECK(induced_cohomology_map(identity_endomorphism(z), 1) == Matrix::identity(Q, 1));

  Rng rng(3);
  for (int n = 0; n < 30; ++n) {
    const auto c = random_complex(rng, Q, 3, 4);
    const auto nh = homotopy_boundary(random_homotopy(rng, c));
    for (int i = c->lo(); i <= c->hi(); ++i) CHECK(induced_cohomology_map(nh, i).is_zero());
  }

  const auto a = alternating_window();
  const auto m = induced_cohomology_map(alternating_phi(a), 1);
  CHECK(m.rows() == 0);
  CHECK(m.cols() == 0);
}

TEST_CASE("stretches examples") {
  const auto line = stretches(*exact_line());
  REQUIRE(line.size() == 1);
  CHECK(line[0] == Stretch{0, 1});

  const auto z = make_complex(Q, 0, {1, 1, 1}, {Matrix(Q, {{0}}), Matrix(Q, {{0}})});
  CHECK(stretches(*z) == std::vector<Stretch>{{0, 0}, {1, 1}, {2, 2}});

  const auto mixed = make_complex(Q, 0, {1, 1, 1, 1}, {Matrix(Q, {{1}}), Matrix(Q, {{0}}), Matrix(Q, {{1}})});
  CHECK(stretches(*mixed) == std::vector<Stretch>{{0, 1}, {2, 3}});

  CHECK(quasi_boundedness(*exact_line()).holds);
}

TEST_CASE("trace_report examples") {
  const auto r = trace_report(identity_endomorphism(exact_line()));
  CHECK(r.trace(0) == q(1));
  CHECK(r.trace(1) == q(1));
  REQUIRE(r.stretch_traces.size() == 1);
  CHECK(r.stretch_traces[0].trace.is_zero());
  CHECK(r.stretch_sums_vanish);
  CHECK_FALSE(r.pointwise_traceless);

  Rng rng(4);
  const auto c = random_complex(rng, Q, 3, 4);
  const auto z = trace_report(ChainEndomorphism::zero(c));
  CHECK(z.pointwise_traceless);
  CHECK(z.commutator_condition);
  CHECK(z.cohomology_traceless);
  CHECK(z.stretch_sums_vanish);

  const auto a = alternating_window();
  const auto ra = trace_report(alternating_phi(a));
  for (int i = a->lo(); i <= a->hi(); ++i) CHECK(ra.trace(i).is_zero());
  for (int i = a->lo() + 1; i < a->hi(); ++i) CHECK(ra.cohomology_trace(i).is_zero());
}

TEST_CASE("homotopy_boundary examples") {
  Rng rng(5);
  const auto c = random_complex(rng, Q, 3, 4);
  CHECK(homotopy_boundary(Homotopy::zero(c)).maps() == ChainEndomorphism::zero(c).maps());
  const auto z = make_complex(Q, 0, {2, 1, 2}, {Matrix::zero(Q, 1, 2), Matrix::zero(Q, 2, 1)});
  for (int n = 0; n < 10; ++n) CHECK(homotopy_boundary(random_homotopy(rng, z)).maps() == ChainEndomorphism::zero(z).maps());
}

TEST_CASE("commutator algebra examples") {
  Rng rng(6);
  for (const auto& f : {Q, F2, F3}) {
    for (int n = 0; n < 40; ++n) {
      const auto c = random_complex(rng, f, 3, 4);
      const auto a = random_chain_map(rng, c), b = random_chain_map(rng, c);
      CHECK(commutator(a, a).maps() == ChainEndomorphism::zero(c).maps());
      CHECK(commutator(identity_endomorphism(c), b).maps() == ChainEndomorphism::zero(c).maps());
      const auto r = trace_report(commutator(a, b));
      CHECK(r.pointwise_traceless);
      CHECK(r.cohomology_traceless);
    }
  }
}

TEST_CASE("complex-core invariants on random instances") {
  Rng rng(7);
  for (int n = 0; n < 150; ++n) {
    const auto& f = n % 3 == 0 ? F2 : (n % 3 == 1 ? F3 : Q);
    const auto c = random_complex(rng, f, 3, 1 + rng.below(5), static_cast<int>(rng.below(5)) - 2);
    REQUIRE(validate_complex(*c).empty());
    const auto phi = random_endomorphism(rng, c, static_cast<Ensure>(rng.below(5)));
    REQUIRE(validate_chain_map(phi).empty());
    const auto s = random_homotopy(rng, c);
    CHECK(validate_chain_map(homotopy_boundary(s)).empty());

    const auto r = trace_report(phi);
    for (const auto& st : r.stretch_traces) CHECK(st.trace == st.cohomology_trace);
    if (r.commutator_condition) {
      CHECK(r.pointwise_traceless);
      CHECK(r.cohomology_traceless);
    }
    if (r.pointwise_traceless) CHECK(r.stretch_sums_vanish);
    if (r.cohomology_traceless) CHECK(r.stretch_sums_vanish);
    for (int i = c->lo(); i <= c->hi(); ++i) CHECK(r.cohomology_trace(i) == induced_cohomology_map(phi, i).trace());
  }
}
