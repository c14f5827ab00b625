#include "doctest.h"

#include "chaincomm/linalg.hpp"
#include "chaincomm/random.hpp"
#include "chaincomm/splitting.hpp"
#include "helpers.hpp"

using namespace chaincomm;
using namespace chaincomm::testing;

TEST_CASE("split_complex examples") {
  const auto z = make_complex(Q, 0, {2, 3}, {Matrix::zero(Q, 3, 2)});
  const auto sz = split_complex(z);
  for (int i = 0; i <= 1; ++i) {
    CHECK(sz.boundary_dim(i) == 0);
    CHECK(sz.cohomology_dim(i) == z->dim(i));
    CHECK(sz.at(i).basis == Matrix::identity(Q, z->dim(i)));
  }

  const auto sl = split_complex(exact_line());
  CHECK(sl.at(0).boundary_dim == 0);
  CHECK(sl.at(0).cohomology_dim == 0);
  CHECK(sl.at(0).next_boundary_dim == 1);
  CHECK(sl.at(1).boundary_dim == 1);
  CHECK(sl.at(1).cohomology_dim == 0);
  CHECK(sl.at(1).next_boundary_dim == 0);

  const Matrix d(Q, {{0, 1}, {0, 0}});
  const auto c = make_complex(Q, 0, {2, 2, 2}, {d, d});
  const auto s = split_complex(c);
  const auto& mid = s.at(1);
  CHECK(mid.boundary_dim == 1);
  CHECK(mid.cohomology_dim == 0);
  CHECK(mid.next_boundary_dim == 1);
  for (int i = 0; i < 2; ++i)
    CHECK(s.at(i + 1).inverse * c->differential(i) * s.at(i).basis == s.standard_differential(i));
  CHECK(s.standard_differential(0) == Matrix(Q, {{0, 1}, {0, 0}}));
}

TEST_CASE("extract_blocks examples") {
  Rng rng(1);
  const auto c = random_complex(rng, Q, 3, 4);
  const auto s = split_complex(c);
  const auto id = extract_blocks(identity_endomorphism(c), s);
  for (int i = c->lo(); i <= c->hi(); ++i) {
    const auto& b = id.at(i);
    CHECK(b.boundary == Matrix::identity(Q, b.boundary.rows()));
    CHECK(b.cohomology == Matrix::identity(Q, b.cohomology.rows()));
    CHECK(b.g.is_zero());
    CHECK(b.h.is_zero());
    CHECK(b.k.is_zero());
  }

  const auto z = make_complex(Q, 0, {2, 1, 2}, {Matrix::zero(Q, 1, 2), Matrix::zero(Q, 2, 1)});
  const auto zb = extract_blocks(homotopy_boundary(random_homotopy(rng, z)), split_complex(z));
  for (const auto& b : zb.degrees) {
    CHECK(b.boundary.is_zero());
    CHECK(b.cohomology.is_zero());
  }

  // One interior degree of the alternating example: phi^B is [+-1].
  const Matrix d(Q, {{0, 1}, {0, 0}});
  const auto a = make_complex(Q, 0, {2, 2, 2}, {d, d});
  const auto phi = ChainEndomorphism(a, {Matrix(Q, {{1, 0}, {0, -1}}), Matrix(Q, {{-1, 0}, {0, 1}}),
                                         Matrix(Q, {{1, 0}, {0, -1}})});
  const auto ab = extract_blocks(phi, split_complex(a));
  CHECK(ab.at(1).boundary.rows() == 1);
  CHECK(ab.at(1).cohomology.rows() == 0);
  CHECK((ab.at(1).boundary.trace() == q(1) || ab.at(1).boundary.trace() == q(-1)));
}

TEST_CASE("assemble examples") {
  Rng rng(2);
  const auto c = random_complex(rng, Q, 3, 4);
  const auto s = split_complex(c);
  auto blocks = extract_blocks(ChainEndomorphism::zero(c), s);
  CHECK(assemble(blocks, s).maps() == ChainEndomorphism::zero(c).maps());

  // Only phi^H nonzero: block form diag(0, phi^H, 0), still a chain map.
  for (auto& b : blocks.degrees) b.cohomology = random_matrix(rng, Q, b.cohomology.rows(), b.cohomology.cols());
  const auto phi = assemble(blocks, s);
  CHECK(validate_chain_map(phi).empty());
  for (int i = c->lo(); i <= c->hi(); ++i) {
    const auto& sd = s.at(i);
    Matrix expected(Q, c->dim(i), c->dim(i));
    expected.set_block(sd.boundary_dim, sd.boundary_dim, blocks.at(i).cohomology);
    CHECK(s.to_split(i, phi.at(i)) == expected);
  }
}

TEST_CASE("splitting soundness on random complexes") {
  Rng rng(3);
  for (int n = 0; n < 120; ++n) {
    const auto& f = n % 2 ? F2 : Q;
    const auto c = random_complex(rng, f, 4, 1 + rng.below(5), -1);
    const auto s = split_complex(c);
    for (int i = c->lo(); i < c->hi(); ++i)
      CHECK(s.at(i + 1).inverse * c->differential(i) * s.at(i).basis == s.standard_differential(i));
    for (int i = c->lo(); i <= c->hi(); ++i) CHECK(s.cohomology_dim(i) == cohomology(*c, i).dim);

    const auto phi = random_chain_map(rng, c);
    const auto blocks = extract_blocks(phi, s);
    CHECK(assemble(blocks, s) == phi);
    CHECK(extract_blocks(assemble(blocks, s), s) == blocks);
    for (int i = c->lo(); i <= c->hi(); ++i) {
      const auto& b = blocks.at(i);
      CHECK(phi.at(i).trace() == b.boundary.trace() + b.cohomology.trace() + next_boundary_block(blocks, s, i).trace());
      CHECK(b.cohomology.trace() == induced_cohomology_map(phi, i).trace());
    }
  }
}

TEST_CASE("extract_blocks rejects a non-chain map") {
  const auto c = exact_line();
  const auto s = split_complex(c);
  CHECK_THROWS_AS(extract_blocks(ChainEndomorphism(c, {Matrix(Q, {{1}}), Matrix(Q, {{2}})}), s), BlockStructureError);
}
