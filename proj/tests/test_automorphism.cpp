// Automorphism families of the Grassmann graph: X -> XU, X -> (XU)^perp,
// exact verification, the scalar kernel, and the star-derived induced map.
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"
#include "zgrass/grassmann.hpp"

using namespace zgrass;

namespace {
const RingContext z4(2, 2);
const RingContext f2(2, 1);

bool is_identity_perm(const std::vector<u64>& perm) {
  for (u64 i = 0; i < perm.size(); ++i)
    if (perm[i] != i) return false;
  return true;
}
}  // namespace

TEST_CASE("linear maps are verified automorphisms", "[automorphism]") {
  const GrassmannGraph g(z4, 4, 2);

  const auto ident = automorphism_linear(g, Matrix::identity(4, z4));
  CHECK(is_identity_perm(ident.perm));
  CHECK(verify_automorphism(g, ident));

  // coordinate swap
  Matrix swap02(4, 4, z4);
  swap02.set(0, 2, 1);
  swap02.set(2, 0, 1);
  swap02.set(1, 1, 1);
  swap02.set(3, 3, 1);
  const auto swapped = automorphism_linear(g, swap02);
  CHECK_FALSE(is_identity_perm(swapped.perm));
  CHECK(verify_automorphism(g, swapped));

  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 12; ++trial) {
    const Matrix u = ztest::random_invertible(rng, 4, z4);
    const auto f = automorphism_linear(g, u);
    REQUIRE(verify_automorphism(g, f));
    // mc-adjacency is preserved as well
    std::uniform_int_distribution<u64> pick(0, g.size() - 1);
    for (int pair = 0; pair < 30; ++pair) {
      const u64 a = pick(rng), b = pick(rng);
      REQUIRE(mc_adjacent(g.vertex(a), g.vertex(b)) ==
              mc_adjacent(g.vertex(f.perm[a]), g.vertex(f.perm[b])));
    }
  }

  CHECK_THROWS_AS(automorphism_linear(g, Matrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 2, 0}}, z4)),
                  NotInvertible);
}

TEST_CASE("an arbitrary transposition is not an automorphism", "[automorphism]") {
  const GrassmannGraph g(z4, 4, 2);
  // swap two vertices at distance 2 and leave the rest; some neighbor of one
  // is a non-neighbor of the other, so edge preservation fails
  u64 a = 0, b = 0;
  bool found = false;
  for (u64 x = 0; x < g.size() && !found; ++x)
    for (u64 y = x + 1; y < g.size() && !found; ++y)
      if (arithmetic_distance(g.vertex(x), g.vertex(y)) == 2) {
        a = x;
        b = y;
        found = true;
      }
  REQUIRE(found);
  VertexMap f{VertexMap::Kind::explicit_map, std::nullopt, {}};
  f.perm.resize(g.size());
  for (u64 i = 0; i < g.size(); ++i) f.perm[i] = i;
  std::swap(f.perm[a], f.perm[b]);
  CHECK_FALSE(verify_automorphism(g, f));

  // broken maps fail fast: wrong size, repeated image
  VertexMap bad{VertexMap::Kind::explicit_map, std::nullopt, {0, 0}};
  CHECK_FALSE(verify_automorphism(g, bad));
}

TEST_CASE("the dual family verifies at n=2m", "[automorphism]") {
  const GrassmannGraph g(z4, 4, 2);

  const auto dual_id = automorphism_dual(g, Matrix::identity(4, z4));
  CHECK(verify_automorphism(g, dual_id));
  // with U=I it is exactly X -> X^perp
  for (u64 id = 0; id < g.size(); ++id)
    REQUIRE(g.vertex(dual_id.perm[id]) == dual_subspace(g.vertex(id)));

  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 8; ++trial) {
    const Matrix u = ztest::random_invertible(rng, 4, z4);
    REQUIRE(verify_automorphism(g, automorphism_dual(g, u)));
  }

  const GrassmannGraph g31(z4, 3, 1);
  CHECK_THROWS_AS(automorphism_dual(g31, Matrix::identity(3, z4)), DualRequiresHalfDimension);
}

TEST_CASE("kernel of the linear action is the unit scalars", "[automorphism]") {
  const GrassmannGraph g(z4, 4, 2);

  // scalar unit multiples of I act trivially
  for (u64 lambda : {1, 3}) {
    const auto f = automorphism_linear(g, Matrix::identity(4, z4).scaled(lambda));
    CHECK(is_identity_perm(f.perm));
  }
  // and so do U vs lambda*U
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = ztest::random_invertible(rng, 4, z4);
    CHECK(automorphism_linear(g, u).perm == automorphism_linear(g, u.scaled(3)).perm);
  }

  // sampled non-scalar units never act trivially
  u64 scalars = 0, tested = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix u = ztest::random_invertible(rng, 4, z4);
    bool is_scalar = true;
    for (u64 i = 0; i < 4 && is_scalar; ++i)
      for (u64 j = 0; j < 4 && is_scalar; ++j)
        if (u(i, j) != (i == j ? u(0, 0) : 0)) is_scalar = false;
    ++tested;
    if (is_scalar) {
      ++scalars;
      continue;
    }
    REQUIRE_FALSE(is_identity_perm(automorphism_linear(g, u).perm));
  }
  CHECK(tested == 300);
  // (scalar draws are astronomically unlikely; count kept for transparency)
  CHECK(scalars <= 1);
}

TEST_CASE("induced star map recovers the action on hyperplane centers", "[automorphism]") {
  const GrassmannGraph g(z4, 4, 2);
  const GrassmannGraph centers(z4, 4, 1);

  std::mt19937_64 rng(95);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix u = ztest::random_invertible(rng, 4, z4);
    const auto f = automorphism_linear(g, u);
    const auto induced = induced_star_map(g, centers, f);
    REQUIRE(induced.has_value());
    CHECK(verify_automorphism(centers, *induced));
    // the derived map is the same U acting one level down
    CHECK(induced->perm == automorphism_linear(centers, u).perm);
  }

  // the dual family maps stars to tops, so no induced star map exists
  const auto dual_id = automorphism_dual(g, Matrix::identity(4, z4));
  CHECK_FALSE(induced_star_map(g, centers, dual_id).has_value());
}

TEST_CASE("duality is a graph isomorphism onto the complementary dimension", "[automorphism]") {
  // (2,2,3,1) <-> (2,2,3,2): complete graphs on 28 vertices
  {
    const GrassmannGraph g1(z4, 3, 1), g2(z4, 3, 2);
    REQUIRE(g1.size() == 28);
    REQUIRE(g2.size() == 28);
    CHECK(verify_isomorphism(g1, g2, dual_graph_map(g1, g2)));
  }
  // (2,2,4,1) <-> (2,2,4,3): 120 vertices, complete on both sides
  {
    const GrassmannGraph g1(z4, 4, 1), g3(z4, 4, 3);
    REQUIRE(g1.size() == 120);
    REQUIRE(g3.size() == 120);
    CHECK(g1.adjacency().edge_count() == 120 * 119 / 2);
    CHECK(g3.adjacency().edge_count() == 120 * 119 / 2);
    CHECK(verify_isomorphism(g1, g3, dual_graph_map(g1, g3)));
  }
  // (2,1,4,2) onto itself: X -> X^perp is an automorphism
  {
    const GrassmannGraph g(f2, 4, 2);
    const auto map = dual_graph_map(g, g);
    VertexMap f{VertexMap::Kind::explicit_map, std::nullopt, map};
    CHECK(verify_automorphism(g, f));
    CHECK(f.perm == automorphism_dual(g, Matrix::identity(4, f2)).perm);
  }
}
