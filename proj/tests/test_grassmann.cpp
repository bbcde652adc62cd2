// Grassmann graph: construction, the distance theorem, valency, stars and
// tops with their intersection laws, clique number and classification,
// independence bounds with the explicit lifted set, and McCoy machinery.
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

Subspace sub(std::initializer_list<std::initializer_list<u64>> rows, const RingContext& ctx) {
  return subspace_from_rows(rows, ctx);
}
}  // namespace

TEST_CASE("graph construction and vertex indexing", "[grassmann]") {
  const GrassmannGraph g(z4, 4, 2);
  CHECK(g.size() == 560);
  CHECK(g.size() == count_subspaces(z4, 4, 2));
  for (u64 id : {u64{0}, u64{100}, u64{559}}) CHECK(g.id_of(g.vertex(id)) == id);
  CHECK_THROWS_AS(GrassmannGraph(z4, 4, 4), ParameterRange);
  CHECK_THROWS_AS(g.id_of(sub({{1, 0, 0}}, z4)), Error);

  // complete graph cases: all distinct vertices adjacent at m=1
  const GrassmannGraph lines(z4, 3, 1);
  CHECK(lines.size() == 28);
  for (u64 a = 0; a < lines.size(); ++a)
    for (u64 b = a + 1; b < lines.size(); ++b) REQUIRE(lines.adjacent(a, b));
  CHECK(lines.adjacency().edge_count() == 28 * 27 / 2);
  CHECK(lines.graph_distance(0, 27) == 1);
}

TEST_CASE("adjacency and mc-adjacency", "[grassmann]") {
  const Subspace a = sub({{0, 0, 1, 0}, {0, 0, 0, 1}}, z4);
  const Subspace b_mc = sub({{1, 0, 1, 0}, {0, 0, 0, 1}}, z4);     // (E11, I2)
  const Subspace b_rad = sub({{2, 0, 1, 0}, {0, 0, 0, 1}}, z4);    // (2E11, I2)
  const Subspace b_far = sub({{1, 0, 0, 0}, {0, 1, 0, 0}}, z4);    // complementary

  CHECK(grassmann_adjacent(a, b_mc));
  CHECK(mc_adjacent(a, b_mc));
  CHECK(grassmann_adjacent(a, b_rad));
  CHECK_FALSE(mc_adjacent(a, b_rad));  // rk(stack) = 2 < 3
  CHECK_FALSE(grassmann_adjacent(a, b_far));
  CHECK_FALSE(grassmann_adjacent(a, a));
  CHECK_FALSE(mc_adjacent(a, a));

  // mc implies adjacent, never conversely by definition; sampled
  std::mt19937_64 rng(11);
  const GrassmannGraph g(z4, 4, 2);
  std::uniform_int_distribution<u64> pick(0, g.size() - 1);
  for (int trial = 0; trial < 400; ++trial) {
    const Subspace& x = g.vertex(pick(rng));
    const Subspace& y = g.vertex(pick(rng));
    if (mc_adjacent(x, y)) CHECK(grassmann_adjacent(x, y));
    CHECK(grassmann_adjacent(x, y) == (arithmetic_distance(x, y) == 1));
  }
}

TEST_CASE("BFS distance equals arithmetic distance everywhere", "[grassmann]") {
  const GrassmannGraph g(z4, 4, 2);
  const BitGraph& adj = g.adjacency();
  i64 diameter = 0;
  for (u64 a = 0; a < g.size(); ++a) {
    const auto dist = adj.bfs_distances(a);
    for (u64 b = 0; b < g.size(); ++b) {
      REQUIRE(dist[b] == static_cast<i64>(arithmetic_distance(g.vertex(a), g.vertex(b))));
      diameter = std::max(diameter, dist[b]);
    }
  }
  CHECK(diameter == 2);  // min(m, n-m)

  const Subspace a = sub({{0, 0, 1, 0}, {0, 0, 0, 1}}, z4);
  const Subspace b = sub({{2, 0, 1, 0}, {0, 2, 0, 1}}, z4);  // (diag(2,2), I2)
  CHECK(g.graph_distance(g.id_of(a), g.id_of(b)) == 2);
  CHECK(g.graph_distance(g.id_of(a), g.id_of(a)) == 0);
}

TEST_CASE("valency formula matches every measured degree", "[grassmann]") {
  CHECK(valency_formula(z4, 4, 2) == 153);  // 144 mc-class + 9 depth-one class
  CHECK(valency_formula(f2, 4, 2) == 18);   // field case: p [m 1]_p [n-m 1]_p
  CHECK(valency_formula(RingContext(3, 2), 4, 2) == 1328);
  // duality isomorphism G(n,m) ~ G(n,n-m) forces equal valencies
  CHECK(valency_formula(z4, 3, 1) == valency_formula(z4, 3, 2));
  CHECK(valency_formula(RingContext(2, 3), 3, 1) == valency_formula(RingContext(2, 3), 3, 2));

  {
    const GrassmannGraph g(z4, 4, 2);
    for (u64 v = 0; v < g.size(); ++v) REQUIRE(g.adjacency().degree(v) == 153);
    CHECK(g.size() * 153 == 2 * g.adjacency().edge_count());
  }
  {
    const GrassmannGraph g(f2, 4, 2);
    CHECK(g.size() == 35);
    for (u64 v = 0; v < g.size(); ++v) REQUIRE(g.degree(v) == 18);
  }
  {
    const GrassmannGraph g(z4, 3, 2);  // small enough for a full sweep
    for (u64 v = 0; v < g.size(); ++v) REQUIRE(g.degree(v) == valency_formula(z4, 3, 2));
  }
  {
    const GrassmannGraph g(RingContext(2, 3), 3, 1);  // deeper chain ring, s = 3
    REQUIRE(g.size() == 112);
    for (u64 v = 0; v < g.size(); ++v) REQUIRE(g.degree(v) == valency_formula(RingContext(2, 3), 3, 1));
  }
  {
    // (3,2,4,2) has 10530 vertices; spot-check one degree lazily
    const GrassmannGraph g(RingContext(3, 2), 4, 2);
    REQUIRE(g.size() == 10530);
    CHECK(g.degree(0) == 1328);
  }
}

TEST_CASE("stars and tops: sizes, cliques, maximality, duality", "[grassmann]") {
  CHECK(star_size_formula(z4, 4, 2) == 28);
  CHECK(top_size_formula(z4, 2) == 28);
  CHECK(star_size_formula(RingContext(2, 2), 5, 2) == 120);

  const GrassmannGraph g(z4, 4, 2);
  const Subspace p = sub({{0, 0, 0, 1}}, z4);
  const Subspace q = sub({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, z4);

  const auto st = star(p, 2);
  REQUIRE(st.size() == 28);
  for (const Subspace& x : st) REQUIRE(x.contains_subspace(p));
  const auto tp = top(q, 2);
  REQUIRE(tp.size() == 28);
  for (const Subspace& x : tp) REQUIRE(q.contains_subspace(x));

  // both are cliques and maximal (no 29th vertex joins)
  for (const auto& fam : {st, tp}) {
    for (u64 i = 0; i < fam.size(); ++i)
      for (u64 j = i + 1; j < fam.size(); ++j) REQUIRE(grassmann_adjacent(fam[i], fam[j]));
    for (u64 v = 0; v < g.size(); ++v) {
      const Subspace& cand = g.vertex(v);
      if (std::binary_search(fam.begin(), fam.end(), cand)) continue;
      bool extends = true;
      for (const Subspace& x : fam)
        if (!grassmann_adjacent(cand, x)) {
          extends = false;
          break;
        }
      REQUIRE_FALSE(extends);
    }
  }

  // at (2,2,5,2) the star grows to 120 while the top stays at 28
  CHECK(star(sub({{0, 0, 0, 0, 1}}, z4), 2).size() == 120);
  CHECK(top(sub({{0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}}, z4), 2).size() == 28);

  // duality at n=2m: (star(P))^perp = top(P^perp)
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    Subspace center = sub({{0, 0, 0, 1}}, z4);
    if (trial > 0) {
      for (;;) {
        const Matrix x = ztest::random_matrix(rng, 1, 4, z4);
        if (mccoy_rank(x) == 1) {
          center = canonicalize_subspace(x);
          break;
        }
      }
    }
    std::vector<Subspace> dualized;
    for (const Subspace& x : star(center, 2)) dualized.push_back(dual_subspace(x));
    std::sort(dualized.begin(), dualized.end());
    CHECK(dualized == top(dual_subspace(center), 2));
  }

  // there are 120 distinct stars and 120 distinct tops, all 28-cliques
  const auto centers = enumerate_subspaces(z4, 4, 1);
  REQUIRE(centers.size() == 120);
  std::set<std::vector<Subspace>> stars_seen;
  for (const Subspace& c : centers) {
    const auto s = star(c, 2);
    REQUIRE(s.size() == 28);
    stars_seen.insert(s);
  }
  CHECK(stars_seen.size() == 120);
  const auto covers = enumerate_subspaces(z4, 4, 3);
  REQUIRE(covers.size() == 120);
  std::set<std::vector<Subspace>> tops_seen;
  for (const Subspace& c : covers) {
    const auto t = top(c, 2);
    REQUIRE(t.size() == 28);
    tops_seen.insert(t);
  }
  CHECK(tops_seen.size() == 120);
}

TEST_CASE("clique number: formula, search, and classification", "[grassmann]") {
  CHECK(clique_number_formula(z4, 4, 2) == 28);
  CHECK(clique_number_formula(f2, 4, 2) == 7);
  CHECK(clique_number_formula(f2, 5, 2) == 15);
  CHECK_THROWS_AS(clique_number_formula(z4, 3, 2), ParameterRange);

  // (2,1,4,2): omega = 7, exactly 30 maximum cliques = 15 stars + 15 tops
  {
    const GrassmannGraph g(f2, 4, 2);
    const BitGraph& adj = g.adjacency();
    REQUIRE(maximum_clique(adj).size() == 7);
    CHECK_FALSE(CliqueSearch(adj).find_clique_of_size(8).has_value());

    u64 stars_found = 0, tops_found = 0, total = 0;
    CliqueSearch(adj).for_each_clique_of_size(7, [&](const std::vector<u64>& ids) {
      ++total;
      std::vector<Subspace> c;
      for (u64 id : ids) c.push_back(g.vertex(id));
      const auto cls = classify_maximum_clique(g, c);
      if (cls.verdict == CliqueVerdict::star) {
        ++stars_found;
        for (const Subspace& x : c) REQUIRE(x.contains_subspace(*cls.center));
      } else if (cls.verdict == CliqueVerdict::top) {
        ++tops_found;
        for (const Subspace& x : c) REQUIRE(cls.cover->contains_subspace(x));
      }
    });
    CHECK(total == 30);
    CHECK(stars_found == 15);
    CHECK(tops_found == 15);
  }

  // (2,2,4,2): exact search meets the formula, witness classifies
  {
    const GrassmannGraph g(z4, 4, 2);
    const BitGraph& adj = g.adjacency();
    const auto best = maximum_clique(adj);
    REQUIRE(best.size() == 28);
    CHECK_FALSE(CliqueSearch(adj).find_clique_of_size(29).has_value());
    std::vector<Subspace> c;
    for (u64 id : best) c.push_back(g.vertex(id));
    const auto cls = classify_maximum_clique(g, c);
    CHECK((cls.verdict == CliqueVerdict::star || cls.verdict == CliqueVerdict::top));

    // constructed families classify as themselves
    const Subspace p = sub({{0, 0, 0, 1}}, z4);
    const auto st_cls = classify_maximum_clique(g, star(p, 2));
    REQUIRE(st_cls.verdict == CliqueVerdict::star);
    CHECK(*st_cls.center == p);
    const Subspace q = sub({{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, z4);
    const auto tp_cls = classify_maximum_clique(g, top(q, 2));
    REQUIRE(tp_cls.verdict == CliqueVerdict::top);
    CHECK(*tp_cls.cover == q);

    // a maximal-but-not-maximum clique classifies NotMaximum
    bool found_small = false;
    for (u64 seed = 1; seed < g.size() && !found_small; ++seed) {
      if (!adj.adjacent(0, seed) || !mc_adjacent(g.vertex(0), g.vertex(seed))) continue;
      for (u64 third = seed + 1; third < g.size() && !found_small; ++third) {
        if (!adj.adjacent(0, third) || !adj.adjacent(seed, third)) continue;
        const auto clique = greedy_maximal_clique(adj, {0, seed, third});
        if (clique.size() < 28) {
          found_small = true;
          std::vector<Subspace> cm;
          for (u64 id : clique) cm.push_back(g.vertex(id));
          CHECK(classify_maximum_clique(g, cm).verdict == CliqueVerdict::not_maximum);
        }
      }
    }
    CHECK(found_small);

    // projection sends a star to a field star (maximum clique downstairs)
    std::vector<Subspace> projected;
    for (const Subspace& x : star(p, 2)) projected.push_back(project_subspace(x));
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
    const auto field_star = star(project_subspace(p), 2);
    CHECK(projected == field_star);
    CHECK(projected.size() == 7);
  }
}

TEST_CASE("independence bounds and the lifted independent set", "[grassmann]") {
  // field side: alpha(G_2(4,2)) = 5 by exact search on 35 vertices
  const GrassmannGraph gf(f2, 4, 2);
  const auto field_ind = maximum_independent_set(gf.adjacency());
  REQUIRE(field_ind.size() == 5);

  CHECK(independence_bounds(z4, 4, 2, 5) == std::pair<u64, u64>{20, 20});
  CHECK(independence_bounds(f2, 4, 2, 5) == std::pair<u64, u64>{5, 5});  // multiplier 1, [4 2]_2 / [3 1]_2
  CHECK_THROWS_AS(independence_bounds(z4, 3, 2, 1), ParameterRange);

  // build the 20-set: field spread x bilinear independent family over Z_2
  std::vector<Subspace> field_set;
  for (u64 id : field_ind) field_set.push_back(gf.vertex(id));
  const BilinearGraph bg(f2, 2, 2);
  const auto bilinear_ind = bf_max_independent_set(bg);
  REQUIRE(bilinear_ind.size() == 4);

  const auto lifted = lifted_independent_set(z4, 4, 2, field_set, bilinear_ind);
  REQUIRE(lifted.size() == 20);
  const std::set<Subspace> distinct(lifted.begin(), lifted.end());
  CHECK(distinct.size() == 20);
  for (u64 i = 0; i < lifted.size(); ++i)
    for (u64 j = i + 1; j < lifted.size(); ++j) REQUIRE_FALSE(grassmann_adjacent(lifted[i], lifted[j]));

  // each lift projects back onto a member of the field set
  std::set<Subspace> field_sorted(field_set.begin(), field_set.end());
  for (const Subspace& x : lifted) REQUIRE(field_sorted.count(project_subspace(x)) == 1);

  // s=1 passthrough
  const auto passthrough = lifted_independent_set(f2, 4, 2, field_set, {});
  CHECK(passthrough.size() == 5);
}

TEST_CASE("star intersections follow the adjacency of their centers", "[grassmann]") {
  const GrassmannGraph centers(z4, 4, 1);
  std::mt19937_64 rng(8080);
  std::uniform_int_distribution<u64> pick(0, centers.size() - 1);
  u64 seen_singleton = 0, seen_join = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Subspace& p1 = centers.vertex(pick(rng));
    const Subspace& p2 = centers.vertex(pick(rng));
    if (p1 == p2) continue;
    const auto meet = star_intersection(p1, p2, 2);
    if (grassmann_adjacent(p1, p2)) {
      REQUIRE_FALSE(meet.empty());
      CHECK(meet == enumerate_joins(p1, p2));  // the join set, exactly
      ++seen_join;
      if (mc_adjacent(p1, p2)) {
        REQUIRE(meet.size() == 1);
        CHECK(meet.front() == vertex_from_mc_pair(p1, p2));
        ++seen_singleton;
      } else {
        CHECK(meet.size() > 1);
      }
    } else {
      CHECK(meet.empty());
    }
  }
  CHECK(seen_join > 10);
  CHECK(seen_singleton > 3);
  CHECK_THROWS_AS(star_intersection(centers.vertex(0), centers.vertex(0), 2), ParameterRange);
}

TEST_CASE("star-top intersections have the fixed size", "[grassmann]") {
  // |star(P) ^ top(Q)| = p^{s-1}(p+1) = 6 whenever P < Q at (2,2,4,2)
  const auto ps = enumerate_subspaces(z4, 4, 1);
  const auto qs = enumerate_subspaces(z4, 4, 3);
  std::mt19937_64 rng(110);
  std::uniform_int_distribution<u64> pi(0, ps.size() - 1), qi(0, qs.size() - 1);
  u64 nonempty = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const Subspace& p = ps[pi(rng)];
    const Subspace& q = qs[qi(rng)];
    const auto meet = star_top_intersection(p, q, 2);
    if (q.contains_subspace(p)) {
      REQUIRE(meet.size() == 6);
      ++nonempty;
      for (const Subspace& x : meet) {
        CHECK(x.contains_subspace(p));
        CHECK(q.contains_subspace(x));
      }
    } else {
      CHECK(meet.empty());
    }
  }
  CHECK(nonempty > 5);
}

TEST_CASE("mc paths interpolate any pair through mc-adjacent steps", "[grassmann]") {
  const GrassmannGraph g(z4, 4, 2);

  // adjacent but not mc-adjacent: path of length 2 through the interpolant
  const Subspace a = sub({{0, 0, 1, 0}, {0, 0, 0, 1}}, z4);
  const Subspace b = sub({{2, 0, 1, 0}, {0, 0, 0, 1}}, z4);
  REQUIRE_FALSE(mc_adjacent(a, b));
  const auto path1 = mc_path(a, b);
  REQUIRE(path1.size() == 3);
  CHECK(path1.front() == a);
  CHECK(path1.back() == b);
  CHECK(mc_adjacent(path1[0], path1[1]));
  CHECK(mc_adjacent(path1[1], path1[2]));

  // mc-adjacent pair still gets the lemma-form length-2 path
  const Subspace bmc = sub({{1, 0, 1, 0}, {0, 0, 0, 1}}, z4);
  CHECK(mc_path(a, bmc).size() == 3);

  // distance-2 pairs: 5 vertices, 4 mc-adjacent steps
  const Subspace bfar = sub({{1, 0, 0, 0}, {0, 1, 0, 0}}, z4);
  REQUIRE(arithmetic_distance(a, bfar) == 2);
  const auto path2 = mc_path(a, bfar);
  REQUIRE(path2.size() == 5);
  CHECK(path2.front() == a);
  CHECK(path2.back() == bfar);
  for (u64 i = 0; i + 1 < path2.size(); ++i) REQUIRE(mc_adjacent(path2[i], path2[i + 1]));

  // random pairs: length 2*d(A,B), all steps mc-adjacent, all vertices valid
  std::mt19937_64 rng(321);
  std::uniform_int_distribution<u64> pick(0, g.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Subspace& x = g.vertex(pick(rng));
    const Subspace& y = g.vertex(pick(rng));
    if (x == y) continue;
    const auto path = mc_path(x, y);
    REQUIRE(path.size() == 2 * arithmetic_distance(x, y) + 1);
    CHECK(path.front() == x);
    CHECK(path.back() == y);
    for (u64 i = 0; i + 1 < path.size(); ++i) REQUIRE(mc_adjacent(path[i], path[i + 1]));
  }

  CHECK_THROWS_AS(mc_path(a, a), ParameterRange);
}

TEST_CASE("mc pairs of hyperplanes pin down their join", "[grassmann]") {
  // the lemma-shape example: P1 = [e4], P2 = [e3] join to (0, I_2)
  const Subspace p1 = sub({{0, 0, 0, 1}}, z4);
  const Subspace p2 = sub({{0, 0, 1, 0}}, z4);
  REQUIRE(mc_adjacent(p1, p2));
  CHECK(vertex_from_mc_pair(p1, p2) == sub({{0, 0, 1, 0}, {0, 0, 0, 1}}, z4));

  // adjacent-but-not-mc pair is rejected (the non-unique join pair in Z_8^3)
  const RingContext z8(2, 3);
  const Subspace alpha = sub({{1, 2, 0}}, z8);
  const Subspace beta = sub({{1, 4, 0}}, z8);
  REQUIRE(grassmann_adjacent(alpha, beta));
  CHECK_THROWS_AS(vertex_from_mc_pair(alpha, beta), NotMcAdjacent);

  // sampled mc pairs: the output contains both inputs and is the unique join
  const GrassmannGraph centers(z4, 4, 1);
  std::mt19937_64 rng(44);
  std::uniform_int_distribution<u64> pick(0, centers.size() - 1);
  u64 seen = 0;
  while (seen < 40) {
    const Subspace& x = centers.vertex(pick(rng));
    const Subspace& y = centers.vertex(pick(rng));
    if (x == y || !mc_adjacent(x, y)) continue;
    ++seen;
    const Subspace joined = vertex_from_mc_pair(x, y);
    REQUIRE(joined.dim() == 2);
    CHECK(joined.contains_subspace(x));
    CHECK(joined.contains_subspace(y));
    CHECK(enumerate_joins(x, y) == std::vector<Subspace>{joined});
  }
}

TEST_CASE("mc valency formula matches measured mc degrees", "[grassmann]") {
  CHECK(mc_valency_formula(z4, 4, 2) == 144);
  CHECK(mc_valency_formula(f2, 4, 2) == 18);  // s = 1: mc-adjacency == adjacency
  CHECK(mc_valency_formula(f2, 4, 2) == valency_formula(f2, 4, 2));

  const GrassmannGraph g(z4, 4, 2);
  const u64 base = g.mc_degree(0);
  CHECK(base == 144);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<u64> pick(1, g.size() - 1);
  for (int trial = 0; trial < 10; ++trial) REQUIRE(g.mc_degree(pick(rng)) == base);

  const GrassmannGraph h(RingContext(2, 3), 3, 2);  // s = 3 spot check
  REQUIRE(h.mc_degree(0) == mc_valency_formula(RingContext(2, 3), 3, 2));
}
