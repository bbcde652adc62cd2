// Tour of the lattice of lines in Z_4^3: enumeration, canonical shapes,
// joins and meets, and what duality does to all of it. Output is meant to be
// read; the checks sprinkled through keep the demo honest when run as a
// smoke test.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "zgrass/grassmann.hpp"
#include "zgrass/ring.hpp"
#include "zgrass/subspace.hpp"

using namespace zgrass;

namespace {

std::string row_string(const Matrix& m, u64 i) {
  std::string out = "(";
  for (u64 j = 0; j < m.cols(); ++j) {
    if (j) out += ",";
    out += std::to_string(m(i, j));
  }
  return out + ")";
}

void expect(bool ok, const char* what) {
  if (!ok) {
    std::fprintf(stderr, "demo invariant broke: %s\n", what);
    std::exit(1);
  }
}

}  // namespace

int main() {
  const RingContext z4(2, 2);
  const auto lines = enumerate_subspaces(z4, 3, 1);
  std::printf("lines in Z_4^3: %zu (closed form %llu)\n", lines.size(),
              static_cast<unsigned long long>(count_subspaces(z4, 3, 1)));
  expect(lines.size() == count_subspaces(z4, 3, 1), "line count");

  // Bucket the canonical generators by leading-unit position. Every line is
  // generated by a single unimodular row, so the pivot column classifies.
  std::map<u64, u64> by_pivot;
  for (const Subspace& l : lines) {
    const Matrix& b = l.basis();
    u64 pivot = 3;
    for (u64 j = 0; j < 3 && pivot == 3; ++j)
      if (z4.is_unit(b(0, j))) pivot = j;
    ++by_pivot[pivot];
  }
  std::printf("by pivot column:");
  for (const auto& [col, cnt] : by_pivot)
    std::printf("  col %llu: %llu", static_cast<unsigned long long>(col),
                static_cast<unsigned long long>(cnt));
  std::printf("   (16 + 8 + 4: one factor 2 per column skipped)\n\n");

  const Subspace a = subspace_from_rows({{1, 0, 0}}, z4);
  const Subspace b = subspace_from_rows({{1, 2, 0}}, z4);
  const Subspace c = subspace_from_rows({{0, 1, 0}}, z4);

  std::printf("A = span%s, B = span%s, C = span%s\n", row_string(a.basis(), 0).c_str(),
              row_string(b.basis(), 0).c_str(), row_string(c.basis(), 0).c_str());

  // A and B differ by the radical row (0,2,0): their join is not free, and
  // the point sets overlap in more than the origin even though neither
  // contains the other.
  std::printf("dim(A v B) = %llu   dim(A v C) = %llu\n",
              static_cast<unsigned long long>(join_dimension(a, b)),
              static_cast<unsigned long long>(join_dimension(a, c)));
  const auto meet_ab = intersection_module(a, b);
  std::printf("A n B has %zu points, dim %llu, %s\n", meet_ab.elements.size(),
              static_cast<unsigned long long>(meet_ab.dim),
              meet_ab.free_module ? "free" : "not free");
  expect(meet_ab.elements.size() == 2 && meet_ab.dim == 0, "A n B is {0, (2,0,0)}");

  const auto [dim_zero, set_zero] = meets_trivially(a, c);
  std::printf("A n C: dim zero? %s   only the origin? %s\n", dim_zero ? "yes" : "no",
              set_zero ? "yes" : "no");
  expect(dim_zero && set_zero, "A and C meet trivially");

  // Distance in the Grassmann graph is arithmetic: rho of the stacked bases
  // minus the common dimension. Adjacent means the join has dimension 2.
  std::printf("ad(A,B) = %llu  ad(A,C) = %llu  adjacent? %s / %s\n",
              static_cast<unsigned long long>(arithmetic_distance(a, b)),
              static_cast<unsigned long long>(arithmetic_distance(a, c)),
              grassmann_adjacent(a, b) ? "yes" : "no", grassmann_adjacent(a, c) ? "yes" : "no");
  std::printf("McCoy adjacent? A,B: %s   A,C: %s  (join free only for A,C)\n\n",
              mc_adjacent(a, b) ? "yes" : "no", mc_adjacent(a, c) ? "yes" : "no");
  expect(grassmann_adjacent(a, b) && !mc_adjacent(a, b), "A,B adjacent but join not free");
  expect(mc_adjacent(a, c), "A,C McCoy adjacent");

  // Duality sends lines to planes and reverses containment; applying it
  // twice comes back exactly.
  const Subspace ad = dual_subspace(a);
  std::printf("A^perp = rowspace of %s, %s  (dim %llu)\n", row_string(ad.basis(), 0).c_str(),
              row_string(ad.basis(), 1).c_str(), static_cast<unsigned long long>(ad.dim()));
  expect(dual_subspace(ad) == a, "duality involution");

  u64 planes = 0;
  for (const Subspace& l : lines) planes += dual_subspace(l).dim() == 2;
  std::printf("all %llu duals are planes; planes in Z_4^3: %llu\n",
              static_cast<unsigned long long>(planes),
              static_cast<unsigned long long>(count_subspaces(z4, 3, 2)));
  expect(planes == lines.size(), "duals of lines are planes");
  expect(count_subspaces(z4, 3, 2) == lines.size(), "plane count matches line count");

  std::printf("ok\n");
  return 0;
}
