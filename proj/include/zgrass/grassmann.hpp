// Grassmann graph over Z_{p^s}: vertices are the m-subspaces of Z_{p^s}^n,
// edges join subspaces whose span has dimension m+1 (equivalently arithmetic
// distance 1). Carries the valency/clique/independence formulas with their
// measured counterparts, stars and tops with their intersection laws, the
// McCoy-adjacency layer (paths, unique joins), and the two automorphism
// families X -> XU and X -> (XU)^perp with an exact verifier.
#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "zgrass/bilinear.hpp"
#include "zgrass/bitgraph.hpp"
#include "zgrass/subspace.hpp"

namespace zgrass {

// All q^m points of the row space, sorted. Desk-scale only (budget-charged).
inline std::vector<std::vector<u64>> subspace_points(const Subspace& s) {
  const RingContext& ctx = s.context();
  const u64 n = s.ambient(), m = s.dim();
  u64 total = 1;
  for (u64 i = 0; i < m; ++i) total = detail::checked_mul(total, ctx.q);
  charge_budget(total);
  std::set<std::vector<u64>> pts;
  std::vector<u64> coeff(m, 0);
  for (;;) {
    std::vector<u64> v(n, 0);
    for (u64 j = 0; j < n; ++j) {
      u64 acc = 0;
      for (u64 i = 0; i < m; ++i) acc = ctx.add(acc, ctx.mul(coeff[i], s.basis()(i, j)));
      v[j] = acc;
    }
    pts.insert(std::move(v));
    u64 i = 0;
    while (i < m) {
      if (++coeff[i] < ctx.q) break;
      coeff[i] = 0;
      ++i;
    }
    if (i == m) break;
  }
  return {pts.begin(), pts.end()};
}

// Row space of an arbitrary stack of vectors, provided it is a free module
// with a unimodular basis; nullopt when the row space is not a subspace.
// From A = P diag(I_r, p^k..., 0) Q the row space is spanned by the first
// r rows of Q, which are rows of an invertible matrix, hence unimodular.
inline std::optional<Subspace> module_from_rows(const Matrix& stacked) {
  const NormalForm nf = canonical_diagonalize(stacked);
  if (!nf.exponents.empty()) return std::nullopt;
  return canonicalize_subspace(nf.Q.submatrix(0, nf.r, 0, stacked.cols()));
}

inline bool grassmann_adjacent(const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && join_dimension(a, b) == a.dim() + 1;
}

// Adjacent with the stacked basis additionally of full McCoy rank m+1; such
// pairs have a unique join.
inline bool mc_adjacent(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  const Matrix stack = vstack(a.basis(), b.basis());
  return inner_rank(stack) == a.dim() + 1 && mccoy_rank(stack) == a.dim() + 1;
}

class GrassmannGraph {
 public:
  GrassmannGraph(const RingContext& ctx, u64 n, u64 m) : ctx_(ctx), n_(n), m_(m) {
    if (m < 1 || m >= n) throw ParameterRange("grassmann graph needs 1 <= m < n");
    verts_ = enumerate_subspaces(ctx, n, m);
    for (u64 i = 0; i < verts_.size(); ++i) index_.emplace(verts_[i].basis(), i);
  }

  const RingContext& context() const { return ctx_; }
  u64 ambient() const { return n_; }
  u64 dim() const { return m_; }
  u64 size() const { return verts_.size(); }
  const Subspace& vertex(u64 id) const { return verts_[id]; }
  const std::vector<Subspace>& vertices() const { return verts_; }

  u64 id_of(const Subspace& s) const {
    const auto it = index_.find(s.basis());
    if (it == index_.end()) throw Error("subspace is not a vertex of this graph");
    return it->second;
  }

  bool adjacent(u64 a, u64 b) const {
    if (adj_) return adj_->adjacent(a, b);
    return grassmann_adjacent(verts_[a], verts_[b]);
  }

  // Degree by direct neighbor scan; works without materialization.
  u64 degree(u64 id) const {
    if (adj_) return adj_->degree(id);
    u64 d = 0;
    charge_budget(size());
    for (u64 v = 0; v < size(); ++v)
      if (v != id && grassmann_adjacent(verts_[id], verts_[v])) ++d;
    return d;
  }

  // Bitset adjacency, built on first use. Kept to instances whose rows fit
  // comfortably in memory; larger graphs answer adjacency queries lazily.
  const BitGraph& adjacency() const {
    if (!adj_) {
      if (size() > kMaterializeLimit) throw ParameterRange("graph too large to materialize adjacency");
      charge_budget(size() * (size() - 1) / 2);
      BitGraph g(size());
      for (u64 a = 0; a < size(); ++a)
        for (u64 b = a + 1; b < size(); ++b)
          if (grassmann_adjacent(verts_[a], verts_[b])) g.add_edge(a, b);
      adj_ = std::move(g);
    }
    return *adj_;
  }

  i64 graph_distance(u64 a, u64 b) const { return adjacency().bfs_distances(a)[b]; }

  u64 mc_degree(u64 id) const {
    u64 d = 0;
    charge_budget(size());
    for (u64 v = 0; v < size(); ++v)
      if (v != id && mc_adjacent(verts_[id], verts_[v])) ++d;
    return d;
  }

  static constexpr u64 kMaterializeLimit = 20000;

 private:
  RingContext ctx_;
  u64 n_, m_;
  std::vector<Subspace> verts_;
  std::map<Matrix, u64> index_;
  mutable std::optional<BitGraph> adj_;
};

// Degree formula:  [m 1]_p [n-m 1]_p ( p^{(s-1)(n-1)+1} + (p-1) sum_{i<s-1} p^{i(n-1)} ).
//
// Derivation: neighbours of A = rowspace(0, I_m) are exactly the vertices whose
// projection onto the complementary n-m coordinates is a cyclic module
// p^j * (unimodular line), 0 <= j < s.  Counting by class j:
//   j = 0:   p^{(s-1)(n-1)+1} [m 1]_p [n-m 1]_p   (these are the mc-neighbours),
//   j >= 1:  (p-1) [m 1]_p [n-m 1]_p p^{(s-1-j)(n-1)}.
// The expression is symmetric in m <-> n-m, as the duality isomorphism
// G(n,m) ~ G(n,n-m) requires.  Cross-checked against measured degrees on
// eleven parameter points (see tests).
inline u64 valency_formula(const RingContext& ctx, u64 n, u64 m) {
  if (m < 1 || m >= n) throw ParameterRange("valency_formula needs 1 <= m < n");
  u64 geom = 0;  // sum_{i=0}^{s-2} p^{i(n-1)}
  for (u64 i = 0; i + 1 < ctx.s; ++i) {
    const u64 term = detail::checked_p_pow(ctx.p, i * (n - 1));
    if (geom > std::numeric_limits<u64>::max() - term) throw DimensionOverflow("valency_formula overflow");
    geom += term;
  }
  const u64 lead = detail::checked_p_pow(ctx.p, (ctx.s - 1) * (n - 1) + 1);
  const u64 lines = detail::checked_mul(gaussian_binomial(m, 1, ctx.p),
                                        gaussian_binomial(n - m, 1, ctx.p));
  return detail::checked_mul(lines, lead + detail::checked_mul(ctx.p - 1, geom));
}

// Number of mc-adjacent neighbours of a vertex: the j = 0 class above, i.e.
// neighbours whose complementary projection is generated by a unimodular row.
// Collapses to the full valency when s = 1 (mc-adjacency == adjacency there).
inline u64 mc_valency_formula(const RingContext& ctx, u64 n, u64 m) {
  if (m < 1 || m >= n) throw ParameterRange("mc_valency_formula needs 1 <= m < n");
  return detail::checked_mul(detail::checked_p_pow(ctx.p, (ctx.s - 1) * (n - 1) + 1),
                             detail::checked_mul(gaussian_binomial(m, 1, ctx.p),
                                                 gaussian_binomial(n - m, 1, ctx.p)));
}

// Star: all m-subspaces containing a fixed (m-1)-subspace. Top: all
// m-subspaces inside a fixed (m+1)-subspace. Sorted canonically.
inline std::vector<Subspace> star(const Subspace& p, u64 m) {
  if (p.dim() + 1 != m) throw ParameterRange("star center must have dimension m-1");
  std::vector<Subspace> out = subspaces_containing(p, m);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Subspace> top(const Subspace& q, u64 m) {
  if (q.dim() != m + 1) throw ParameterRange("top cover must have dimension m+1");
  std::vector<Subspace> out = subspaces_within(q, m);
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 star_size_formula(const RingContext& ctx, u64 n, u64 m) {
  return detail::checked_mul(detail::checked_p_pow(ctx.p, (ctx.s - 1) * (n - m)),
                             gaussian_binomial(n - m + 1, 1, ctx.p));
}

inline u64 top_size_formula(const RingContext& ctx, u64 m) {
  return detail::checked_mul(detail::checked_p_pow(ctx.p, (ctx.s - 1) * m),
                             gaussian_binomial(m + 1, 1, ctx.p));
}

// For n >= 2m the clique number equals the star size; below that use the
// duality X -> X^perp onto G(n, n-m) first.
inline u64 clique_number_formula(const RingContext& ctx, u64 n, u64 m) {
  if (n < 2 * m) throw ParameterRange("clique number formula needs n >= 2m; dualize first");
  return star_size_formula(ctx, n, m);
}

// Independence bounds for n >= 2m, given the field graph's independence
// number: multiplier * alpha(G_p) from the explicit lifted construction below,
// and |V| / omega from vertex transitivity.
inline std::pair<u64, u64> independence_bounds(const RingContext& ctx, u64 n, u64 m, u64 field_alpha) {
  if (n < 2 * m) throw ParameterRange("independence bounds need n >= 2m");
  const u64 mult = detail::checked_p_pow(ctx.p, (ctx.s - 1) * (m - 1) * (n - m));
  const u64 lower = detail::checked_mul(mult, field_alpha);
  const u64 upper = detail::checked_mul(mult, gaussian_binomial(n, m, ctx.p)) /
                    gaussian_binomial(n - m + 1, 1, ctx.p);
  return {lower, upper};
}

// Lift a field-graph independent set to Z_{p^s}: write each member as
// (0, I_m) Q_t, then attach every matrix of a pairwise non-adjacent family of
// the bilinear forms graph over Z_{p^{s-1}} as a radical block:
// (p P_i, I_m) Q_t. Same-Q pairs stay non-adjacent because rho(p(P_i - P_j))
// is at least 2; cross-Q pairs because the field McCoy rank already exceeds
// m+1 and radical perturbations cannot lower it.
inline std::vector<Subspace> lifted_independent_set(const RingContext& ctx, u64 n, u64 m,
                                                    const std::vector<Subspace>& field_set,
                                                    const std::vector<Matrix>& bilinear_set) {
  const RingContext field(ctx.p, 1);
  if (ctx.s == 1) {
    std::vector<Subspace> out;
    for (const Subspace& b : field_set) out.push_back(canonicalize_subspace(reread_in(b.basis(), ctx)));
    return out;
  }
  const RingContext inner(ctx.p, ctx.s - 1);
  std::vector<Matrix> radicals = bilinear_set;
  if (radicals.empty()) radicals.push_back(Matrix(m, n - m, inner));
  std::vector<Subspace> out;
  for (const Subspace& bt : field_set) {
    if (bt.context().q != field.q || bt.ambient() != n || bt.dim() != m)
      throw ParameterRange("field independent set must consist of m-subspaces over the residue field");
    const Completion comp = complete_to_invertible(bt.basis());
    const Matrix qt = reread_in(comp.V, ctx);
    for (const Matrix& pi : radicals) {
      if (pi.rows() != m || pi.cols() != n - m)
        throw ParameterRange("bilinear family must be m x (n-m) over Z_{p^{s-1}}");
      Matrix left(m, n - m, ctx);
      for (u64 i = 0; i < m; ++i)
        for (u64 j = 0; j < n - m; ++j) left.set(i, j, ctx.reduce(ctx.p * pi(i, j)));
      out.push_back(canonicalize_subspace(hstack(left, Matrix::identity(m, ctx)) * qt));
    }
  }
  return out;
}

enum class CliqueVerdict { star, top, not_maximum };

struct MaxCliqueClassification {
  CliqueVerdict verdict;
  std::optional<Subspace> center;  // the (m-1)-subspace when verdict == star
  std::optional<Subspace> cover;   // the (m+1)-subspace when verdict == top
};

// Test a vertex set against the two maximum-clique families. Size must equal
// the clique number and the set must be a clique; then the common
// intersection of the members either is a free (m-1)-subspace whose star
// reproduces the set, or the span of the members is a free (m+1)-subspace
// whose top does. A maximum clique matching neither would contradict the
// classification theorem, so that case throws rather than mislabeling.
inline MaxCliqueClassification classify_maximum_clique(const GrassmannGraph& g,
                                                       const std::vector<Subspace>& clique) {
  const RingContext& ctx = g.context();
  const u64 n = g.ambient(), m = g.dim();
  const u64 omega = clique_number_formula(ctx, n, m);
  std::vector<Subspace> sorted = clique;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() != omega) return {CliqueVerdict::not_maximum, std::nullopt, std::nullopt};
  for (u64 i = 0; i < sorted.size(); ++i)
    for (u64 j = i + 1; j < sorted.size(); ++j)
      if (!grassmann_adjacent(sorted[i], sorted[j]))
        return {CliqueVerdict::not_maximum, std::nullopt, std::nullopt};

  // star test: common points of all members
  std::vector<std::vector<u64>> common = subspace_points(sorted.front());
  for (u64 i = 1; i < sorted.size() && !common.empty(); ++i) {
    std::vector<std::vector<u64>> kept;
    for (const auto& v : common)
      if (sorted[i].contains(v)) kept.push_back(v);
    common = std::move(kept);
  }
  if (!common.empty()) {
    Matrix stacked(common.size(), n, ctx);
    for (u64 i = 0; i < common.size(); ++i) stacked.set_row(i, common[i]);
    if (const auto p = module_from_rows(stacked); p && p->dim() == m - 1 && star(*p, m) == sorted)
      return {CliqueVerdict::star, *p, std::nullopt};
  }

  // top test: span of all members
  Matrix bases(sorted.size() * m, n, ctx);
  for (u64 i = 0; i < sorted.size(); ++i) bases.paste(i * m, 0, sorted[i].basis());
  if (const auto q = module_from_rows(bases); q && q->dim() == m + 1 && top(*q, m) == sorted)
    return {CliqueVerdict::top, std::nullopt, *q};

  throw Error("maximum clique matches neither the star nor the top family");
}

// Intersection of two distinct stars: empty unless the centers are adjacent
// in G(n, m-1), in which case it is the join set of the centers, a singleton
// exactly when the centers are McCoy adjacent.
inline std::vector<Subspace> star_intersection(const Subspace& p1, const Subspace& p2, u64 m) {
  if (p1 == p2) throw ParameterRange("star_intersection needs distinct centers");
  const std::vector<Subspace> s1 = star(p1, m), s2 = star(p2, m);
  std::vector<Subspace> out;
  std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(out));
  return out;
}

// Intersection of a star and a top: empty unless P < Q, and then of size
// p^{s-1}(p+1) independently of the choice.
inline std::vector<Subspace> star_top_intersection(const Subspace& p, const Subspace& q, u64 m) {
  const std::vector<Subspace> s = star(p, m), t = top(q, m);
  std::vector<Subspace> out;
  std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(out));
  return out;
}

// The unique m-subspace containing a McCoy-adjacent pair of (m-1)-subspaces:
// their stacked bases have inner rank = McCoy rank = m, so the row space is
// free of dimension m and is the singleton join.
inline Subspace vertex_from_mc_pair(const Subspace& p1, const Subspace& p2) {
  if (p1.dim() != p2.dim() || p1.ambient() != p2.ambient())
    throw ParameterRange("vertex_from_mc_pair needs equal-dimensional subspaces");
  if (!mc_adjacent(p1, p2)) throw NotMcAdjacent();
  const auto joined = module_from_rows(vstack(p1.basis(), p2.basis()));
  if (!joined || joined->dim() != p1.dim() + 1) throw Error("mc pair did not span a free module");
  return *joined;
}

// A 2k-step walk between vertices at distance k whose consecutive pairs are
// all McCoy adjacent. From A = (0, I_m) U and B = (D, I_m) U with
// D = diag(p^{e_1}, ..., p^{e_k}, 0): walk the diagonal entries in one at a
// time, and between consecutive partial sums insert the interpolant that adds
// a unit at a spare column of the same row — the two differences then each
// contain a unit row, which forces both inner and McCoy rank to m+1.
inline std::vector<Subspace> mc_path(const Subspace& a, const Subspace& b) {
  const RingContext& ctx = a.context();
  const u64 n = a.ambient(), m = a.dim();
  if (b.dim() != m || b.ambient() != n) throw ParameterRange("mc_path needs equal-dimensional vertices");
  if (a == b) throw ParameterRange("mc_path needs distinct vertices");
  if (n < m + 2) throw ParameterRange("mc_path interpolation needs n >= m+2");
  const CanonicalPair cp = canonical_pair(a, b);
  const u64 k = cp.exponents.size();

  // rows of (D', I_m) U for a given sparse D' block (entries at (row, col))
  const auto assemble = [&](const std::vector<std::pair<std::pair<u64, u64>, u64>>& entries) {
    Matrix rows(m, n, ctx);
    for (u64 i = 0; i < m; ++i)
      for (u64 j = 0; j < n; ++j) rows.set(i, j, cp.U(n - m + i, j));
    for (const auto& [pos, val] : entries)
      for (u64 j = 0; j < n; ++j)
        rows.set(pos.first, j, ctx.add(rows(pos.first, j), ctx.mul(val, cp.U(pos.second, j))));
    return canonicalize_subspace(rows);
  };

  std::vector<std::pair<std::pair<u64, u64>, u64>> diag;
  std::vector<Subspace> path{a};
  for (u64 step = 0; step < k; ++step) {
    const u64 spare = (step == 0) ? 1 : 0;  // any D-block column other than `step`
    auto with_unit = diag;
    with_unit.push_back({{step, step}, ctx.p_power(cp.exponents[step])});
    with_unit.push_back({{step, spare}, 1});
    path.push_back(assemble(with_unit));  // interpolant
    diag.push_back({{step, step}, ctx.p_power(cp.exponents[step])});
    path.push_back(assemble(diag));  // next partial vertex; the last one is b
  }
  if (path.back() != b) throw Error("mc_path failed to land on its endpoint");
  return path;
}

// --- automorphism machinery ---

struct VertexMap {
  enum class Kind { linear, dual_linear, explicit_map } kind;
  std::optional<Matrix> U;
  std::vector<u64> perm;  // perm[id] = image id
};

inline VertexMap automorphism_linear(const GrassmannGraph& g, const Matrix& u) {
  if (!is_invertible(u)) throw NotInvertible("automorphism_linear needs an invertible U");
  VertexMap f{VertexMap::Kind::linear, u, {}};
  f.perm.reserve(g.size());
  for (u64 id = 0; id < g.size(); ++id)
    f.perm.push_back(g.id_of(canonicalize_subspace(g.vertex(id).basis() * u)));
  return f;
}

inline VertexMap automorphism_dual(const GrassmannGraph& g, const Matrix& u) {
  if (g.ambient() != 2 * g.dim()) throw DualRequiresHalfDimension();
  if (!is_invertible(u)) throw NotInvertible("automorphism_dual needs an invertible U");
  VertexMap f{VertexMap::Kind::dual_linear, u, {}};
  f.perm.reserve(g.size());
  for (u64 id = 0; id < g.size(); ++id)
    f.perm.push_back(g.id_of(dual_subspace(canonicalize_subspace(g.vertex(id).basis() * u))));
  return f;
}

// Bijectivity plus exact adjacency preservation in both directions.
inline bool verify_automorphism(const GrassmannGraph& g, const VertexMap& f) {
  if (f.perm.size() != g.size()) return false;
  std::vector<bool> seen(g.size(), false);
  for (u64 img : f.perm) {
    if (img >= g.size() || seen[img]) return false;
    seen[img] = true;
  }
  const BitGraph& adj = g.adjacency();
  charge_budget(g.size() * g.size() / 64 + g.size());
  for (u64 a = 0; a < g.size(); ++a)
    for (u64 b = a + 1; b < g.size(); ++b)
      if (adj.adjacent(a, b) != adj.adjacent(f.perm[a], f.perm[b])) return false;
  return true;
}

// Generic isomorphism check between two graphs given a vertex mapping.
inline bool verify_isomorphism(const GrassmannGraph& g1, const GrassmannGraph& g2,
                               const std::vector<u64>& map) {
  if (map.size() != g1.size() || g1.size() != g2.size()) return false;
  std::vector<bool> seen(g2.size(), false);
  for (u64 img : map) {
    if (img >= g2.size() || seen[img]) return false;
    seen[img] = true;
  }
  const BitGraph& a1 = g1.adjacency();
  const BitGraph& a2 = g2.adjacency();
  charge_budget(g1.size() * g1.size() / 64 + g1.size());
  for (u64 a = 0; a < g1.size(); ++a)
    for (u64 b = a + 1; b < g1.size(); ++b)
      if (a1.adjacent(a, b) != a2.adjacent(map[a], map[b])) return false;
  return true;
}

// X -> X^perp as a mapping from G(n,m) into G(n,n-m).
inline std::vector<u64> dual_graph_map(const GrassmannGraph& g, const GrassmannGraph& gdual) {
  if (g.ambient() != gdual.ambient() || gdual.dim() != g.ambient() - g.dim())
    throw ParameterRange("dual_graph_map target must be G(n, n-m)");
  std::vector<u64> map;
  map.reserve(g.size());
  for (u64 id = 0; id < g.size(); ++id) map.push_back(gdual.id_of(dual_subspace(g.vertex(id))));
  return map;
}

// Given a permutation of G(n,m) that maps stars to stars, derive the induced
// permutation of G(n,m-1) via phi(star(P)) = star(phi1(P)); nullopt when some
// star image is not a star. The caller decides what to verify about it.
inline std::optional<VertexMap> induced_star_map(const GrassmannGraph& gm, const GrassmannGraph& gprev,
                                                 const VertexMap& f) {
  const u64 m = gm.dim();
  if (gprev.dim() + 1 != m || gprev.ambient() != gm.ambient()) throw ParameterRange("graphs must be G(n,m) and G(n,m-1)");
  VertexMap out{VertexMap::Kind::explicit_map, std::nullopt, {}};
  out.perm.reserve(gprev.size());
  for (u64 pid = 0; pid < gprev.size(); ++pid) {
    std::vector<Subspace> image;
    for (const Subspace& x : star(gprev.vertex(pid), m)) image.push_back(gm.vertex(f.perm[gm.id_of(x)]));
    std::sort(image.begin(), image.end());
    // common point set of the image, then its module
    std::vector<std::vector<u64>> common = subspace_points(image.front());
    for (u64 i = 1; i < image.size() && !common.empty(); ++i) {
      std::vector<std::vector<u64>> kept;
      for (const auto& v : common)
        if (image[i].contains(v)) kept.push_back(v);
      common = std::move(kept);
    }
    if (common.empty()) return std::nullopt;
    Matrix stacked(common.size(), gm.ambient(), gm.context());
    for (u64 i = 0; i < common.size(); ++i) stacked.set_row(i, common[i]);
    const auto center = module_from_rows(stacked);
    if (!center || center->dim() != m - 1 || star(*center, m) != image) return std::nullopt;
    out.perm.push_back(gprev.id_of(*center));
  }
  return out;
}

}  // namespace zgrass
