// Bilinear forms graph over Z_{p^s}: vertices are all m-by-n matrices,
// adjacency is inner rank 1 of the difference. Provides the two parameterized
// maximal-clique families, the clique/independence formulas, classification
// of maximum cliques against the families, and desk-scale exact searches.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "zgrass/bitgraph.hpp"
#include "zgrass/matrix.hpp"
#include "zgrass/subspace.hpp"

namespace zgrass {

class BilinearGraph {
 public:
  BilinearGraph(const RingContext& ctx, u64 m, u64 n) : ctx_(ctx), m_(m), n_(n) {
    if (m < 2 || n < 2) throw ParameterRange("bilinear graph needs m,n >= 2");
    count_ = 1;
    for (u64 i = 0; i < m * n; ++i) count_ = detail::checked_mul(count_, ctx.q);
  }

  const RingContext& context() const { return ctx_; }
  u64 rows() const { return m_; }
  u64 cols() const { return n_; }
  u64 vertex_count() const { return count_; }

  // Mixed-radix encoding of the entry list, row-major, base q.
  Matrix matrix_of(u64 id) const {
    Matrix a(m_, n_, ctx_);
    for (u64 i = 0; i < m_; ++i)
      for (u64 j = 0; j < n_; ++j) {
        a.set(i, j, id % ctx_.q);
        id /= ctx_.q;
      }
    return a;
  }

  u64 id_of(const Matrix& a) const {
    u64 id = 0;
    for (u64 i = m_; i-- > 0;)
      for (u64 j = n_; j-- > 0;) id = id * ctx_.q + a(i, j);
    return id;
  }

  bool adjacent(u64 a, u64 b) const { return a != b && inner_rank(matrix_of(a) - matrix_of(b)) == 1; }

  // Materialized adjacency for the exact searches. Quadratic in the vertex
  // count; the budget keeps it at desk scale.
  BitGraph build_adjacency() const {
    charge_budget(count_ * (count_ - 1) / 2);
    BitGraph g(count_);
    std::vector<Matrix> verts;
    verts.reserve(count_);
    for (u64 id = 0; id < count_; ++id) verts.push_back(matrix_of(id));
    for (u64 a = 0; a < count_; ++a)
      for (u64 b = a + 1; b < count_; ++b)
        if (inner_rank(verts[a] - verts[b]) == 1) g.add_edge(a, b);
    return g;
  }

 private:
  RingContext ctx_;
  u64 m_, n_;
  u64 count_;
};

inline bool bf_adjacent(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ParameterRange("bf_adjacent: shape mismatch");
  return inner_rank(a - b) == 1;
}

enum class BfCliqueKind { one, two };

namespace detail {
// Odometer sweep over Z_{p^s}^n, budget-charged per vector.
template <typename Fn>
void each_vector(u64 n, const RingContext& ctx, Fn&& fn) {
  std::vector<u64> v(n, 0);
  for (;;) {
    charge_budget();
    fn(v);
    u64 i = 0;
    while (i < n) {
      if (++v[i] < ctx.q) break;
      v[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
}

// Outer product of an m-column and an n-row.
inline Matrix outer(const std::vector<u64>& col, const std::vector<u64>& row, const RingContext& ctx) {
  Matrix a(col.size(), row.size(), ctx);
  for (u64 i = 0; i < col.size(); ++i)
    for (u64 j = 0; j < row.size(); ++j) a.set(i, j, ctx.mul(col[i], row[j]));
  return a;
}
}  // namespace detail

// The type-one family P*(first-row matrices)+A reduces to outer products of
// P's first column with every row vector; type two symmetrically uses Q's
// first row. Sizes are q^n and q^m.
inline std::vector<Matrix> bf_maximal_clique(BfCliqueKind kind, const Matrix& pq, const Matrix& a) {
  const RingContext& ctx = a.context();
  if (!is_invertible(pq)) throw NotInvertible("bf_maximal_clique: transform must be invertible");
  std::vector<Matrix> out;
  if (kind == BfCliqueKind::one) {
    if (pq.rows() != a.rows() || pq.cols() != a.rows()) throw ParameterRange("bf_maximal_clique: P must be m x m");
    std::vector<u64> col(a.rows());
    for (u64 i = 0; i < a.rows(); ++i) col[i] = pq(i, 0);
    detail::each_vector(a.cols(), ctx, [&](const std::vector<u64>& x) {
      out.push_back(detail::outer(col, x, ctx) + a);
    });
  } else {
    if (pq.rows() != a.cols() || pq.cols() != a.cols()) throw ParameterRange("bf_maximal_clique: Q must be n x n");
    std::vector<u64> row(a.cols());
    for (u64 j = 0; j < a.cols(); ++j) row[j] = pq(0, j);
    detail::each_vector(a.rows(), ctx, [&](const std::vector<u64>& y) {
      out.push_back(detail::outer(y, row, ctx) + a);
    });
  }
  return out;
}

inline u64 bf_clique_number(const RingContext& ctx, u64 m, u64 n) {
  if (m < 2 || n < 2) throw ParameterRange("bf_clique_number needs m,n >= 2");
  return detail::checked_p_pow(ctx.p, ctx.s * std::max(m, n));
}

inline u64 bf_independence_number(const RingContext& ctx, u64 m, u64 n) {
  if (m < 2 || n < 2) throw ParameterRange("bf_independence_number needs m,n >= 2");
  if (m > n) std::swap(m, n);  // transposing entries is a graph isomorphism
  return detail::checked_p_pow(ctx.p, ctx.s * n * (m - 1));
}

enum class BfCliqueClass { type_one, type_two, neither };

// Decide whether a clique (given as explicit matrices, all the same shape)
// equals P*M1+A or N1*Q+A for some choice of parameters. The translate by any
// member must then be the set of outer products c*x (fixed unimodular column)
// or y*r (fixed unimodular row); the generator is recovered from any element
// with a unit entry, unique up to a unit factor.
inline BfCliqueClass classify_bf_maximum_clique(const std::vector<Matrix>& clique) {
  if (clique.empty()) return BfCliqueClass::neither;
  const RingContext& ctx = clique.front().context();
  const u64 m = clique.front().rows(), n = clique.front().cols();
  const Matrix& base = clique.front();
  std::vector<Matrix> centered;
  centered.reserve(clique.size());
  for (const Matrix& x : clique) centered.push_back(x - base);
  std::set<Matrix> have(centered.begin(), centered.end());
  if (have.size() != clique.size()) return BfCliqueClass::neither;

  // locate an element with a unit entry
  std::optional<std::pair<u64, u64>> unit_pos;
  const Matrix* witness = nullptr;
  for (const Matrix& x : centered) {
    for (u64 i = 0; i < m && !unit_pos; ++i)
      for (u64 j = 0; j < n && !unit_pos; ++j)
        if (ctx.is_unit(x(i, j))) {
          unit_pos = {i, j};
          witness = &x;
        }
    if (unit_pos) break;
  }
  if (!unit_pos) return BfCliqueClass::neither;
  const auto [wi, wj] = *unit_pos;
  const u64 inv = ctx.invert_unit((*witness)(wi, wj));

  if (have.size() == detail::checked_p_pow(ctx.p, ctx.s * n)) {
    std::vector<u64> col(m);
    for (u64 i = 0; i < m; ++i) col[i] = ctx.mul((*witness)(i, wj), inv);
    bool all = true;
    detail::each_vector(n, ctx, [&](const std::vector<u64>& x) {
      if (all && !have.count(detail::outer(col, x, ctx))) all = false;
    });
    if (all) return BfCliqueClass::type_one;
  }
  if (have.size() == detail::checked_p_pow(ctx.p, ctx.s * m)) {
    std::vector<u64> row(n);
    for (u64 j = 0; j < n; ++j) row[j] = ctx.mul((*witness)(wi, j), inv);
    bool all = true;
    detail::each_vector(m, ctx, [&](const std::vector<u64>& y) {
      if (all && !have.count(detail::outer(y, row, ctx))) all = false;
    });
    if (all) return BfCliqueClass::type_two;
  }
  return BfCliqueClass::neither;
}

// Exact largest independent set, as matrices, via complement-clique search.
inline std::vector<Matrix> bf_max_independent_set(const BilinearGraph& bg) {
  const BitGraph g = bg.build_adjacency();
  std::vector<Matrix> out;
  for (u64 id : maximum_independent_set(g)) out.push_back(bg.matrix_of(id));
  return out;
}

}  // namespace zgrass
