// oracles.hpp — independent brute-force reference implementations.
//
// Everything here recomputes results from definitions (minimal
// factorizations, annihilators of minor ideals, cofactor determinants,
// exhaustive enumeration) without touching the elimination machinery it is
// used to check. Desk-scale only; all loops charge the global budget.
#pragma once

#include <functional>
#include <vector>

#include "budget.hpp"
#include "matrix.hpp"

namespace zgrass {

// Visit all m-by-n matrices over the ring, in mixed-radix counter order.
inline void for_each_matrix(u64 rows, u64 cols, const RingContext& ctx,
                            const std::function<void(const Matrix&)>& fn) {
  const u64 cells = rows * cols;
  std::vector<u64> digits(cells, 0);
  Matrix m(rows, cols, ctx);
  for (;;) {
    charge_budget();
    fn(m);
    u64 i = 0;
    while (i < cells) {
      if (++digits[i] < ctx.q) break;
      digits[i] = 0;
      ++i;
    }
    if (i == cells) return;
    for (u64 k = 0; k <= i; ++k) m.set(k / cols, k % cols, digits[k]);
  }
}

// Visit all vectors of Z_q^n.
inline void for_each_vector(u64 n, const RingContext& ctx,
                            const std::function<void(const std::vector<u64>&)>& fn) {
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
    if (i == n) return;
  }
}

// Determinant by cofactor expansion along the first row.
inline u64 oracle_det(const Matrix& a) {
  const RingContext& ctx = a.context();
  const u64 n = a.rows();
  if (n != a.cols()) throw DimensionOverflow("oracle_det needs a square matrix");
  if (n == 0) return 1 % ctx.q;
  if (n == 1) return a(0, 0);
  u64 acc = 0;
  for (u64 j = 0; j < n; ++j) {
    if (!a(0, j)) continue;
    Matrix minor(n - 1, n - 1, ctx);
    for (u64 i = 1; i < n; ++i) {
      u64 cc = 0;
      for (u64 c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.set(i - 1, cc++, a(i, c));
      }
    }
    const u64 term = ctx.mul(a(0, j), oracle_det(minor));
    acc = (j % 2 == 0) ? ctx.add(acc, term) : ctx.sub(acc, term);
  }
  return acc;
}

// Least r admitting a factorization A = B*C with B m-by-r, C r-by-n,
// found by enumerating every candidate B and C. The trivial factorizations
// through I give the min(m,n) fallback.
inline u64 oracle_inner_rank(const Matrix& a) {
  const RingContext& ctx = a.context();
  const u64 m = a.rows(), n = a.cols();
  const u64 bound = m < n ? m : n;
  if (a.is_zero()) return 0;
  for (u64 r = 1; r < bound; ++r) {
    bool found = false;
    for_each_matrix(m, r, ctx, [&](const Matrix& b) {
      if (found) return;
      for_each_matrix(r, n, ctx, [&](const Matrix& c) {
        if (found) return;
        if (b * c == a) found = true;
      });
    });
    if (found) return r;
  }
  return bound;
}

namespace detail {
// The ideal of Z_q generated by the given values: the closure of {0, gens...}
// under addition and multiplication by arbitrary ring elements, computed as
// an explicit set.
inline std::vector<bool> oracle_ideal(const std::vector<u64>& gens, const RingContext& ctx) {
  std::vector<bool> in(ctx.q, false);
  in[0] = true;
  for (u64 g : gens)
    for (u64 c = 0; c < ctx.q; ++c) in[ctx.mul(c, g)] = true;
  bool grew = true;
  while (grew) {
    grew = false;
    for (u64 x = 0; x < ctx.q; ++x) {
      if (!in[x]) continue;
      for (u64 y = x; y < ctx.q; ++y) {
        if (!in[y]) continue;
        const u64 z = ctx.add(x, y);
        if (!in[z]) {
          in[z] = true;
          grew = true;
        }
      }
    }
  }
  return in;
}

// All r-element subsets of [0, n).
inline void for_each_subset(u64 n, u64 r, const std::function<void(const std::vector<u64>&)>& fn) {
  if (r > n) return;
  if (r == 0) {
    fn({});
    return;
  }
  std::vector<u64> idx(r);
  for (u64 i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    u64 i = r;
    while (i > 0) {
      --i;
      if (idx[i] + (r - i) < n) break;
      if (i == 0) return;
    }
    if (idx[i] + (r - i) >= n) return;
    ++idx[i];
    for (u64 k = i + 1; k < r; ++k) idx[k] = idx[k - 1] + 1;
  }
}
}  // namespace detail

// McCoy rank from its definition: the largest r such that the ideal of
// r-by-r minors has trivial annihilator.
inline u64 oracle_mccoy_rank(const Matrix& a) {
  const RingContext& ctx = a.context();
  const u64 bound = a.rows() < a.cols() ? a.rows() : a.cols();
  u64 rk = 0;
  for (u64 r = 1; r <= bound; ++r) {
    std::vector<u64> minors;
    detail::for_each_subset(a.rows(), r, [&](const std::vector<u64>& ri) {
      detail::for_each_subset(a.cols(), r, [&](const std::vector<u64>& ci) {
        charge_budget();
        Matrix sub(r, r, ctx);
        for (u64 i = 0; i < r; ++i)
          for (u64 j = 0; j < r; ++j) sub.set(i, j, a(ri[i], ci[j]));
        minors.push_back(oracle_det(sub));
      });
    });
    const auto ideal = detail::oracle_ideal(minors, ctx);
    bool ann_trivial = true;
    for (u64 x = 1; x < ctx.q && ann_trivial; ++x) {
      bool kills_all = true;
      for (u64 y = 0; y < ctx.q; ++y)
        if (ideal[y] && ctx.mul(x, y) != 0) {
          kills_all = false;
          break;
        }
      if (kills_all) ann_trivial = false;  // nonzero annihilator element
    }
    if (ann_trivial)
      rk = r;
    else
      break;
  }
  return rk;
}

// Field rank over Z_p by plain row reduction (independent of the
// valuation-pivot elimination).
inline u64 oracle_field_rank(const Matrix& projected) {
  const RingContext& ctx = projected.context();
  if (ctx.s != 1) throw ParameterRange("oracle_field_rank expects a field matrix");
  Matrix w = projected;
  const u64 m = w.rows(), n = w.cols();
  u64 rank = 0;
  for (u64 col = 0; col < n && rank < m; ++col) {
    u64 pivot = m;
    for (u64 i = rank; i < m; ++i)
      if (w(i, col)) {
        pivot = i;
        break;
      }
    if (pivot == m) continue;
    w.swap_rows(rank, pivot);
    const u64 inv = ctx.invert_unit(w(rank, col));
    w.scale_row(rank, inv);
    for (u64 i = 0; i < m; ++i)
      if (i != rank && w(i, col)) w.add_row_multiple(i, rank, ctx.neg(w(i, col)));
    ++rank;
  }
  return rank;
}

// Every profile (r, k_1..k_t) whose diagonal matrix is GL-equivalent to A,
// by exhausting invertible P and Q. Uniqueness of the normal form means the
// result should be a singleton.
struct DiagonalProfile {
  u64 r = 0;
  std::vector<u64> exponents;
  bool operator==(const DiagonalProfile& o) const {
    return r == o.r && exponents == o.exponents;
  }
};

inline std::vector<Matrix> all_invertible_matrices(u64 n, const RingContext& ctx) {
  std::vector<Matrix> out;
  for_each_matrix(n, n, ctx, [&](const Matrix& m) {
    if (ctx.is_unit(oracle_det(m))) out.push_back(m);
  });
  return out;
}

inline std::vector<DiagonalProfile> oracle_equivalent_profiles(const Matrix& a) {
  const RingContext& ctx = a.context();
  const u64 m = a.rows(), n = a.cols();
  const u64 bound = m < n ? m : n;
  const auto gl_m = all_invertible_matrices(m, ctx);
  const auto gl_n = (m == n) ? gl_m : all_invertible_matrices(n, ctx);

  // Candidate profiles: r + t <= bound, exponents nondecreasing in [1, s-1].
  std::vector<DiagonalProfile> candidates;
  std::function<void(DiagonalProfile&, u64, u64)> grow = [&](DiagonalProfile& prof, u64 last,
                                                             u64 left) {
    candidates.push_back(prof);
    if (left == 0 || ctx.s < 2) return;
    for (u64 k = last; k <= ctx.s - 1; ++k) {
      prof.exponents.push_back(k);
      grow(prof, k, left - 1);
      prof.exponents.pop_back();
    }
  };
  for (u64 r = 0; r <= bound; ++r) {
    DiagonalProfile prof{r, {}};
    grow(prof, 1, bound - r);
  }

  std::vector<DiagonalProfile> matches;
  for (const auto& prof : candidates) {
    Matrix d(m, n, ctx);
    for (u64 i = 0; i < prof.r; ++i) d.set(i, i, 1);
    for (u64 i = 0; i < prof.exponents.size(); ++i)
      d.set(prof.r + i, prof.r + i, ctx.p_power(prof.exponents[i]));
    bool found = false;
    for (const Matrix& p : gl_m) {
      const Matrix pd = p * d;
      for (const Matrix& q : gl_n) {
        charge_budget();
        if (pd * q == a) {
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (found) matches.push_back(prof);
  }
  return matches;
}

}  // namespace zgrass
