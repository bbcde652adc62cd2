// matrix.hpp — dense matrices over Z_{p^s}.
//
// The centerpiece is canonical_diagonalize: every A factors as
//
//     A = P * diag(I_r, p^{k_1}, ..., p^{k_t}, 0) * Q
//
// with P, Q invertible and 1 <= k_1 <= ... <= k_t <= s-1. The profile
// (r, k_1..k_t) is an invariant of A; it yields both ranks:
// inner_rank = r + t (least factorization rank) and mccoy_rank = r.
//
// Elimination uses minimum-valuation pivoting with row-major tie-breaks,
// which makes P, Q deterministic and the exponents nondecreasing.
#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "ring.hpp"

namespace zgrass {

class Matrix {
 public:
  Matrix(u64 rows, u64 cols, const RingContext& ctx)
      : rows_(rows), cols_(cols), ctx_(ctx), e_(rows * cols, 0) {}

  static Matrix zero(u64 rows, u64 cols, const RingContext& ctx) { return {rows, cols, ctx}; }

  static Matrix identity(u64 n, const RingContext& ctx) {
    Matrix m(n, n, ctx);
    for (u64 i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<u64>> rows,
                          const RingContext& ctx) {
    const u64 r = rows.size();
    const u64 c = r ? rows.begin()->size() : 0;
    Matrix m(r, c, ctx);
    u64 i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionOverflow("ragged row list");
      u64 j = 0;
      for (u64 v : row) m.set(i, j++, v);
      ++i;
    }
    return m;
  }

  static Matrix from_entries(u64 rows, u64 cols, const std::vector<u64>& entries,
                             const RingContext& ctx) {
    if (entries.size() != rows * cols) throw DimensionOverflow("entry count mismatch");
    Matrix m(rows, cols, ctx);
    for (u64 k = 0; k < entries.size(); ++k) m.e_[k] = ctx.reduce(entries[k]);
    return m;
  }

  u64 rows() const { return rows_; }
  u64 cols() const { return cols_; }
  const RingContext& context() const { return ctx_; }
  const std::vector<u64>& entries() const { return e_; }

  u64 operator()(u64 i, u64 j) const { return e_[i * cols_ + j]; }
  void set(u64 i, u64 j, u64 v) { e_[i * cols_ + j] = ctx_.reduce(v); }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && ctx_ == o.ctx_ && e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  // Lexicographic by shape then entries; lets matrices key ordered sets.
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return e_ < o.e_;
  }

  bool is_zero() const {
    for (u64 v : e_)
      if (v) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, a.cols_, a.ctx_);
    for (u64 k = 0; k < a.e_.size(); ++k) out.e_[k] = a.ctx_.add(a.e_[k], b.e_[k]);
    return out;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, a.cols_, a.ctx_);
    for (u64 k = 0; k < a.e_.size(); ++k) out.e_[k] = a.ctx_.sub(a.e_[k], b.e_[k]);
    return out;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, b.cols_, a.ctx_);
    const u64 q = a.ctx_.q;
    for (u64 i = 0; i < a.rows_; ++i)
      for (u64 k = 0; k < a.cols_; ++k) {
        const u64 aik = a(i, k);
        if (!aik) continue;
        for (u64 j = 0; j < b.cols_; ++j)
          out.e_[i * b.cols_ + j] = (out.e_[i * b.cols_ + j] + aik * b(k, j)) % q;
      }
    return out;
  }

  Matrix scaled(u64 c) const {
    Matrix out(rows_, cols_, ctx_);
    for (u64 k = 0; k < e_.size(); ++k) out.e_[k] = ctx_.mul(e_[k], c);
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_, ctx_);
    for (u64 i = 0; i < rows_; ++i)
      for (u64 j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
    return out;
  }

  std::vector<u64> row(u64 i) const {
    return {e_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            e_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  void set_row(u64 i, const std::vector<u64>& v) {
    for (u64 j = 0; j < cols_; ++j) set(i, j, v[j]);
  }

  // Rows [r0, r1) and columns [c0, c1).
  Matrix submatrix(u64 r0, u64 r1, u64 c0, u64 c1) const {
    Matrix out(r1 - r0, c1 - c0, ctx_);
    for (u64 i = r0; i < r1; ++i)
      for (u64 j = c0; j < c1; ++j) out.set(i - r0, j - c0, (*this)(i, j));
    return out;
  }

  void paste(u64 r0, u64 c0, const Matrix& block) {
    for (u64 i = 0; i < block.rows(); ++i)
      for (u64 j = 0; j < block.cols(); ++j) set(r0 + i, c0 + j, block(i, j));
  }

  friend Matrix hstack(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_, a.cols_ + b.cols_, a.ctx_);
    out.paste(0, 0, a);
    out.paste(0, a.cols_, b);
    return out;
  }
  friend Matrix vstack(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ + b.rows_, a.cols_, a.ctx_);
    out.paste(0, 0, a);
    out.paste(a.rows_, 0, b);
    return out;
  }
  friend Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows_ + b.rows_, a.cols_ + b.cols_, a.ctx_);
    out.paste(0, 0, a);
    out.paste(a.rows_, a.cols_, b);
    return out;
  }

  // In-place elementary operations.
  void swap_rows(u64 a, u64 b) {
    if (a == b) return;
    for (u64 j = 0; j < cols_; ++j) std::swap(e_[a * cols_ + j], e_[b * cols_ + j]);
  }
  void swap_cols(u64 a, u64 b) {
    if (a == b) return;
    for (u64 i = 0; i < rows_; ++i) std::swap(e_[i * cols_ + a], e_[i * cols_ + b]);
  }
  void scale_row(u64 i, u64 c) {
    for (u64 j = 0; j < cols_; ++j) e_[i * cols_ + j] = ctx_.mul(e_[i * cols_ + j], c);
  }
  void scale_col(u64 j, u64 c) {
    for (u64 i = 0; i < rows_; ++i) e_[i * cols_ + j] = ctx_.mul(e_[i * cols_ + j], c);
  }
  // row[dst] += c * row[src]
  void add_row_multiple(u64 dst, u64 src, u64 c) {
    for (u64 j = 0; j < cols_; ++j)
      e_[dst * cols_ + j] = ctx_.add(e_[dst * cols_ + j], ctx_.mul(c, e_[src * cols_ + j]));
  }
  // col[dst] += c * col[src]
  void add_col_multiple(u64 dst, u64 src, u64 c) {
    for (u64 i = 0; i < rows_; ++i)
      e_[i * cols_ + dst] = ctx_.add(e_[i * cols_ + dst], ctx_.mul(c, e_[i * cols_ + src]));
  }

 private:
  u64 rows_, cols_;
  RingContext ctx_;
  std::vector<u64> e_;
};

// Entrywise reduction mod p, as a matrix over Z_p.
inline Matrix project_matrix(const Matrix& a) {
  const RingContext field = a.context().residue_field();
  Matrix out(a.rows(), a.cols(), field);
  for (u64 i = 0; i < a.rows(); ++i)
    for (u64 j = 0; j < a.cols(); ++j) out.set(i, j, a.context().project_to_field(a(i, j)));
  return out;
}

// Re-read entries in another ring (entries must already lie below the new
// modulus unless reduce is intended; we reduce, matching integer re-reading
// for lifts).
inline Matrix reread_in(const Matrix& a, const RingContext& ctx) {
  return Matrix::from_entries(a.rows(), a.cols(), a.entries(), ctx);
}

// A = P * diagonal * Q with P, Q invertible. r counts unit pivots,
// exponents the p-power pivots (nondecreasing, each in [1, s-1]).
struct NormalForm {
  Matrix P, P_inv, Q, Q_inv;
  u64 r = 0;
  std::vector<u64> exponents;
  u64 rows = 0, cols = 0;

  u64 t() const { return exponents.size(); }
  u64 rho() const { return r + exponents.size(); }

  Matrix diagonal(const RingContext& ctx) const {
    Matrix d(rows, cols, ctx);
    for (u64 i = 0; i < r; ++i) d.set(i, i, 1);
    for (u64 i = 0; i < exponents.size(); ++i) d.set(r + i, r + i, ctx.p_power(exponents[i]));
    return d;
  }
};

namespace detail {

// Shared elimination core. With accumulate=false only the pivot profile is
// produced (the hot path for rank queries).
struct Elimination {
  std::vector<u64> pivot_vals;  // valuations t_d of the diagonal pivots
  std::optional<Matrix> P, P_inv, Q, Q_inv;
  u64 det_units = 1;  // det(P)*det(Q) contribution: swaps and unit scalings

  static Elimination run(const Matrix& a, bool accumulate) {
    const RingContext& ctx = a.context();
    const u64 m = a.rows(), n = a.cols();
    Elimination out;
    Matrix d = a;
    if (accumulate) {
      out.P = Matrix::identity(m, ctx);
      out.P_inv = Matrix::identity(m, ctx);
      out.Q = Matrix::identity(n, ctx);
      out.Q_inv = Matrix::identity(n, ctx);
    }
    const u64 steps = m < n ? m : n;
    for (u64 k = 0; k < steps; ++k) {
      // Minimum-valuation pivot in the trailing block, row-major tie-break.
      u64 best_val = ctx.s, bi = k, bj = k;
      for (u64 i = k; i < m && best_val > 0; ++i)
        for (u64 j = k; j < n; ++j) {
          const u64 v = ctx.valuation(d(i, j));
          if (v < best_val) {
            best_val = v;
            bi = i;
            bj = j;
            if (v == 0) break;
          }
        }
      if (best_val == ctx.s) break;  // trailing block is zero

      if (bi != k) {
        d.swap_rows(k, bi);
        if (accumulate) {
          out.P->swap_cols(k, bi);
          out.P_inv->swap_rows(k, bi);
        }
        out.det_units = ctx.mul(out.det_units, ctx.q - 1);
      }
      if (bj != k) {
        d.swap_cols(k, bj);
        if (accumulate) {
          out.Q->swap_rows(k, bj);
          out.Q_inv->swap_cols(k, bj);
        }
        out.det_units = ctx.mul(out.det_units, ctx.q - 1);
      }

      const auto [t, unit] = ctx.valuation_decompose(d(k, k));
      const u64 unit_inv = ctx.invert_unit(unit);
      if (unit != 1) {
        d.scale_row(k, unit_inv);  // pivot becomes exactly p^t
        if (accumulate) {
          out.P->scale_col(k, unit);
          out.P_inv->scale_row(k, unit_inv);
        }
        out.det_units = ctx.mul(out.det_units, unit);
      }
      const u64 pt = ctx.p_power(t);

      // Clear below: every entry in the pivot column has valuation >= t,
      // so the integer quotient by p^t is exact.
      for (u64 i = k + 1; i < m; ++i) {
        const u64 c = d(i, k);
        if (!c) continue;
        const u64 w = c / pt;
        d.add_row_multiple(i, k, ctx.neg(w));
        if (accumulate) {
          out.P->add_col_multiple(k, i, w);
          out.P_inv->add_row_multiple(i, k, ctx.neg(w));
        }
      }
      // Clear to the right symmetrically.
      for (u64 j = k + 1; j < n; ++j) {
        const u64 c = d(k, j);
        if (!c) continue;
        const u64 w = c / pt;
        d.add_col_multiple(j, k, ctx.neg(w));
        if (accumulate) {
          out.Q->add_row_multiple(k, j, w);
          out.Q_inv->add_col_multiple(j, k, ctx.neg(w));
        }
      }
      out.pivot_vals.push_back(t);
    }
    return out;
  }
};

}  // namespace detail

inline NormalForm canonical_diagonalize(const Matrix& a) {
  auto elim = detail::Elimination::run(a, true);
  NormalForm nf{std::move(*elim.P), std::move(*elim.P_inv), std::move(*elim.Q),
                std::move(*elim.Q_inv), 0, {}, 0, 0};
  nf.rows = a.rows();
  nf.cols = a.cols();
  for (u64 t : elim.pivot_vals) {
    if (t == 0)
      ++nf.r;
    else
      nf.exponents.push_back(t);
  }
  return nf;
}

// Least r with A = B*C, B m-by-r, C r-by-n. Equals r + t of the normal form
// (for s = 1 this is just the field rank).
inline u64 inner_rank(const Matrix& a) {
  return detail::Elimination::run(a, false).pivot_vals.size();
}

// Rank of the mod-p projection.
inline u64 mccoy_rank(const Matrix& a) {
  u64 rk = 0;
  for (u64 t : detail::Elimination::run(project_matrix(a), false).pivot_vals)
    if (t == 0) ++rk;
  return rk;
}

inline bool has_right_inverse(const Matrix& a) { return mccoy_rank(a) == a.rows(); }
inline bool has_left_inverse(const Matrix& a) { return mccoy_rank(a) == a.cols(); }

// Witness for has_right_inverse: A * R = I. Empty when rk(A) < rows.
inline std::optional<Matrix> right_inverse(const Matrix& a) {
  const u64 m = a.rows(), n = a.cols();
  if (m > n) return std::nullopt;
  const NormalForm nf = canonical_diagonalize(a);
  if (nf.r != m) return std::nullopt;
  // A = P (I_m | 0) Q, so A * Q^{-1} (I_m ; 0) P^{-1} = I.
  Matrix pick(n, m, a.context());
  for (u64 i = 0; i < m; ++i) pick.set(i, i, 1);
  return nf.Q_inv * pick * nf.P_inv;
}

inline u64 determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionOverflow("determinant needs a square matrix");
  const RingContext& ctx = a.context();
  if (a.rows() == 0) return 1 % ctx.q;
  auto elim = detail::Elimination::run(a, false);
  // A = P D Q with det(P)det(Q) = det_units (shears contribute 1).
  if (elim.pivot_vals.size() < a.rows()) return 0;
  u64 det_d = 1;
  for (u64 t : elim.pivot_vals) det_d = ctx.mul(det_d, ctx.p_power(t));
  return ctx.mul(det_d, elim.det_units);
}

inline bool is_invertible(const Matrix& a) {
  return a.rows() == a.cols() && mccoy_rank(a) == a.rows();
}

inline Matrix invert(const Matrix& a) {
  if (a.rows() != a.cols()) throw NotInvertible("not square");
  const NormalForm nf = canonical_diagonalize(a);
  if (nf.r != a.rows()) throw NotInvertible();
  return nf.Q_inv * nf.P_inv;  // A = P I Q
}

}  // namespace zgrass
