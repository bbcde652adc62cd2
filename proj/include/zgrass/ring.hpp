// ring.hpp — exact arithmetic in Z_{p^s}: units and inverses, valuation
// decompositions x = u * p^t, base-p digit expansions, and the mod-p
// projection onto the residue field.
//
// Residues are stored as least non-negative integers in [0, p^s); every
// operation re-normalizes, so equality is plain integer equality. The
// modulus is capped below 2^32 so 64-bit products never overflow.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace zgrass {

using u64 = std::uint64_t;
using i64 = std::int64_t;

namespace detail {
inline bool is_prime_u64(u64 p) {
  if (p < 2) return false;
  for (u64 d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}
}  // namespace detail

// The ring Z_{p^s}. A small value type; copy freely.
struct RingContext {
  u64 p = 0;  // prime
  u64 s = 0;  // exponent, >= 1
  u64 q = 0;  // modulus p^s

  RingContext(u64 prime, u64 exponent) : p(prime), s(exponent) {
    if (!detail::is_prime_u64(p)) throw ParameterRange("p must be prime");
    if (s < 1) throw ParameterRange("s must be >= 1");
    q = 1;
    for (u64 i = 0; i < s; ++i) {
      if (q > ((u64{1} << 32) - 1) / p) throw ParameterRange("p^s must fit below 2^32");
      q *= p;
    }
  }

  bool operator==(const RingContext& o) const { return p == o.p && s == o.s; }
  bool operator!=(const RingContext& o) const { return !(*this == o); }

  u64 reduce(u64 x) const { return x % q; }
  u64 reduce_signed(i64 x) const {
    const i64 m = x % static_cast<i64>(q);
    return static_cast<u64>(m < 0 ? m + static_cast<i64>(q) : m);
  }

  u64 add(u64 a, u64 b) const { return (a % q + b % q) % q; }
  u64 sub(u64 a, u64 b) const { return (a % q + q - b % q) % q; }
  u64 neg(u64 a) const { return (q - a % q) % q; }
  u64 mul(u64 a, u64 b) const { return (a % q) * (b % q) % q; }

  u64 pow(u64 a, u64 e) const {
    u64 base = a % q, out = 1 % q;
    while (e) {
      if (e & 1) out = out * base % q;
      base = base * base % q;
      e >>= 1;
    }
    return out;
  }

  // p^t as a ring element (t <= s).
  u64 p_power(u64 t) const {
    u64 out = 1;
    for (u64 i = 0; i < t && out < q; ++i) out *= p;
    return out % q;
  }

  bool is_unit(u64 x) const { return (x % q) % p != 0; }

  // Inverse of a unit via extended Euclid on (x, p^s).
  u64 invert_unit(u64 x) const {
    x %= q;
    if (!is_unit(x)) throw NotAUnit();
    i64 old_r = static_cast<i64>(x), r = static_cast<i64>(q);
    i64 old_t = 1, t = 0;
    while (r != 0) {
      const i64 k = old_r / r;
      old_r -= k * r;
      std::swap(old_r, r);
      old_t -= k * t;
      std::swap(old_t, t);
    }
    return reduce_signed(old_t);
  }

  // Total p-adic valuation: val(0) = s by convention.
  u64 valuation(u64 x) const {
    x %= q;
    if (x == 0) return s;
    u64 t = 0;
    while (x % p == 0) {
      x /= p;
      ++t;
    }
    return t;
  }

  // x = u * p^t with u a unit, 0 <= t <= s-1. u is the least non-negative
  // representative of its class mod p^{s-t} (the exact integer quotient).
  std::pair<u64, u64> valuation_decompose(u64 x) const {
    x %= q;
    if (x == 0) throw ZeroHasNoDecomposition();
    u64 t = 0, u = x;
    while (u % p == 0) {
      u /= p;
      ++t;
    }
    return {t, u};
  }

  // s base-p digits, least significant first; x = sum digits[i] * p^i.
  std::vector<u64> digit_expand(u64 x) const {
    x %= q;
    std::vector<u64> digits(s, 0);
    for (u64 i = 0; i < s; ++i) {
      digits[i] = x % p;
      x /= p;
    }
    return digits;
  }

  u64 digits_assemble(const std::vector<u64>& digits) const {
    u64 x = 0, scale = 1;
    for (u64 i = 0; i < s && i < digits.size(); ++i) {
      x += (digits[i] % p) * scale;
      scale *= p;
    }
    return x % q;
  }

  u64 project_to_field(u64 x) const { return (x % q) % p; }

  RingContext residue_field() const { return RingContext(p, 1); }

  // Z_{p^{s-1}}, used by the lift/lower rank laws. Requires s >= 2.
  RingContext lowered() const {
    if (s < 2) throw ParameterRange("no lower ring below s = 1");
    return RingContext(p, s - 1);
  }
};

// A residue paired with its ring. Thin convenience wrapper used at API
// boundaries and in tests; bulk code works on raw u64 grids via Matrix.
class RingElement {
 public:
  RingElement(u64 value, const RingContext& ctx) : v_(ctx.reduce(value)), ctx_(ctx) {}

  u64 value() const { return v_; }
  const RingContext& context() const { return ctx_; }

  bool is_unit() const { return ctx_.is_unit(v_); }
  RingElement inverse() const { return {ctx_.invert_unit(v_), ctx_}; }
  u64 valuation() const { return ctx_.valuation(v_); }
  std::pair<u64, RingElement> valuation_decompose() const {
    auto [t, u] = ctx_.valuation_decompose(v_);
    return {t, RingElement(u, ctx_)};
  }
  std::vector<u64> digit_expand() const { return ctx_.digit_expand(v_); }
  u64 project_to_field() const { return ctx_.project_to_field(v_); }

  friend RingElement operator+(const RingElement& a, const RingElement& b) {
    return {a.ctx_.add(a.v_, b.v_), a.ctx_};
  }
  friend RingElement operator-(const RingElement& a, const RingElement& b) {
    return {a.ctx_.sub(a.v_, b.v_), a.ctx_};
  }
  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    return {a.ctx_.mul(a.v_, b.v_), a.ctx_};
  }
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.ctx_ == b.ctx_ && a.v_ == b.v_;
  }

 private:
  u64 v_;
  RingContext ctx_;
};

}  // namespace zgrass
