// Scalar arithmetic in Z_{p^s}: units, valuations, digits, projection.
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "zgrass/ring.hpp"

using namespace zgrass;

namespace {
const RingContext z8(2, 3);
const RingContext z9(3, 2);
const RingContext z4(2, 2);
}  // namespace

TEST_CASE("unit detection", "[ring]") {
  CHECK(z8.is_unit(5));
  CHECK_FALSE(z8.is_unit(6));
  CHECK_FALSE(z9.is_unit(0));
  CHECK(RingElement(5, z8).is_unit());
}

TEST_CASE("unit inversion", "[ring]") {
  CHECK(z8.invert_unit(3) == 3);  // 3*3 = 9 = 1 mod 8
  CHECK(z9.invert_unit(2) == 5);  // 2*5 = 10 = 1 mod 9
  CHECK_THROWS_AS(z4.invert_unit(2), NotAUnit);

  // Every unit inverts to a unit, and the product is 1.
  for (const auto& ctx : {z8, z9, z4, RingContext(5, 3), RingContext(2, 8)}) {
    for (u64 x = 0; x < ctx.q; ++x) {
      if (!ctx.is_unit(x)) continue;
      const u64 y = ctx.invert_unit(x);
      CHECK(ctx.mul(x, y) == 1);
      CHECK(ctx.is_unit(y));
    }
  }
}

TEST_CASE("valuation decomposition", "[ring]") {
  CHECK(z8.valuation_decompose(6) == std::pair<u64, u64>{1, 3});
  CHECK(z9.valuation_decompose(3) == std::pair<u64, u64>{1, 1});
  CHECK_THROWS_AS(z8.valuation_decompose(0), ZeroHasNoDecomposition);

  // Total helper: val(0) = s, val respects multiplication by p.
  CHECK(z8.valuation(0) == 3);
  CHECK(z8.valuation(4) == 2);
  CHECK(z9.valuation(6) == 1);

  // Round trip u * p^t == x for every nonzero x, several rings.
  for (const auto& ctx : {z8, z9, z4, RingContext(3, 3), RingContext(7, 2), RingContext(2, 1)}) {
    for (u64 x = 1; x < ctx.q; ++x) {
      const auto [t, u] = ctx.valuation_decompose(x);
      CHECK(t <= ctx.s - 1);
      CHECK(ctx.is_unit(u));
      CHECK(ctx.mul(u, ctx.p_power(t)) == x);
      // Least non-negative representative of the unit class mod p^{s-t}.
      CHECK(u < ctx.q / ctx.p_power(t));
    }
  }
}

TEST_CASE("digit expansion", "[ring]") {
  CHECK(z8.digit_expand(11) == std::vector<u64>{1, 1, 0});  // 11 = 3 mod 8
  CHECK(z9.digit_expand(7) == std::vector<u64>{1, 2});
  CHECK(z4.digit_expand(0) == std::vector<u64>{0, 0});

  // Bijection between [0, p^s) and digit strings.
  for (const auto& ctx : {z8, z9, RingContext(5, 3)}) {
    std::set<std::vector<u64>> seen;
    for (u64 x = 0; x < ctx.q; ++x) {
      const auto d = ctx.digit_expand(x);
      REQUIRE(d.size() == ctx.s);
      for (u64 digit : d) CHECK(digit < ctx.p);
      CHECK(ctx.digits_assemble(d) == x);
      seen.insert(d);
    }
    CHECK(seen.size() == ctx.q);
  }
}

TEST_CASE("projection to the residue field", "[ring]") {
  CHECK(z9.project_to_field(7) == 1);
  CHECK(z8.project_to_field(4) == 0);
  CHECK(z8.project_to_field(1) == 1);

  // Ring homomorphism, exhaustively.
  for (const auto& ctx : {z8, z9, z4}) {
    for (u64 x = 0; x < ctx.q; ++x)
      for (u64 y = 0; y < ctx.q; ++y) {
        const u64 px = ctx.project_to_field(x), py = ctx.project_to_field(y);
        CHECK(ctx.project_to_field(ctx.add(x, y)) == (px + py) % ctx.p);
        CHECK(ctx.project_to_field(ctx.mul(x, y)) == px * py % ctx.p);
      }
  }
}

TEST_CASE("unit and radical counts", "[ring]") {
  for (const auto& ctx : {z8, z9, z4, RingContext(5, 2), RingContext(3, 1)}) {
    u64 units = 0, radical = 0;
    for (u64 x = 0; x < ctx.q; ++x) {
      if (ctx.is_unit(x)) ++units;
      if (x % ctx.p == 0) ++radical;
    }
    const u64 ps1 = ctx.q / ctx.p;  // p^{s-1}
    CHECK(units == (ctx.p - 1) * ps1);
    CHECK(radical == ps1);
  }
}

TEST_CASE("unit plus radical element stays a unit", "[ring]") {
  for (const auto& ctx : {z8, z9, z4}) {
    for (u64 a = 0; a < ctx.q; ++a) {
      if (!ctx.is_unit(a)) continue;
      for (u64 b = 0; b < ctx.q; b += ctx.p) {
        CHECK(ctx.is_unit(ctx.add(a, b)));
        CHECK(ctx.is_unit(ctx.sub(a, b)));
      }
    }
  }
}

TEST_CASE("context parameter validation", "[ring]") {
  CHECK_THROWS_AS(RingContext(4, 2), ParameterRange);   // 4 is not prime
  CHECK_THROWS_AS(RingContext(1, 2), ParameterRange);
  CHECK_THROWS_AS(RingContext(2, 0), ParameterRange);   // s >= 1
  CHECK_THROWS_AS(RingContext(2, 32), ParameterRange);  // p^s >= 2^32
  CHECK_THROWS_AS(RingContext(2, 64), ParameterRange);  // would overflow without the guard
  CHECK(RingContext(2, 31).q == (u64{1} << 31));
}

TEST_CASE("element wrapper arithmetic", "[ring]") {
  const RingElement a(3, z4), b(2, z4);
  CHECK((a + b).value() == 1);
  CHECK((a - b).value() == 1);
  CHECK((a * b).value() == 2);
  CHECK(a.inverse().value() == 3);
  CHECK(a.project_to_field() == 1);
  CHECK(RingElement(6, z4).value() == 2);  // normalized on construction
  const auto [t, u] = RingElement(2, z4).valuation_decompose();
  CHECK(t == 1);
  CHECK(u.value() == 1);
}
