#include "gseq/fibzeck.hpp"

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

using namespace gseq;

namespace {

using u128 = unsigned __int128;

// Bisection square root on 128 bits; deliberately a different algorithm from
// the library's Newton iteration.
u128 isqrt128(u128 x) {
  u128 lo = 0, hi = u128{1} << 64;
  while (lo + 1 < hi) {
    const u128 mid = lo + (hi - lo) / 2;
    if (mid * mid <= x) lo = mid;
    else hi = mid;
  }
  return lo;
}

// floor((n+1) * (sqrt5 - 1) / 2) in 62-bit fixed point. The scale error is
// below 2^-62 per unit, far smaller than the distance from any m*sqrt5/2 to
// the nearest integer at these sizes.
std::uint64_t g_floor_oracle(std::uint64_t n) {
  static const u128 sqrt5_scaled = isqrt128(u128{5} << 124);  // floor(sqrt5 * 2^62)
  const u128 m = n + 1;
  const u128 scaled = m * sqrt5_scaled - (m << 62);
  return static_cast<std::uint64_t>(scaled >> 63);
}

}  // namespace

TEST_CASE("fib base cases and small values") {
  CHECK(fib(1) == 1);
  CHECK(fib(2) == 1);
  CHECK(fib(3) == 2);
  CHECK(fib(10) == 55);  // iterating 1,1,2,3,5,8,13,21,34,55
}

TEST_CASE("fib recurrence and monotonicity across the whole 64-bit range") {
  for (std::uint64_t n = 3; n <= fib_max_index; ++n) {
    CHECK(fib(n) == fib(n - 1) + fib(n - 2));
    CHECK(fib(n) > fib(n - 1));
  }
  CHECK(fib(92) == 7540113804746346429ULL);
  CHECK(fib(93) == 12200160415121876738ULL);
}

TEST_CASE("fib rejects index 0 and overflows loudly") {
  CHECK_THROWS_AS(fib(0), std::invalid_argument);
  CHECK_THROWS_AS(fib(94), std::overflow_error);
  CHECK_THROWS_WITH_AS(fib(94), doctest::Contains("94"), std::overflow_error);
}

TEST_CASE("isqrt examples") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(2) == 1);
  CHECK(isqrt(25) == 5);
  CHECK(isqrt(2205) == 46);  // 46^2 = 2116 <= 2205 < 2209 = 47^2
}

TEST_CASE("isqrt bracket property, exhaustive small range") {
  for (std::uint64_t m = 0; m <= 100000; ++m) {
    const std::uint64_t s = isqrt(m);
    CHECK(s * s <= m);
    CHECK((s + 1) * (s + 1) > m);
  }
}

TEST_CASE("isqrt at the top of the 64-bit range") {
  const std::uint64_t top = std::numeric_limits<std::uint64_t>::max();
  CHECK(isqrt(top) == 4294967295ULL);
  const std::uint64_t s = 4294967295ULL;  // 2^32 - 1
  CHECK(isqrt(s * s) == s);
  CHECK(isqrt(s * s - 1) == s - 1);
  CHECK(isqrt(s * s + 1) == s);
}

TEST_CASE("isqrt bracket property on random 64-bit inputs") {
  std::mt19937_64 rng(0x5eedULL);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t m = rng();
    const u128 s = isqrt(m);
    CHECK(s * s <= u128{m});
    CHECK((s + 1) * (s + 1) > u128{m});
  }
}

TEST_CASE("zeck_encode examples") {
  CHECK(zeck_encode(0).indices.empty());
  CHECK(zeck_encode(1).indices == std::vector<std::uint32_t>{2});
  CHECK(zeck_encode(20).indices == std::vector<std::uint32_t>{7, 5, 3});  // 13 + 5 + 2
}

TEST_CASE("zeck round trip with gap condition, 0..100000") {
  // decode(encode(n)) == n also forces encode to be injective.
  for (std::uint64_t n = 0; n <= 100000; ++n) {
    const Zeck z = zeck_encode(n);
    CHECK(zeck_valid(z));
    CHECK(zeck_decode(z) == n);
  }
}

TEST_CASE("zeck encodings are pairwise distinct on a visible window") {
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t n = 0; n <= 1000; ++n) seen.insert(zeck_encode(n).indices);
  CHECK(seen.size() == 1001);
}

TEST_CASE("zeck round trip on random 64-bit values") {
  std::mt19937_64 rng(0xfeedULL);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = rng();
    const Zeck z = zeck_encode(n);
    CHECK(zeck_valid(z));
    CHECK(zeck_decode(z) == n);
  }
  CHECK(zeck_decode(zeck_encode(std::numeric_limits<std::uint64_t>::max())) ==
        std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("zeck_decode examples and validation") {
  CHECK(zeck_decode(Zeck{}) == 0);
  CHECK(zeck_decode(Zeck{{7, 4, 2}}) == 17);  // 13 + 3 + 1
  CHECK_THROWS_AS(zeck_decode(Zeck{{2, 7}}), std::invalid_argument);   // ascending
  CHECK_THROWS_AS(zeck_decode(Zeck{{7, 6}}), std::invalid_argument);   // gap violation
  CHECK_THROWS_AS(zeck_decode(Zeck{{3, 1}}), std::invalid_argument);   // index below 2
  CHECK_THROWS_AS(zeck_decode(Zeck{{94}}), std::invalid_argument);     // index out of range
}

TEST_CASE("zeck_decode overflows loudly on a too-large valid-shaped sum") {
  // 93, 91, ..., 3 respects the gaps but sums to F_94 - 1, past 64 bits.
  Zeck z;
  for (std::uint32_t r = 93; r >= 3; r -= 2) z.indices.push_back(r);
  REQUIRE(zeck_valid(z));
  CHECK_THROWS_AS(zeck_decode(z), std::overflow_error);
}

TEST_CASE("g_zeck examples") {
  CHECK(g_zeck(1) == 1);    // 1 = F_2 shifts to F_1 = 1
  CHECK(g_zeck(17) == 11);  // F_7+F_4+F_2 -> F_6+F_3+F_1 = 8+2+1
  CHECK(g_zeck(20) == 12);
  CHECK_THROWS_AS(g_zeck(0), std::invalid_argument);
}

TEST_CASE("g_floor examples") {
  CHECK(g_floor(1) == 1);
  CHECK(g_floor(9) == 6);
  CHECK(g_floor(20) == 12);  // isqrt(5*21^2) = 46, (46-21) div 2
  CHECK_THROWS_AS(g_floor(0), std::invalid_argument);
}

TEST_CASE("g_floor overflow boundary for 5*(n+1)^2") {
  CHECK_NOTHROW(g_floor(1900000000ULL));
  CHECK_THROWS_AS(g_floor(3000000000ULL), std::overflow_error);
}

TEST_CASE("shift map agrees with the exact floor form on 1..100000") {
  for (std::uint64_t n = 1; n <= 100000; ++n) CHECK(g_zeck(n) == g_floor(n));
}

TEST_CASE("g_floor matches the high-precision fixed-point oracle on 1..100000") {
  for (std::uint64_t n = 1; n <= 100000; ++n) CHECK(g_floor(n) == g_floor_oracle(n));
}
