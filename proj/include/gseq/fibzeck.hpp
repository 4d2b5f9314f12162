#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace gseq {

// Largest n with F_n representable in 64 unsigned bits (F_94 wraps).
inline constexpr std::uint32_t fib_max_index = 93;

namespace detail {

inline constexpr std::array<std::uint64_t, fib_max_index + 1> make_fib_table() {
  std::array<std::uint64_t, fib_max_index + 1> f{};
  f[1] = 1;
  f[2] = 1;
  for (std::uint32_t i = 3; i <= fib_max_index; ++i) f[i] = f[i - 1] + f[i - 2];
  return f;
}

// f[0] is unused and holds 0.
inline constexpr auto fib_table = make_fib_table();

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw std::overflow_error(std::string(what) + ": 64-bit overflow in addition");
  return a + b;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw std::overflow_error(std::string(what) + ": 64-bit overflow in multiplication");
  return a * b;
}

}  // namespace detail

/// F_n under F_1 = F_2 = 1. Throws std::overflow_error past the 64-bit range.
inline std::uint64_t fib(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("fib: index must be >= 1");
  if (n > fib_max_index)
    throw std::overflow_error("fib(" + std::to_string(n) + "): exceeds 64-bit range (max index " +
                              std::to_string(fib_max_index) + ")");
  return detail::fib_table[static_cast<std::size_t>(n)];
}

/// Largest s with s*s <= m. Integer Newton iteration, no floating point.
inline std::uint64_t isqrt(std::uint64_t m) noexcept {
  if (m < 2) return m;
  // Start from a power of two >= sqrt(m); the iterates decrease monotonically
  // until they land on floor(sqrt(m)).
  std::uint64_t x = std::uint64_t{1} << ((std::bit_width(m) + 1) / 2);
  std::uint64_t y = (x + m / x) / 2;
  while (y < x) {
    x = y;
    y = (x + m / x) / 2;
  }
  return x;
}

// Zeckendorf representation: n = F_{r_1} + ... + F_{r_j} with r_1 > r_2 > ...,
// r_i >= r_{i+1} + 2 and every r_i >= 2. The empty list encodes 0.
struct Zeck {
  std::vector<std::uint32_t> indices;

  bool operator==(const Zeck&) const = default;
};

/// Checks the descending-order, gap and minimum-index invariants.
inline bool zeck_valid(const Zeck& z) noexcept {
  const auto& r = z.indices;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 2 || r[i] > fib_max_index) return false;
    if (i + 1 < r.size() && r[i] < r[i + 1] + 2) return false;
  }
  return true;
}

/// Greedy Zeckendorf encoding; the greedy choice forces the gap condition.
inline Zeck zeck_encode(std::uint64_t n) {
  Zeck z;
  std::uint32_t hi = fib_max_index;
  while (n > 0) {
    while (detail::fib_table[hi] > n) --hi;  // hi >= 2 here: F_2 = 1 <= n
    z.indices.push_back(hi);
    n -= detail::fib_table[hi];
    // remainder < F_{hi-1}, so the next index is at most hi - 2
  }
  return z;
}

/// Sum of F_{r_i}. Validates the invariants before decoding.
inline std::uint64_t zeck_decode(const Zeck& z) {
  if (!zeck_valid(z))
    throw std::invalid_argument("zeck_decode: indices violate the Zeckendorf invariants");
  std::uint64_t n = 0;
  for (std::uint32_t r : z.indices) n = detail::checked_add(n, detail::fib_table[r], "zeck_decode");
  return n;
}

/// G(n) via the Zeckendorf shift: n = sum F_{r_i} maps to sum F_{r_i - 1}.
/// Index 2 shifts down to F_1 = 1, which is a value-level sum only.
inline std::uint64_t g_zeck(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("g_zeck: n must be >= 1");
  std::uint64_t g = 0;
  std::uint32_t hi = fib_max_index;
  while (n > 0) {
    while (detail::fib_table[hi] > n) --hi;
    g += detail::fib_table[hi - 1];  // < F_hi <= original n, cannot overflow
    n -= detail::fib_table[hi];
  }
  return g;
}

/// G(n) = floor((n+1)/phi) evaluated exactly in integers.
///
/// With m = n+1 and phi^-1 = (sqrt5 - 1)/2 the target is floor((m*sqrt5 - m)/2).
/// Since sqrt5 is irrational, m*sqrt5 is never an integer, so
/// floor(m*sqrt5) = isqrt(5*m^2). Writing s = isqrt(5*m^2) and
/// m*sqrt5 = s + frac with 0 < frac < 1:
///   (m*sqrt5 - m)/2 = (s - m)/2 + frac/2,
/// and whether s - m is even or odd, frac/2 < 1/2 cannot carry the floor past
/// the next integer, hence the answer is (s - m) div 2 exactly.
inline std::uint64_t g_floor(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("g_floor: n must be >= 1");
  const std::uint64_t m = detail::checked_add(n, 1, "g_floor");
  const std::uint64_t mm = detail::checked_mul(m, m, "g_floor");
  const std::uint64_t s = isqrt(detail::checked_mul(5, mm, "g_floor"));
  return (s - m) / 2;  // s >= 2m for m >= 1, no underflow
}

}  // namespace gseq
