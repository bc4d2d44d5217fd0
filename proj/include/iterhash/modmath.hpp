#pragma once

#include <cstdint>

namespace iterhash {

/// A certified prime below 2^63. Construction runs a deterministic
/// Miller-Rabin check and throws std::invalid_argument on composites.
class Prime {
 public:
  explicit Prime(std::uint64_t value);

  std::uint64_t value() const noexcept { return value_; }
  operator std::uint64_t() const noexcept { return value_; }

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  std::uint64_t value_;
};

inline constexpr std::uint64_t kMaxPrimeBound = std::uint64_t{1} << 63;

// (a * x) mod p for a, x < p, through a 128-bit intermediate.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t x, std::uint64_t p) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * x % p);
}

// (a + b) mod p for a, b < p < 2^63; the sum cannot wrap.
inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) noexcept;

/// Deterministic for every 64-bit input (bases 2..37).
bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime >= n. Throws std::invalid_argument for n < 2 and
/// std::overflow_error when the answer would reach 2^63.
Prime next_prime(std::uint64_t n);

}  // namespace iterhash
