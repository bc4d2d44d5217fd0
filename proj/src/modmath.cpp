#include "iterhash/modmath.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace iterhash {

Prime::Prime(std::uint64_t value) : value_(value) {
  if (value >= kMaxPrimeBound || !is_prime(value)) {
    throw std::invalid_argument("not a prime below 2^63: " + std::to_string(value));
  }
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) noexcept {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) noexcept {
  // The first twelve primes as witnesses are sufficient below 3.3e24.
  static constexpr std::array<std::uint64_t, 12> kWitnesses = {2,  3,  5,  7,  11, 13,
                                                               17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t w : kWitnesses) {
    if (n % w == 0) return n == w;
  }

  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }

  for (std::uint64_t w : kWitnesses) {
    std::uint64_t x = powmod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Prime next_prime(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("next_prime: n must be >= 2");
  for (std::uint64_t c = n; c < kMaxPrimeBound; ++c) {
    if (is_prime(c)) return Prime(c);
  }
  throw std::overflow_error("next_prime: no prime below 2^63 at or above " + std::to_string(n));
}

}  // namespace iterhash
