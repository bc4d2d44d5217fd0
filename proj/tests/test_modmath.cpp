#include <cstdint>
#include <stdexcept>

#include "doctest.h"
#include "iterhash/modmath.hpp"
#include "iterhash/random.hpp"

using namespace iterhash;

namespace {

// Double-and-add multiplication; every intermediate stays below 2p < 2^64.
std::uint64_t peasant_mulmod(std::uint64_t a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t result = 0;
  a %= p;
  while (x > 0) {
    if (x & 1) {
      result += a;
      if (result >= p) result -= p;
    }
    a += a;
    if (a >= p) a -= p;
    x >>= 1;
  }
  return result;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t trial_division_next_prime(std::uint64_t n) {
  while (!trial_division_prime(n)) ++n;
  return n;
}

}  // namespace

TEST_CASE("mulmod small cases") {
  CHECK(mulmod(3, 2, 7) == 6);
  CHECK(mulmod(0, 5, 7) == 0);
  CHECK(mulmod(0, 7756, 7757) == 0);
  CHECK(mulmod(7756, 7756, 7757) == 1);
  CHECK(peasant_mulmod(7756, 7756, 7757) == 1);
}

TEST_CASE("mulmod matches double-and-add oracle on random triples") {
  Rng rng(20240601);
  for (int k = 0; k < 100000; ++k) {
    // Mix small, mid and near-2^63 moduli.
    std::uint64_t p;
    switch (k % 3) {
      case 0: p = 2 + uniform_below(rng, 10000); break;
      case 1: p = 2 + uniform_below(rng, std::uint64_t{1} << 40); break;
      default: p = kMaxPrimeBound - 1 - uniform_below(rng, std::uint64_t{1} << 20); break;
    }
    const std::uint64_t a = uniform_below(rng, p);
    const std::uint64_t x = uniform_below(rng, p);
    REQUIRE(mulmod(a, x, p) == peasant_mulmod(a, x, p));
  }
}

TEST_CASE("addmod wraps once") {
  CHECK(addmod(5, 4, 7) == 2);
  CHECK(addmod(6, 0, 7) == 6);
  const std::uint64_t p = 9223372036854775783ULL;
  CHECK(addmod(p - 1, p - 1, p) == p - 2);
}

TEST_CASE("is_prime against trial division and known pseudoprimes") {
  for (std::uint64_t n = 0; n < 20000; ++n) REQUIRE(is_prime(n) == trial_division_prime(n));
  CHECK(is_prime(7757));
  CHECK(is_prime(7753));
  CHECK_FALSE(is_prime(561));                    // Carmichael
  CHECK_FALSE(is_prime(3215031751ULL));          // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases 2..23
  CHECK(is_prime((std::uint64_t{1} << 61) - 1));
  CHECK(is_prime(9223372036854775783ULL));  // largest prime below 2^63
  CHECK_FALSE(is_prime(9223372036854775807ULL));
}

TEST_CASE("next_prime examples") {
  CHECK(next_prime(2).value() == 2);
  CHECK(next_prime(5000).value() == 5003);
  CHECK(trial_division_next_prime(5000) == 5003);
  // 7753 is prime, so the smallest prime >= 7750 is 7753; 7757 follows it.
  CHECK(next_prime(7750).value() == 7753);
  CHECK(trial_division_next_prime(7750) == 7753);
  CHECK(next_prime(7754).value() == 7757);
  CHECK(next_prime(100000).value() == 100003);
}

TEST_CASE("next_prime agrees with trial division and fixes primes") {
  Rng rng(7);
  for (int k = 0; k < 2000; ++k) {
    const std::uint64_t n = 2 + uniform_below(rng, 2000000);
    const std::uint64_t p = next_prime(n).value();
    REQUIRE(p >= n);
    REQUIRE(p == trial_division_next_prime(n));
    REQUIRE(next_prime(p).value() == p);
  }
}

TEST_CASE("next_prime errors") {
  CHECK_THROWS_AS(next_prime(0), std::invalid_argument);
  CHECK_THROWS_AS(next_prime(1), std::invalid_argument);
  CHECK(next_prime(9223372036854775783ULL).value() == 9223372036854775783ULL);
  CHECK_THROWS_AS(next_prime(9223372036854775784ULL), std::overflow_error);
}

TEST_CASE("Prime rejects composites and out-of-range values") {
  CHECK_NOTHROW(Prime(7757));
  CHECK_THROWS_AS(Prime(7755), std::invalid_argument);
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(kMaxPrimeBound + 1), std::invalid_argument);
}
