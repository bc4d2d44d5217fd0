#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "iterhash/hashcore.hpp"
#include "iterhash/random.hpp"
#include "iterhash/stats.hpp"

using namespace iterhash;

namespace {

// ((a + i) * x + i * b) mod P evaluated directly in 128-bit arithmetic.
std::uint64_t closed_form(std::uint64_t a, std::uint64_t b, std::uint64_t p, std::uint64_t x, std::uint64_t i) {
  const unsigned __int128 v = static_cast<unsigned __int128>(a + i) * x + static_cast<unsigned __int128>(i) * b;
  return static_cast<std::uint64_t>(v % p);
}

}  // namespace

TEST_CASE("family kind names") {
  CHECK(parse_family_kind("random") == FamilyKind::random);
  CHECK(parse_family_kind("iterative") == FamilyKind::iterative);
  CHECK(to_string(FamilyKind::iterative) == "iterative");
  CHECK_THROWS_AS(parse_family_kind("tabulation"), std::invalid_argument);
}

TEST_CASE("HashParams ranges") {
  const Prime p(7);
  CHECK(HashParams(3, 5, p)(2) == 4);
  CHECK_THROWS_AS(HashParams(0, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(HashParams(7, 1, p), std::invalid_argument);
  CHECK_THROWS_AS(HashParams(1, 7, p), std::invalid_argument);
}

TEST_CASE("sample_random_family ranges and determinism") {
  const Prime p(7757);
  const auto f = sample_random_family(42, 3, p);
  CHECK(f.kind() == FamilyKind::random);
  CHECK(f.size() == 3);
  for (const auto& hp : f.params()) {
    CHECK(hp.a() >= 1);
    CHECK(hp.a() < 7757);
    CHECK(hp.b() < 7757);
  }
  const auto g = sample_random_family(42, 3, p);
  CHECK(f.params() == g.params());
  CHECK(f.id() == g.id());
  CHECK(sample_random_family(43, 3, p).id() != f.id());
  CHECK_THROWS_AS(sample_random_family(1, 0, p), std::invalid_argument);
  CHECK_THROWS_AS(sample_random_family(1, 3, Prime(2)), std::invalid_argument);
}

TEST_CASE("random multipliers are uniform on [1, P)") {
  const std::uint64_t p = 7757;
  const auto f = sample_random_family(99, 100000, Prime(p));
  // 100 equal-width bins over the 7756 admissible values; bins hold 77 or 78 values.
  std::vector<double> observed(100, 0.0), expected(100, 0.0);
  for (std::uint64_t a = 1; a < p; ++a) expected[(a - 1) * 100 / (p - 1)] += 100000.0 / (p - 1);
  for (const auto& hp : f.params()) observed[(hp.a() - 1) * 100 / (p - 1)] += 1.0;
  double stat = 0.0;
  for (int k = 0; k < 100; ++k) stat += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
  CHECK(chi_square_pvalue(stat, 99) > 0.01);
}

TEST_CASE("make_iterative_family headroom") {
  const Prime p(7757);
  const auto f = make_iterative_family(5, 1000, p);
  REQUIRE(f.params().size() == 1);
  const auto base = f.params().front();
  CHECK(base.a() >= 1);
  CHECK(base.a() + 1000 < 7757);
  CHECK(base.b() + 1000 < 7757);
  CHECK(f.descriptor().has_value());

  // N > P leaves no admissible multiplier.
  CHECK_THROWS_AS(make_iterative_family(5, 10000, p), std::invalid_argument);
  // Boundary of the P > 2N + 2 rule: 2*3877 + 2 = 7756 < 7757, 2*3878 + 2 = 7758.
  CHECK_NOTHROW(make_iterative_family(5, 3877, p));
  CHECK_THROWS_AS(make_iterative_family(5, 3878, p), std::invalid_argument);

  const Prime q(7919);
  CHECK_THROWS_AS(HashFamily::iterative(HashParams(7918, 7918, q), 4000), std::invalid_argument);
  CHECK_THROWS_AS(HashFamily::iterative(HashParams(1, 7919 - 4000, q), 4000), std::invalid_argument);
  CHECK_NOTHROW(HashFamily::iterative(HashParams(7919 - 4001, 7919 - 4001, q), 4000));
}

TEST_CASE("make_iterative_family is deterministic under its seed") {
  for (std::uint64_t seed : {0ULL, 1ULL, 123456789ULL}) {
    const auto f = make_iterative_family(seed, 500, Prime(7757));
    const auto g = make_iterative_family(seed, 500, Prime(7757));
    CHECK(f.params() == g.params());
    CHECK(f.id() == g.id());
  }
}

TEST_CASE("iterative recurrence on bare parameters") {
  const HashParams base(3, 5, Prime(7));
  // dh = (2 + 5) mod 7 = 0, so every value repeats h_0 = 6.
  std::vector<std::uint64_t> h(3);
  iterative_hash_values(base, 2, h);
  CHECK(h == std::vector<std::uint64_t>{6, 6, 6});
  CHECK(iterative_hash_at(base, 2, 2) == 6);
  CHECK(iterative_hash_at(base, 2, 0) == 6);
  // x = 1: h_0 = 3, dh = 6 -> 3, 2, 1, 0, 6
  h.resize(5);
  iterative_hash_values(base, 1, h);
  CHECK(h == std::vector<std::uint64_t>{3, 2, 1, 0, 6});
  for (std::uint64_t i = 0; i < 5; ++i) CHECK(iterative_hash_at(base, 1, i) == h[i]);
  CHECK_THROWS_AS(iterative_hash_at(base, 7, 0), std::out_of_range);
  // a + N < P holds but b + N < P does not, so the family rejects the same pair.
  CHECK_THROWS_AS(HashFamily::iterative(base, 3), std::invalid_argument);
}

TEST_CASE("eval_all small examples") {
  const Prime p(7);
  const auto it = HashFamily::iterative(HashParams(3, 1, p), 3);
  // dh = (2 + 1) mod 7 = 3; h_0 = 6.
  CHECK(it.eval_all(2) == std::vector<std::uint64_t>{6, 2, 5});
  CHECK(it.eval_at(2, 2) == 5);
  CHECK(it.eval_at(2, 0) == 6);

  const auto id = HashFamily::random({HashParams(1, 0, Prime(7757))});
  for (std::uint64_t x : {0ULL, 1ULL, 4321ULL, 7756ULL}) CHECK(id.eval_all(x) == std::vector<std::uint64_t>{x});

  CHECK_THROWS_AS(it.eval_all(7), std::out_of_range);
  CHECK_THROWS_AS(it.eval_at(1, 3), std::out_of_range);
  CHECK_THROWS_AS(HashFamily::random({HashParams(1, 0, Prime(7)), HashParams(1, 0, Prime(11))}),
                  std::invalid_argument);
}

TEST_CASE("iterative recurrence equals the closed form") {
  Rng rng(31337);
  const std::uint64_t primes[] = {7757, 1000003, 2305843009213693951ULL};
  for (int k = 0; k < 10000; ++k) {
    const std::uint64_t p = primes[k % 3];
    const std::size_t n = 1 + uniform_below(rng, 64);
    const std::uint64_t a = uniform_in(rng, 1, p - n);
    const std::uint64_t b = uniform_below(rng, p - n);
    const std::uint64_t x = uniform_below(rng, p);
    const auto f = HashFamily::iterative(HashParams(a, b, Prime(p)), n);
    const auto values = f.eval_all(x);
    const std::size_t i = uniform_below(rng, n);
    REQUIRE(values[i] == closed_form(a, b, p, x, i));
    REQUIRE(values.back() == closed_form(a, b, p, x, n - 1));
  }
}

TEST_CASE("eval_at matches eval_all at every index") {
  for (FamilyKind kind : {FamilyKind::iterative, FamilyKind::random}) {
    const auto f = HashFamily::sample(kind, 77, 1000, Prime(7757));
    Rng rng(8);
    for (int k = 0; k < 100; ++k) {
      const std::uint64_t x = uniform_below(rng, 7757);
      const auto all = f.eval_all(x);
      for (std::size_t i = 0; i < all.size(); ++i) REQUIRE(f.eval_at(x, i) == all[i]);
    }
  }
}

TEST_CASE("random family evaluates (a*x + b) mod P above 2^32") {
  const Prime p(2305843009213693951ULL);  // 2^61 - 1
  const auto f = sample_random_family(3, 50, p);
  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    const std::uint64_t x = uniform_below(rng, p.value());
    const auto values = f.eval_all(x);
    const auto params = f.params();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const unsigned __int128 v = static_cast<unsigned __int128>(params[i].a()) * x + params[i].b();
      REQUIRE(values[i] == static_cast<std::uint64_t>(v % p.value()));
    }
  }
}

TEST_CASE("every iterative member is a bijection on [0, P)") {
  const Prime p(101);
  const auto f = HashFamily::iterative(HashParams(60, 40, p), 40);
  std::vector<std::set<std::uint64_t>> images(f.size());
  for (std::uint64_t x = 0; x < 101; ++x) {
    const auto v = f.eval_all(x);
    for (std::size_t i = 0; i < v.size(); ++i) images[i].insert(v[i]);
  }
  for (const auto& img : images) CHECK(img.size() == 101);
}

TEST_CASE("family descriptor round trips through text and JSON") {
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    FamilyDescriptor d;
    d.kind = k % 2 ? FamilyKind::iterative : FamilyKind::random;
    d.seed = rng();
    d.hashes = 1 + uniform_below(rng, 200);
    d.prime = next_prime(2 * d.hashes + 3 + uniform_below(rng, 100000)).value();
    REQUIRE(FamilyDescriptor::from_text(d.to_text()) == d);
    REQUIRE(FamilyDescriptor::from_json(d.to_json()) == d);
    const auto f = HashFamily::from_descriptor(d);
    REQUIRE(f.descriptor() == d);
    REQUIRE(HashFamily::from_descriptor(FamilyDescriptor::from_text(d.to_text())).id() == f.id());
  }
}

TEST_CASE("family descriptor parse errors") {
  CHECK_THROWS_AS(FamilyDescriptor::from_text("kind=random\nseed=1\nhashes=3\n"), std::invalid_argument);
  CHECK_THROWS_AS(FamilyDescriptor::from_text("kind=random\nseed=x\nhashes=3\nprime=7\n"), std::invalid_argument);
  CHECK_THROWS_AS(FamilyDescriptor::from_text("kind random"), std::invalid_argument);
  CHECK_THROWS_AS(FamilyDescriptor::from_json("{\"kind\":\"random\"}"), std::invalid_argument);
  const auto d = FamilyDescriptor::from_text("# comment\nkind = iterative\nseed=9\nhashes=10\nprime=7757\n");
  CHECK(d.kind == FamilyKind::iterative);
  CHECK(d.prime == 7757);
  CHECK_THROWS_AS(HashFamily::from_descriptor({FamilyKind::random, 1, 3, 7755}), std::invalid_argument);
}
