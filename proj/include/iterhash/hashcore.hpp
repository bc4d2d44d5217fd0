#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iterhash/modmath.hpp"

namespace iterhash {

enum class FamilyKind { random, iterative };

std::string_view to_string(FamilyKind kind) noexcept;
/// Accepts "random" or "iterative"; throws std::invalid_argument otherwise.
FamilyKind parse_family_kind(std::string_view name);

/// One Carter-Wegman member h(x) = (a*x + b) mod P with 1 <= a < P, 0 <= b < P.
class HashParams {
 public:
  HashParams(std::uint64_t a, std::uint64_t b, Prime prime);

  std::uint64_t a() const noexcept { return a_; }
  std::uint64_t b() const noexcept { return b_; }
  Prime prime() const noexcept { return prime_; }

  std::uint64_t operator()(std::uint64_t x) const noexcept;

  friend bool operator==(const HashParams&, const HashParams&) = default;

 private:
  std::uint64_t a_;
  std::uint64_t b_;
  Prime prime_;
};

/// The four values that regenerate a seeded family exactly.
struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::random;
  std::uint64_t seed = 0;
  std::size_t hashes = 0;
  std::uint64_t prime = 0;

  friend bool operator==(const FamilyDescriptor&, const FamilyDescriptor&) = default;

  /// key=value lines: kind, seed, hashes, prime.
  std::string to_text() const;
  static FamilyDescriptor from_text(std::string_view text);

  std::string to_json() const;
  static FamilyDescriptor from_json(std::string_view text);
};

/// An immutable set of N hash functions over [0, P), either N independent
/// Carter-Wegman pairs or the iterative family
///
///   h_i(x) = ((a + i) * x + i * b) mod P,   i = 0 .. N-1,
///
/// which is evaluated as h_0 = a*x mod P followed by N-1 modular additions
/// of dh = (x + b) mod P. Iterative families require a + N < P and
/// b + N < P so that every member stays a bijection on [0, P).
class HashFamily {
 public:
  static HashFamily random(std::vector<HashParams> params);
  static HashFamily iterative(HashParams base, std::size_t count);

  /// a uniform on [1, P), b uniform on [0, P), N pairs from the seed.
  static HashFamily sample_random(std::uint64_t seed, std::size_t count, Prime prime);
  /// One (a, b) pair with a in [1, P-N), b in [0, P-N). Rejects P <= 2N + 2.
  static HashFamily sample_iterative(std::uint64_t seed, std::size_t count, Prime prime);
  static HashFamily sample(FamilyKind kind, std::uint64_t seed, std::size_t count, Prime prime);
  static HashFamily from_descriptor(const FamilyDescriptor& descriptor);

  FamilyKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return count_; }
  Prime prime() const noexcept { return prime_; }
  /// Fingerprint of kind, prime and every parameter; equal ids mean equal families.
  std::uint64_t id() const noexcept { return id_; }
  /// Present only for families built from a seed.
  const std::optional<FamilyDescriptor>& descriptor() const noexcept { return descriptor_; }

  /// Random families: all N parameter pairs. Iterative: the single base pair.
  std::vector<HashParams> params() const;

  /// h_0(x) .. h_{N-1}(x). Throws std::out_of_range if x >= P.
  std::vector<std::uint64_t> eval_all(std::uint64_t x) const;
  void eval_into(std::uint64_t x, std::span<std::uint64_t> out) const;

  /// h_i(x) alone. For iterative families this is the closed form
  /// (a*x + i*dh) mod P, independent of the other indices.
  std::uint64_t eval_at(std::uint64_t x, std::size_t i) const;

  /// Calls visit(i, h_i(x)) for i = 0 .. N-1 in order. x must be < P.
  template <typename Visitor>
  void for_each_value(std::uint64_t x, Visitor&& visit) const;

 private:
  HashFamily() = default;
  void finalize_id();
  void check_input(std::uint64_t x) const;

  FamilyKind kind_ = FamilyKind::random;
  std::size_t count_ = 0;
  Prime prime_{2};
  std::uint64_t id_ = 0;
  std::optional<FamilyDescriptor> descriptor_;
  // Random: N multipliers and offsets. Iterative: exactly one of each.
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

HashFamily sample_random_family(std::uint64_t seed, std::size_t count, Prime prime);
HashFamily make_iterative_family(std::uint64_t seed, std::size_t count, Prime prime);

// The iterative recurrence on a bare (a, b, P) with no headroom requirement:
// out[0] = a*x mod P, out[i] = out[i-1] + (x + b) mod P. x must be < P.
void iterative_hash_values(const HashParams& base, std::uint64_t x, std::span<std::uint64_t> out);
// Closed form of the same sequence at index i: (a*x + i*((x + b) mod P)) mod P.
std::uint64_t iterative_hash_at(const HashParams& base, std::uint64_t x, std::uint64_t i);

template <typename Visitor>
void HashFamily::for_each_value(std::uint64_t x, Visitor&& visit) const {
  const std::uint64_t p = prime_.value();
  if (kind_ == FamilyKind::iterative) {
    std::uint64_t h = mulmod(a_[0], x, p);
    const std::uint64_t dh = addmod(x, b_[0], p);
    visit(std::size_t{0}, h);
    for (std::size_t i = 1; i < count_; ++i) {
      h += dh;
      if (h >= p) h -= p;
      visit(i, h);
    }
    return;
  }
  const std::uint64_t* a = a_.data();
  const std::uint64_t* b = b_.data();
  if (p <= (std::uint64_t{1} << 32)) {
    // (P-1)^2 + (P-1) < 2^64, so plain 64-bit products are exact.
    for (std::size_t i = 0; i < count_; ++i) visit(i, (a[i] * x + b[i]) % p);
  } else {
    for (std::size_t i = 0; i < count_; ++i) visit(i, addmod(mulmod(a[i], x, p), b[i], p));
  }
}

}  // namespace iterhash
