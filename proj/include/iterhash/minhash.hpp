#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include "iterhash/hashcore.hpp"

namespace iterhash {

/// Sorted, duplicate-free feature ids of one object.
class FeatureSet {
 public:
  FeatureSet() = default;
  explicit FeatureSet(std::vector<std::uint64_t> ids);
  FeatureSet(std::initializer_list<std::uint64_t> ids);

  std::span<const std::uint64_t> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(std::uint64_t id) const noexcept;
  std::uint64_t max_id() const;

  friend bool operator==(const FeatureSet&, const FeatureSet&) = default;

 private:
  std::vector<std::uint64_t> ids_;
};

/// Per-hash argmin feature ids, tagged with the id of the generating family.
struct Signature {
  std::vector<std::uint64_t> mins;
  std::uint64_t family_id = 0;

  std::size_t size() const noexcept { return mins.size(); }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// |s1 ∩ s2| / |s1 ∪ s2|, with J(∅, ∅) = 1.
double exact_jaccard(const FeatureSet& s1, const FeatureSet& s2);

/// mins[i] = argmin over x in s of h_i(x); ties go to the smaller id.
/// Throws on an empty set or an id >= P.
Signature signature(const FeatureSet& s, const HashFamily& family);

/// Scratch-reusing variant for hot loops; `best` is resized to N.
void signature_into(const FeatureSet& s, const HashFamily& family, std::vector<std::uint64_t>& best,
                    Signature& out);

/// Fraction of indices where the two signatures agree.
double estimate_jaccard(const Signature& g1, const Signature& g2);

// Signature files. Each record is an object id, N, then N feature ids.
// Text: one whitespace-separated record per line.
// Binary: the same sequence of little-endian uint64 values.
struct SignatureRecord {
  std::uint64_t object_id = 0;
  std::vector<std::uint64_t> mins;

  friend bool operator==(const SignatureRecord&, const SignatureRecord&) = default;
};

void write_signatures_text(std::ostream& os, std::span<const SignatureRecord> records);
std::vector<SignatureRecord> read_signatures_text(std::istream& is);
void write_signatures_binary(std::ostream& os, std::span<const SignatureRecord> records);
std::vector<SignatureRecord> read_signatures_binary(std::istream& is);

}  // namespace iterhash
