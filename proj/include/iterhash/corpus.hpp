#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "iterhash/minhash.hpp"

namespace iterhash {

/// Bag of words: lowercase, split on runs of non-alphanumeric ASCII,
/// deduplicate, sort. Bytes >= 0x80 are kept inside tokens.
std::vector<std::string> tokenize(std::string_view text);

/// Term <-> id bijection with ids assigned 0..M-1 in first-occurrence order.
class Vocabulary {
 public:
  std::uint64_t add(std::string_view term);
  std::optional<std::uint64_t> find(std::string_view term) const;
  const std::string& term(std::uint64_t id) const;
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::unordered_map<std::string, std::uint64_t> ids_;
  std::vector<std::string> terms_;
};

struct Corpus {
  Vocabulary vocabulary;
  std::vector<FeatureSet> documents;
  std::size_t empty_documents = 0;  // lines that produced no tokens
};

/// One document per line. Throws std::runtime_error if the file cannot be read.
Corpus build_corpus(const std::filesystem::path& path);
Corpus build_corpus(std::istream& in);

/// Prime for a corpus: next_prime(max(M, requested)).
Prime corpus_prime(std::size_t vocabulary_size, std::uint64_t requested = 2);

using SetPair = std::pair<FeatureSet, FeatureSet>;

inline constexpr std::uint64_t kDefaultIdBound = std::uint64_t{1} << 20;

/// Two sets whose Jaccard index is k/u, the closest fraction to `target`
/// with union u <= 2*size (smallest u on ties). Ids are distinct draws from
/// [0, id_bound). Throws std::invalid_argument if the target is outside
/// [0, 1] or no non-empty pair fits.
SetPair synth_pair(double target, std::size_t size, std::uint64_t seed,
                   std::uint64_t id_bound = kDefaultIdBound);

/// `count` pairs with targets uniform on [lo, hi].
std::vector<SetPair> synth_pairs(std::size_t count, double lo, double hi, std::size_t size, std::uint64_t seed,
                                 std::uint64_t id_bound = kDefaultIdBound);

/// Documents with sizes uniform on [features/2, 3*features/2] and ids
/// uniform without repetition on [0, vocabulary).
std::vector<FeatureSet> synth_corpus(std::size_t documents, std::size_t features, std::uint64_t vocabulary,
                                     std::uint64_t seed);

inline constexpr std::size_t kAllPairsLimit = 1000;
inline constexpr std::size_t kSampledPairs = 100000;

/// Index pairs (i < j) of a corpus: every pair when documents <= 1000,
/// otherwise 100000 distinct pairs sampled uniformly.
std::vector<std::pair<std::size_t, std::size_t>> corpus_pairs(std::size_t documents, std::uint64_t seed);

}  // namespace iterhash
