#include "iterhash/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "iterhash/random.hpp"

namespace iterhash {

namespace {

bool is_token_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(char ch) {
  const auto c = static_cast<unsigned char>(ch);
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + ('a' - 'A')) : ch;
}

// Lowercased tokens in text order, duplicates kept.
std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    if (is_token_byte(static_cast<unsigned char>(ch))) {
      current.push_back(lower(ch));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

// `count` distinct values from [0, bound), in draw order.
std::vector<std::uint64_t> distinct_draws(Rng& rng, std::size_t count, std::uint64_t bound) {
  if (count > bound) throw std::invalid_argument("cannot draw more distinct ids than the id range holds");
  std::vector<std::uint64_t> out;
  out.reserve(count);
  if (bound <= 4 * static_cast<std::uint64_t>(count)) {
    // Dense: partial Fisher-Yates over the whole range.
    std::vector<std::uint64_t> pool(bound);
    for (std::uint64_t i = 0; i < bound; ++i) pool[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(pool[i], pool[i + uniform_below(rng, bound - i)]);
      out.push_back(pool[i]);
    }
    return out;
  }
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < count) {
    const std::uint64_t v = uniform_below(rng, bound);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens = split_tokens(text);
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

std::uint64_t Vocabulary::add(std::string_view term) {
  auto [it, inserted] = ids_.try_emplace(std::string(term), terms_.size());
  if (inserted) terms_.emplace_back(term);
  return it->second;
}

std::optional<std::uint64_t> Vocabulary::find(std::string_view term) const {
  auto it = ids_.find(std::string(term));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::term(std::uint64_t id) const {
  if (id >= terms_.size()) throw std::out_of_range("term id out of range");
  return terms_[id];
}

Corpus build_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::uint64_t> ids;
    for (const auto& token : split_tokens(line)) ids.push_back(corpus.vocabulary.add(token));
    if (ids.empty()) ++corpus.empty_documents;
    corpus.documents.emplace_back(std::move(ids));
  }
  if (in.bad()) throw std::runtime_error("error while reading corpus");
  return corpus;
}

Corpus build_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
  return build_corpus(in);
}

Prime corpus_prime(std::size_t vocabulary_size, std::uint64_t requested) {
  return next_prime(std::max<std::uint64_t>({vocabulary_size, requested, 2}));
}

SetPair synth_pair(double target, std::size_t size, std::uint64_t seed, std::uint64_t id_bound) {
  if (!(target >= 0.0 && target <= 1.0)) throw std::invalid_argument("synth_pair: target Jaccard must lie in [0, 1]");
  if (size == 0) throw std::invalid_argument("synth_pair: size must be positive");

  std::size_t best_k = 0, best_u = 0;
  double best_err = 2.0;
  for (std::size_t u = 1; u <= 2 * size; ++u) {
    const auto k = static_cast<std::size_t>(std::llround(target * static_cast<double>(u)));
    if (k == 0 && u < 2) continue;  // both sets must be non-empty
    const double err = std::abs(static_cast<double>(k) / static_cast<double>(u) - target);
    if (err < best_err - 1e-15) {
      best_err = err;
      best_k = k;
      best_u = u;
    }
  }
  if (best_u == 0) throw std::invalid_argument("synth_pair: target not representable");
  if (best_u > id_bound) throw std::invalid_argument("synth_pair: id range too small for the union");

  Rng rng(seed);
  const auto ids = distinct_draws(rng, best_u, id_bound);
  const std::size_t only_first = (best_u - best_k + 1) / 2;
  std::vector<std::uint64_t> first(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(best_k + only_first));
  std::vector<std::uint64_t> second(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(best_k));
  second.insert(second.end(), ids.begin() + static_cast<std::ptrdiff_t>(best_k + only_first), ids.end());
  return {FeatureSet(std::move(first)), FeatureSet(std::move(second))};
}

std::vector<SetPair> synth_pairs(std::size_t count, double lo, double hi, std::size_t size, std::uint64_t seed,
                                 std::uint64_t id_bound) {
  if (!(lo <= hi)) throw std::invalid_argument("synth_pairs: empty target range");
  Rng rng(derive_seed(seed, 0));
  std::vector<SetPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double target = lo + (hi - lo) * uniform_unit(rng);
    pairs.push_back(synth_pair(target, size, derive_seed(seed, i + 1), id_bound));
  }
  return pairs;
}

std::vector<FeatureSet> synth_corpus(std::size_t documents, std::size_t features, std::uint64_t vocabulary,
                                     std::uint64_t seed) {
  if (features == 0) throw std::invalid_argument("synth_corpus: features must be positive");
  Rng rng(seed);
  const std::size_t lo = std::max<std::size_t>(1, features / 2);
  const std::size_t hi = features + features / 2;
  std::vector<FeatureSet> docs;
  docs.reserve(documents);
  for (std::size_t d = 0; d < documents; ++d) {
    const auto n = static_cast<std::size_t>(uniform_in(rng, lo, hi + 1));
    docs.emplace_back(distinct_draws(rng, n, vocabulary));
  }
  return docs;
}

std::vector<std::pair<std::size_t, std::size_t>> corpus_pairs(std::size_t documents, std::uint64_t seed) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (documents < 2) return out;
  if (documents <= kAllPairsLimit) {
    out.reserve(documents * (documents - 1) / 2);
    for (std::size_t i = 0; i < documents; ++i) {
      for (std::size_t j = i + 1; j < documents; ++j) out.emplace_back(i, j);
    }
    return out;
  }
  Rng rng(seed);
  std::unordered_set<std::uint64_t> seen;
  out.reserve(kSampledPairs);
  while (out.size() < kSampledPairs) {
    std::size_t i = uniform_below(rng, documents);
    std::size_t j = uniform_below(rng, documents);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (seen.insert(static_cast<std::uint64_t>(i) * documents + j).second) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace iterhash
