#include "iterhash/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "iterhash/random.hpp"

namespace iterhash {

namespace {

std::uint64_t max_feature_id(std::span<const FeatureSet> sets) {
  std::uint64_t m = 0;
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("empty feature set in workload");
    m = std::max(m, s.max_id());
  }
  return m;
}

// Builds a family and signs every document once; returns elapsed seconds.
double time_generate_and_apply(FamilyKind kind, std::uint64_t seed, std::size_t hashes, Prime prime,
                               std::span<const FeatureSet> corpus, std::uint64_t& checksum) {
  std::vector<std::uint64_t> best;
  Signature sig;
  const auto start = std::chrono::steady_clock::now();
  const HashFamily family = HashFamily::sample(kind, seed, hashes, prime);
  for (const auto& doc : corpus) {
    signature_into(doc, family, best, sig);
    checksum = splitmix64(checksum ^ sig.mins.front() ^ sig.mins.back());
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

ErrorSummary mean_and_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean of no values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

BenchReport run_timing(std::span<const FeatureSet> corpus, const TimingConfig& config) {
  if (config.repetitions < 2) throw std::invalid_argument("timing needs at least two repetitions");
  if (corpus.empty()) throw std::invalid_argument("timing needs a non-empty corpus");
  const std::uint64_t max_id = max_feature_id(corpus);
  const Prime prime = config.prime != 0
                          ? Prime(config.prime)
                          : next_prime(std::max<std::uint64_t>(max_id + 1, 2 * config.hashes + 3));

  BenchReport r;
  r.hashes = config.hashes;
  r.documents = corpus.size();
  r.prime = prime.value();

  if (config.warmup) {
    const std::uint64_t seed = derive_seed(config.seed, config.repetitions);
    time_generate_and_apply(FamilyKind::random, seed, config.hashes, prime, corpus, r.checksum);
    time_generate_and_apply(FamilyKind::iterative, seed, config.hashes, prime, corpus, r.checksum);
  }
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    const std::uint64_t seed = derive_seed(config.seed, rep);
    // Family order alternates between repetitions.
    if (rep % 2 == 0) {
      r.random_seconds.push_back(
          time_generate_and_apply(FamilyKind::random, seed, config.hashes, prime, corpus, r.checksum));
      r.iterative_seconds.push_back(
          time_generate_and_apply(FamilyKind::iterative, seed, config.hashes, prime, corpus, r.checksum));
    } else {
      r.iterative_seconds.push_back(
          time_generate_and_apply(FamilyKind::iterative, seed, config.hashes, prime, corpus, r.checksum));
      r.random_seconds.push_back(
          time_generate_and_apply(FamilyKind::random, seed, config.hashes, prime, corpus, r.checksum));
    }
  }

  const auto rs = mean_and_std(r.random_seconds);
  const auto is = mean_and_std(r.iterative_seconds);
  r.random_mean = rs.mean;
  r.random_std = rs.std;
  r.iterative_mean = is.mean;
  r.iterative_std = is.std;
  r.speedup = r.random_mean / std::max(r.iterative_mean, std::numeric_limits<double>::min());
  try {
    const auto tt = paired_t_test(r.random_seconds, r.iterative_seconds);
    r.t = tt.t;
    r.p_value = tt.p_value;
  } catch (const std::invalid_argument&) {
    r.t = std::numeric_limits<double>::quiet_NaN();
    r.p_value = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

BenchReport run_timing(std::span<const FeatureSet> corpus, std::size_t hashes, std::size_t repetitions,
                       std::uint64_t seed) {
  TimingConfig config;
  config.hashes = hashes;
  config.repetitions = repetitions;
  config.seed = seed;
  return run_timing(corpus, config);
}

std::vector<EstimationRow> run_estimation(std::span<const SetPair> pairs, const EstimationConfig& config) {
  if (pairs.empty()) throw std::invalid_argument("estimation needs at least one pair");
  if (config.hash_counts.empty()) throw std::invalid_argument("estimation needs at least one hash count");
  if (config.seeds == 0) throw std::invalid_argument("estimation needs at least one seed");

  std::uint64_t max_id = 0;
  for (const auto& [a, b] : pairs) {
    if (a.empty() || b.empty()) throw std::invalid_argument("estimation pairs must be non-empty sets");
    max_id = std::max({max_id, a.max_id(), b.max_id()});
  }
  const std::size_t max_hashes = *std::max_element(config.hash_counts.begin(), config.hash_counts.end());
  if (max_hashes == 0) throw std::invalid_argument("hash counts must be positive");
  const Prime prime = config.prime != 0 ? Prime(config.prime)
                                        : next_prime(std::max<std::uint64_t>(max_id + 1, 2 * max_hashes + 3));

  std::vector<double> truths;
  truths.reserve(pairs.size());
  for (const auto& [a, b] : pairs) truths.push_back(exact_jaccard(a, b));

  std::vector<EstimationRow> rows;
  std::vector<double> estimates;
  std::vector<double> expected;
  std::vector<std::uint64_t> scratch;
  Signature ga, gb;
  for (std::size_t hashes : config.hash_counts) {
    for (FamilyKind kind : {FamilyKind::random, FamilyKind::iterative}) {
      estimates.clear();
      expected.clear();
      for (std::size_t s = 0; s < config.seeds; ++s) {
        const std::uint64_t seed = derive_seed(derive_seed(config.master_seed, s), hashes);
        const HashFamily family = HashFamily::sample(kind, seed, hashes, prime);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          signature_into(pairs[p].first, family, scratch, ga);
          signature_into(pairs[p].second, family, scratch, gb);
          estimates.push_back(estimate_jaccard(ga, gb));
          expected.push_back(truths[p]);
        }
      }
      const auto mae = mean_absolute_error(estimates, expected);
      rows.push_back({hashes, kind, pairs.size(), config.seeds, mae.mean, mae.std});
    }
  }
  return rows;
}

// --- tables -----------------------------------------------------------------

namespace {

std::string_view test_name(UniformityTest t) { return t == UniformityTest::buckets ? "buckets" : "minhash"; }

std::string family_name(FamilyKind k) { return std::string(to_string(k)); }

}  // namespace

Table uniformity_table(std::span<const ExperimentSummary> summaries) {
  Table t;
  t.columns = {"test", "family", "prime", "categories", "hashes", "alpha", "run", "seed",
               "statistic", "dof", "p_value", "passed"};
  for (const auto& s : summaries) {
    for (std::size_t r = 0; r < s.reports.size(); ++r) {
      const auto& rep = s.reports[r];
      t.add_row({std::string(test_name(s.config.test)), family_name(s.config.kind), s.config.prime,
                 std::uint64_t{s.config.categories}, std::uint64_t{s.config.hashes}, s.config.alpha,
                 std::uint64_t{r}, s.seeds[r], rep.statistic, std::uint64_t{rep.dof}, rep.p_value, rep.passed});
    }
  }
  return t;
}

Table uniformity_summary_table(std::span<const ExperimentSummary> summaries) {
  Table t;
  t.columns = {"test", "family", "prime", "categories", "hashes", "alpha", "runs", "passed", "pass_fraction"};
  for (const auto& s : summaries) {
    t.add_row({std::string(test_name(s.config.test)), family_name(s.config.kind), s.config.prime,
               std::uint64_t{s.config.categories}, std::uint64_t{s.config.hashes}, s.config.alpha,
               std::uint64_t{s.runs}, std::uint64_t{s.passed}, s.pass_fraction});
  }
  return t;
}

Table timing_table(const BenchReport& report) {
  Table t;
  t.columns = {"repetition", "documents", "hashes", "prime", "random_seconds", "iterative_seconds"};
  for (std::size_t i = 0; i < report.random_seconds.size(); ++i) {
    t.add_row({std::uint64_t{i}, std::uint64_t{report.documents}, std::uint64_t{report.hashes}, report.prime,
               report.random_seconds[i], report.iterative_seconds[i]});
  }
  return t;
}

Table timing_summary_table(const BenchReport& report) {
  Table t;
  t.columns = {"documents", "hashes", "prime", "repetitions", "random_mean", "random_std",
               "iterative_mean", "iterative_std", "speedup", "t", "p_value"};
  t.add_row({std::uint64_t{report.documents}, std::uint64_t{report.hashes}, report.prime,
             std::uint64_t{report.random_seconds.size()}, report.random_mean, report.random_std,
             report.iterative_mean, report.iterative_std, report.speedup, report.t, report.p_value});
  return t;
}

Table estimation_table(std::span<const EstimationRow> rows) {
  Table t;
  t.columns = {"hashes", "family", "pairs", "seeds", "mae_mean", "mae_std"};
  for (const auto& r : rows) {
    t.add_row({std::uint64_t{r.hashes}, family_name(r.kind), std::uint64_t{r.pairs}, std::uint64_t{r.seeds},
               r.mae_mean, r.mae_std});
  }
  return t;
}

}  // namespace iterhash
