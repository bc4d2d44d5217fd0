#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iterhash/corpus.hpp"
#include "iterhash/report.hpp"
#include "iterhash/stats.hpp"

namespace iterhash {

struct TimingConfig {
  std::size_t hashes = 100000;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;  // 0: next_prime(max(max id + 1, 2N + 3))
  bool warmup = true;       // one extra untimed repetition first
};

/// Wall-clock comparison of "generate and apply" for both families.
struct BenchReport {
  std::size_t hashes = 0;
  std::size_t documents = 0;
  std::uint64_t prime = 0;
  std::vector<double> random_seconds;
  std::vector<double> iterative_seconds;
  double random_mean = 0.0;
  double random_std = 0.0;
  double iterative_mean = 0.0;
  double iterative_std = 0.0;
  double speedup = 0.0;  // random_mean / iterative_mean
  // Paired t-test of random vs iterative times; NaN when the differences
  // have zero variance.
  double t = 0.0;
  double p_value = 1.0;
  std::uint64_t checksum = 0;  // folds every signature so the work is observable
};

/// Repetition r builds both families from derive_seed(seed, r) and signs the
/// whole corpus with each, timing construction plus signing single-threaded.
/// Requires repetitions >= 2 and a non-empty corpus of non-empty sets.
BenchReport run_timing(std::span<const FeatureSet> corpus, const TimingConfig& config);
BenchReport run_timing(std::span<const FeatureSet> corpus, std::size_t hashes, std::size_t repetitions,
                       std::uint64_t seed);

struct EstimationConfig {
  std::vector<std::size_t> hash_counts{5, 10, 15};
  std::size_t seeds = 20;
  std::uint64_t master_seed = 0;
  std::uint64_t prime = 0;  // 0: next_prime(max(max id + 1, 2 * max N + 3))
};

struct EstimationRow {
  std::size_t hashes = 0;
  FamilyKind kind = FamilyKind::random;
  std::size_t pairs = 0;
  std::size_t seeds = 0;
  double mae_mean = 0.0;
  double mae_std = 0.0;
};

/// Jaccard estimation error per (hash count, family), pooled over all pairs
/// and seeds. Seed s and hash count N give both families the same seed.
std::vector<EstimationRow> run_estimation(std::span<const SetPair> pairs, const EstimationConfig& config);

/// Sample mean and (n-1) standard deviation.
ErrorSummary mean_and_std(std::span<const double> values);

Table uniformity_table(std::span<const ExperimentSummary> summaries);
Table uniformity_summary_table(std::span<const ExperimentSummary> summaries);
Table timing_table(const BenchReport& report);
Table timing_summary_table(const BenchReport& report);
Table estimation_table(std::span<const EstimationRow> rows);

}  // namespace iterhash
