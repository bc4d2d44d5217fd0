#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "iterhash/hashcore.hpp"

namespace iterhash {

// Special functions ---------------------------------------------------------

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);
/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

/// Upper-tail probability of a chi-squared statistic, Q(dof/2, statistic/2).
/// Throws std::invalid_argument for dof == 0 or a negative / non-finite statistic.
double chi_square_pvalue(double statistic, std::size_t dof);

/// Two-sided p-value of Student's t with `dof` degrees of freedom.
double student_t_pvalue(double t, double dof);

// Chi-squared uniformity ---------------------------------------------------

inline constexpr double kDefaultAlpha = 0.05;

struct ChiSquareReport {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  bool passed = true;
};

/// Goodness of fit of `counts` against equal expected counts. A single
/// bucket yields statistic 0, dof 0, p = 1.
ChiSquareReport chi_square_uniform(std::span<const std::uint64_t> counts, double alpha = kDefaultAlpha);

/// Thrown when an experiment's configuration breaks a precondition.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hashes one random x in [0, P) with all N functions and tests the
/// buckets h_i(x) mod m for uniformity. Requires N >= 5m.
ChiSquareReport bucket_uniformity_experiment(FamilyKind kind, Prime prime, std::size_t buckets,
                                             std::size_t hashes, std::uint64_t seed,
                                             double alpha = kDefaultAlpha);

/// Draws K distinct random keys in [0, P) and tests how often each key is
/// the argmin across the N functions. Requires N >= 5K.
ChiSquareReport minhash_uniformity_experiment(FamilyKind kind, Prime prime, std::size_t keys,
                                              std::size_t hashes, std::uint64_t seed,
                                              double alpha = kDefaultAlpha);

enum class UniformityTest { buckets, minhash };

struct ExperimentConfig {
  UniformityTest test = UniformityTest::buckets;
  FamilyKind kind = FamilyKind::random;
  std::uint64_t prime = 0;
  std::size_t categories = 0;  // buckets m or keys K
  std::size_t hashes = 0;
  double alpha = kDefaultAlpha;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::size_t runs = 0;
  std::size_t passed = 0;
  double pass_fraction = 0.0;
  std::vector<std::uint64_t> seeds;
  std::vector<ChiSquareReport> reports;
};

/// Runs `runs` experiments; run r uses seed derive_seed(master_seed, r).
ExperimentSummary run_uniformity(const ExperimentConfig& config, std::size_t runs, std::uint64_t master_seed);

// Error and significance ------------------------------------------------------

struct ErrorSummary {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

/// Mean and standard deviation of |estimate - truth|.
ErrorSummary mean_absolute_error(std::span<const double> estimates, std::span<const double> truths);

struct TTestResult {
  double t = 0.0;
  double p_value = 1.0;
  std::size_t dof = 0;
};

/// Two-sided paired t-test on xs - ys. Throws on fewer than two pairs,
/// mismatched lengths or zero variance of the differences.
TTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys);

}  // namespace iterhash
