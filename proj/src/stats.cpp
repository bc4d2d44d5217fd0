#include "iterhash/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "iterhash/random.hpp"

namespace iterhash {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Series for P(a, x), convergent for x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  const int max_iter = 1000 + static_cast<int>(20 * std::sqrt(a));
  for (int n = 1; n < max_iter; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) by the modified Lentz method, x >= a + 1.
double gamma_q_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  const int max_iter = 1000 + static_cast<int>(20 * std::sqrt(a));
  for (int i = 1; i < max_iter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Continued fraction for the incomplete beta function (Lentz).
double beta_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m < 10000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

void check_gamma_args(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("incomplete gamma: a must be positive");
  if (!(x >= 0.0) || std::isnan(x)) throw std::invalid_argument("incomplete gamma: x must be >= 0");
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double regularized_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta: a, b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double front =
      std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double chi_square_pvalue(double statistic, std::size_t dof) {
  if (dof == 0) throw std::invalid_argument("chi-squared p-value needs dof >= 1");
  if (!std::isfinite(statistic)) throw std::invalid_argument("chi-squared statistic must be finite");
  if (statistic < 0.0) throw std::invalid_argument("chi-squared statistic must be non-negative");
  return std::clamp(regularized_gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic), 0.0, 1.0);
}

double student_t_pvalue(double t, double dof) {
  if (!(dof > 0.0)) throw std::invalid_argument("t distribution needs dof > 0");
  if (std::isnan(t)) throw std::invalid_argument("t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  return std::clamp(regularized_beta(0.5 * dof, 0.5, dof / (dof + t * t)), 0.0, 1.0);
}

// --- chi-squared uniformity -------------------------------------------------------

ChiSquareReport chi_square_uniform(std::span<const std::uint64_t> counts, double alpha) {
  if (counts.empty()) throw std::invalid_argument("chi-squared test needs at least one bucket");
  ChiSquareReport r;
  r.dof = counts.size() - 1;
  if (r.dof == 0) return r;
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (total == 0.0) throw std::invalid_argument("chi-squared test on zero observations");
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (std::uint64_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  r.statistic = stat;
  r.p_value = chi_square_pvalue(stat, r.dof);
  r.passed = r.p_value > alpha;
  return r;
}

namespace {

void require_expected_count(std::size_t hashes, std::size_t categories, const char* what) {
  if (categories == 0) throw ConfigError(std::string(what) + " must be positive");
  if (hashes < 5 * categories) {
    throw ConfigError("expected count per " + std::string(what) + " is below 5: " + std::to_string(hashes) +
                      " hashes over " + std::to_string(categories));
  }
}

// Family and input streams are split so both families see the same x for one seed.
HashFamily experiment_family(FamilyKind kind, Prime prime, std::size_t hashes, std::uint64_t seed) {
  try {
    return HashFamily::sample(kind, derive_seed(seed, 0), hashes, prime);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

ChiSquareReport bucket_uniformity_experiment(FamilyKind kind, Prime prime, std::size_t buckets, std::size_t hashes,
                                             std::uint64_t seed, double alpha) {
  require_expected_count(hashes, buckets, "bucket");
  const HashFamily family = experiment_family(kind, prime, hashes, seed);
  Rng rng(derive_seed(seed, 1));
  const std::uint64_t x = uniform_below(rng, prime.value());
  std::vector<std::uint64_t> counts(buckets, 0);
  family.for_each_value(x, [&](std::size_t, std::uint64_t h) { ++counts[h % buckets]; });
  return chi_square_uniform(counts, alpha);
}

ChiSquareReport minhash_uniformity_experiment(FamilyKind kind, Prime prime, std::size_t keys, std::size_t hashes,
                                              std::uint64_t seed, double alpha) {
  require_expected_count(hashes, keys, "key");
  if (keys > prime.value()) throw ConfigError("cannot draw more distinct keys than P");
  const HashFamily family = experiment_family(kind, prime, hashes, seed);

  Rng rng(derive_seed(seed, 1));
  std::vector<std::uint64_t> key_values;
  key_values.reserve(keys);
  std::unordered_set<std::uint64_t> seen;
  while (key_values.size() < keys) {
    const std::uint64_t k = uniform_below(rng, prime.value());
    if (seen.insert(k).second) key_values.push_back(k);
  }
  std::sort(key_values.begin(), key_values.end());

  std::vector<std::uint64_t> best(hashes, std::numeric_limits<std::uint64_t>::max());
  std::vector<std::uint32_t> winner(hashes, 0);
  for (std::size_t k = 0; k < key_values.size(); ++k) {
    family.for_each_value(key_values[k], [&, k](std::size_t i, std::uint64_t h) {
      if (h < best[i]) {
        best[i] = h;
        winner[i] = static_cast<std::uint32_t>(k);
      }
    });
  }
  std::vector<std::uint64_t> counts(keys, 0);
  for (std::uint32_t w : winner) ++counts[w];
  return chi_square_uniform(counts, alpha);
}

ExperimentSummary run_uniformity(const ExperimentConfig& config, std::size_t runs, std::uint64_t master_seed) {
  if (runs == 0) throw ConfigError("at least one run is required");
  const Prime prime(config.prime);
  ExperimentSummary s;
  s.config = config;
  s.runs = runs;
  s.seeds.reserve(runs);
  s.reports.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t seed = derive_seed(master_seed, r);
    s.seeds.push_back(seed);
    s.reports.push_back(config.test == UniformityTest::buckets
                            ? bucket_uniformity_experiment(config.kind, prime, config.categories, config.hashes,
                                                           seed, config.alpha)
                            : minhash_uniformity_experiment(config.kind, prime, config.categories,
                                                            config.hashes, seed, config.alpha));
    s.passed += s.reports.back().passed;
  }
  s.pass_fraction = static_cast<double>(s.passed) / static_cast<double>(runs);
  return s;
}

// --- error and significance -------------------------------------------------------

ErrorSummary mean_absolute_error(std::span<const double> estimates, std::span<const double> truths) {
  if (estimates.size() != truths.size()) throw std::invalid_argument("MAE: length mismatch");
  if (estimates.empty()) throw std::invalid_argument("MAE: no pairs");
  const double n = static_cast<double>(estimates.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) sum += std::abs(estimates[i] - truths[i]);
  const double mean = sum / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double d = std::abs(estimates[i] - truths[i]) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / n)};
}

TTestResult paired_t_test(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("paired t-test: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("paired t-test: need at least two pairs");
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) mean += xs[i] - ys[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = (xs[i] - ys[i]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  // Differences equal up to rounding count as zero variance.
  if (!(sd > 1e-12 * std::max(1.0, std::abs(mean)))) {
    throw std::invalid_argument("paired t-test: differences have zero variance");
  }
  TTestResult r;
  r.dof = xs.size() - 1;
  r.t = mean / (sd / std::sqrt(n));
  r.p_value = student_t_pvalue(r.t, static_cast<double>(r.dof));
  return r;
}

}  // namespace iterhash
