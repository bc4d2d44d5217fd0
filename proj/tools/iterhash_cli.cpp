// iterhash: uniformity, estimation and timing experiments for the random and
// iterative MinHash families, plus signature export for a corpus.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iterhash/bench.hpp"
#include "iterhash/corpus.hpp"
#include "iterhash/minhash.hpp"
#include "iterhash/stats.hpp"

namespace {

using namespace iterhash;

constexpr int kConfigErrorExit = 2;
constexpr int kRuntimeErrorExit = 1;

struct Options {
  std::string family = "both";
  std::uint64_t prime = 7757;
  std::size_t hashes = 1000;
  std::vector<std::size_t> hash_counts{5, 10, 15};
  std::size_t buckets = 100;
  std::size_t keys = 100;
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  std::string corpus;
  std::string out;
  std::string format = "csv";
  bool summary = false;
  // estimate / bench synthetic workloads
  std::size_t pairs = 500;
  std::size_t set_size = 100;
  double j_min = 0.1;
  double j_max = 0.9;
  std::size_t docs = 500;
  std::size_t features = 100;
  std::uint64_t vocabulary = 20000;
  // sign
  bool binary = false;
  std::string family_out;
};

std::vector<FamilyKind> selected_families(const std::string& name) {
  if (name == "both") return {FamilyKind::random, FamilyKind::iterative};
  return {parse_family_kind(name)};
}

// Output stream for --out, or stdout.
class Output {
 public:
  explicit Output(const std::string& path, bool binary = false) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, binary ? std::ios::binary : std::ios::out);
    if (!*file_) throw std::runtime_error("cannot open output file: " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit(const Table& table, const Options& opt) {
  const OutputFormat fmt = parse_output_format(opt.format);
  Output out(opt.out);
  if (fmt == OutputFormat::csv) {
    table.write_csv(out.stream());
  } else {
    table.write_json(out.stream());
  }
}

Prime resolve_prime(std::uint64_t requested, std::size_t hashes) {
  return requested == 0 ? next_prime(2 * static_cast<std::uint64_t>(hashes) + 3) : Prime(requested);
}

void cmd_uniformity(const Options& opt, UniformityTest test) {
  const Prime prime = resolve_prime(opt.prime, opt.hashes);
  std::vector<ExperimentSummary> summaries;
  for (FamilyKind kind : selected_families(opt.family)) {
    ExperimentConfig config;
    config.test = test;
    config.kind = kind;
    config.prime = prime.value();
    config.categories = test == UniformityTest::buckets ? opt.buckets : opt.keys;
    config.hashes = opt.hashes;
    summaries.push_back(run_uniformity(config, opt.runs, opt.seed));
    std::cerr << to_string(kind) << ": " << summaries.back().passed << "/" << opt.runs
              << " runs passed (pass_fraction " << format_double(summaries.back().pass_fraction) << ")\n";
  }
  emit(opt.summary ? uniformity_summary_table(summaries) : uniformity_table(summaries), opt);
}

std::vector<FeatureSet> load_nonempty_documents(const std::string& path) {
  Corpus corpus = build_corpus(path);
  if (corpus.empty_documents > 0) {
    std::cerr << "note: " << corpus.empty_documents << " document(s) without tokens skipped\n";
  }
  std::vector<FeatureSet> docs;
  for (auto& d : corpus.documents) {
    if (!d.empty()) docs.push_back(std::move(d));
  }
  return docs;
}

void cmd_estimate(const Options& opt) {
  std::vector<SetPair> pairs;
  if (!opt.corpus.empty()) {
    const auto docs = load_nonempty_documents(opt.corpus);
    for (auto [i, j] : corpus_pairs(docs.size(), opt.seed)) pairs.emplace_back(docs[i], docs[j]);
    std::cerr << "estimating over " << pairs.size() << " document pairs\n";
  } else {
    pairs = synth_pairs(opt.pairs, opt.j_min, opt.j_max, opt.set_size, opt.seed);
  }
  EstimationConfig config;
  config.hash_counts = opt.hash_counts;
  config.seeds = opt.runs;
  config.master_seed = opt.seed;
  std::vector<EstimationRow> rows = run_estimation(pairs, config);
  if (opt.family != "both") {
    const FamilyKind keep = parse_family_kind(opt.family);
    std::erase_if(rows, [keep](const EstimationRow& r) { return r.kind != keep; });
  }
  emit(estimation_table(rows), opt);
}

void cmd_bench(const Options& opt) {
  const std::vector<FeatureSet> docs = opt.corpus.empty()
                                           ? synth_corpus(opt.docs, opt.features, opt.vocabulary, opt.seed)
                                           : load_nonempty_documents(opt.corpus);
  TimingConfig config;
  config.hashes = opt.hashes;
  config.repetitions = opt.runs;
  config.seed = opt.seed;
  const BenchReport report = run_timing(docs, config);
  std::cerr << "random " << format_double(report.random_mean) << " s, iterative "
            << format_double(report.iterative_mean) << " s, speedup " << format_double(report.speedup)
            << ", paired t p = " << format_double(report.p_value) << "\n";
  emit(opt.summary ? timing_summary_table(report) : timing_table(report), opt);
}

void cmd_sign(const Options& opt) {
  if (opt.family == "both") throw std::invalid_argument("sign needs --family random or --family iterative");
  const FamilyKind kind = parse_family_kind(opt.family);
  Corpus corpus = build_corpus(opt.corpus);
  const Prime prime = opt.prime != 0
                          ? Prime(opt.prime)
                          : corpus_prime(corpus.vocabulary.size(), 2 * static_cast<std::uint64_t>(opt.hashes) + 3);
  const HashFamily family = HashFamily::sample(kind, opt.seed, opt.hashes, prime);

  std::vector<SignatureRecord> records;
  std::vector<std::uint64_t> scratch;
  Signature sig;
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    if (corpus.documents[d].empty()) continue;
    signature_into(corpus.documents[d], family, scratch, sig);
    records.push_back({d, sig.mins});
  }
  if (corpus.empty_documents > 0) {
    std::cerr << "note: " << corpus.empty_documents << " document(s) without tokens have no signature\n";
  }

  Output out(opt.out, opt.binary);
  if (opt.binary) {
    write_signatures_binary(out.stream(), records);
  } else {
    write_signatures_text(out.stream(), records);
  }
  if (!opt.family_out.empty()) {
    std::ofstream f(opt.family_out);
    if (!f) throw std::runtime_error("cannot open family output file: " + opt.family_out);
    f << family.descriptor()->to_text();
  }
}

void add_common(CLI::App* cmd, Options& opt, bool with_format = true) {
  cmd->add_option("--family", opt.family, "random, iterative or both")
      ->check(CLI::IsMember({"random", "iterative", "both"}));
  cmd->add_option("--seed", opt.seed, "master seed");
  cmd->add_option("--out", opt.out, "output file (default: stdout)");
  if (with_format) cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MinHash with random and iterative universal hash families"};
  app.require_subcommand(1);

  Options uni_opt;
  auto* uni = app.add_subcommand("uniformity", "chi-squared test of h_i(x) mod m bucket counts");
  add_common(uni, uni_opt);
  uni->add_option("--prime", uni_opt.prime, "prime modulus (0: next prime above 2N+2)")->capture_default_str();
  uni->add_option("--hashes", uni_opt.hashes, "hash functions per run")->capture_default_str();
  uni->add_option("--buckets", uni_opt.buckets, "bucket count m")->capture_default_str();
  uni->add_option("--runs", uni_opt.runs, "independent runs")->capture_default_str();
  uni->add_flag("--summary", uni_opt.summary, "one row per family instead of one per run");

  Options mhu_opt;
  auto* mhu = app.add_subcommand("minhash-uniformity", "chi-squared test of how often each key is the MinHash");
  add_common(mhu, mhu_opt);
  mhu->add_option("--prime", mhu_opt.prime, "prime modulus (0: next prime above 2N+2)")->capture_default_str();
  mhu->add_option("--hashes", mhu_opt.hashes, "hash functions per run")->capture_default_str();
  mhu->add_option("--keys", mhu_opt.keys, "random keys K")->capture_default_str();
  mhu->add_option("--runs", mhu_opt.runs, "independent runs")->capture_default_str();
  mhu->add_flag("--summary", mhu_opt.summary, "one row per family instead of one per run");

  Options est_opt;
  est_opt.runs = 20;
  auto* est = app.add_subcommand("estimate", "Jaccard estimation error per hash count");
  add_common(est, est_opt);
  est->add_option("--hashes", est_opt.hash_counts, "hash counts, comma separated")->delimiter(',');
  est->add_option("--runs", est_opt.runs, "seeds")->capture_default_str();
  est->add_option("--corpus", est_opt.corpus, "one document per line (default: synthetic pairs)");
  est->add_option("--pairs", est_opt.pairs, "synthetic pairs")->capture_default_str();
  est->add_option("--set-size", est_opt.set_size, "synthetic set size")->capture_default_str();
  est->add_option("--jmin", est_opt.j_min, "lowest synthetic Jaccard")->capture_default_str();
  est->add_option("--jmax", est_opt.j_max, "highest synthetic Jaccard")->capture_default_str();

  Options bench_opt;
  bench_opt.hashes = 100000;
  bench_opt.runs = 10;
  auto* bench = app.add_subcommand("bench", "time generate-and-apply for both families");
  add_common(bench, bench_opt);
  bench->add_option("--hashes", bench_opt.hashes, "hash functions")->capture_default_str();
  bench->add_option("--runs", bench_opt.runs, "timed repetitions (>= 2)")->capture_default_str();
  bench->add_option("--corpus", bench_opt.corpus, "one document per line (default: synthetic)");
  bench->add_option("--docs", bench_opt.docs, "synthetic documents")->capture_default_str();
  bench->add_option("--features", bench_opt.features, "mean features per synthetic document")->capture_default_str();
  bench->add_option("--vocabulary", bench_opt.vocabulary, "synthetic vocabulary size")->capture_default_str();
  bench->add_flag("--summary", bench_opt.summary, "means, speedup and t-test instead of per-repetition rows");

  Options sign_opt;
  sign_opt.family = "iterative";
  sign_opt.hashes = 100;
  sign_opt.prime = 0;
  auto* sign = app.add_subcommand("sign", "write MinHash signatures for a corpus");
  add_common(sign, sign_opt, false);
  sign->add_option("--corpus", sign_opt.corpus, "one document per line")->required();
  sign->add_option("--hashes", sign_opt.hashes, "signature length")->capture_default_str();
  sign->add_option("--prime", sign_opt.prime, "prime modulus (0: next prime >= max(M, 2N+3))")->capture_default_str();
  sign->add_flag("--binary", sign_opt.binary, "little-endian uint64 records instead of text");
  sign->add_option("--family-out", sign_opt.family_out, "write the family descriptor (key=value) here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (uni->parsed()) cmd_uniformity(uni_opt, UniformityTest::buckets);
    if (mhu->parsed()) cmd_uniformity(mhu_opt, UniformityTest::minhash);
    if (est->parsed()) cmd_estimate(est_opt);
    if (bench->parsed()) cmd_bench(bench_opt);
    if (sign->parsed()) cmd_sign(sign_opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeErrorExit;
  }
  return 0;
}
