#include "iterhash/hashcore.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "iterhash/random.hpp"
#include "json.hpp"

namespace iterhash {

std::string_view to_string(FamilyKind kind) noexcept {
  return kind == FamilyKind::iterative ? "iterative" : "random";
}

FamilyKind parse_family_kind(std::string_view name) {
  if (name == "random") return FamilyKind::random;
  if (name == "iterative") return FamilyKind::iterative;
  throw std::invalid_argument("unknown family kind: " + std::string(name));
}

HashParams::HashParams(std::uint64_t a, std::uint64_t b, Prime prime) : a_(a), b_(b), prime_(prime) {
  if (a == 0 || a >= prime.value()) throw std::invalid_argument("hash parameter a must lie in [1, P)");
  if (b >= prime.value()) throw std::invalid_argument("hash parameter b must lie in [0, P)");
}

std::uint64_t HashParams::operator()(std::uint64_t x) const noexcept {
  return addmod(mulmod(a_, x % prime_.value(), prime_.value()), b_, prime_.value());
}

// --- construction -----------------------------------------------------------

HashFamily HashFamily::random(std::vector<HashParams> params) {
  if (params.empty()) throw std::invalid_argument("random family needs at least one hash");
  HashFamily f;
  f.kind_ = FamilyKind::random;
  f.count_ = params.size();
  f.prime_ = params.front().prime();
  f.a_.reserve(params.size());
  f.b_.reserve(params.size());
  for (const auto& hp : params) {
    if (hp.prime() != f.prime_) throw std::invalid_argument("random family members must share one prime");
    f.a_.push_back(hp.a());
    f.b_.push_back(hp.b());
  }
  f.finalize_id();
  return f;
}

HashFamily HashFamily::iterative(HashParams base, std::size_t count) {
  if (count == 0) throw std::invalid_argument("iterative family needs at least one hash");
  const std::uint64_t p = base.prime().value();
  if (count >= p || base.a() >= p - count) {
    throw std::invalid_argument("iterative family requires a + N < P");
  }
  if (base.b() >= p - count) throw std::invalid_argument("iterative family requires b + N < P");
  HashFamily f;
  f.kind_ = FamilyKind::iterative;
  f.count_ = count;
  f.prime_ = base.prime();
  f.a_ = {base.a()};
  f.b_ = {base.b()};
  f.finalize_id();
  return f;
}

HashFamily HashFamily::sample_random(std::uint64_t seed, std::size_t count, Prime prime) {
  if (count == 0) throw std::invalid_argument("random family needs at least one hash");
  if (prime.value() < 3) throw std::invalid_argument("random family needs P >= 3");
  const std::uint64_t p = prime.value();
  Rng rng(seed);
  HashFamily f;
  f.kind_ = FamilyKind::random;
  f.count_ = count;
  f.prime_ = prime;
  f.a_.resize(count);
  f.b_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    f.a_[i] = uniform_in(rng, 1, p);
    f.b_[i] = uniform_below(rng, p);
  }
  f.descriptor_ = FamilyDescriptor{FamilyKind::random, seed, count, p};
  f.finalize_id();
  return f;
}

HashFamily HashFamily::sample_iterative(std::uint64_t seed, std::size_t count, Prime prime) {
  if (count == 0) throw std::invalid_argument("iterative family needs at least one hash");
  const std::uint64_t p = prime.value();
  if (p <= 2 * static_cast<std::uint64_t>(count) + 2) {
    throw std::invalid_argument("iterative family of " + std::to_string(count) +
                                " hashes needs P > 2N + 2, got P = " + std::to_string(p));
  }
  Rng rng(seed);
  const std::uint64_t a = uniform_in(rng, 1, p - count);
  const std::uint64_t b = uniform_below(rng, p - count);
  HashFamily f = iterative(HashParams(a, b, prime), count);
  f.descriptor_ = FamilyDescriptor{FamilyKind::iterative, seed, count, p};
  return f;
}

HashFamily HashFamily::sample(FamilyKind kind, std::uint64_t seed, std::size_t count, Prime prime) {
  return kind == FamilyKind::iterative ? sample_iterative(seed, count, prime)
                                       : sample_random(seed, count, prime);
}

HashFamily HashFamily::from_descriptor(const FamilyDescriptor& d) {
  return sample(d.kind, d.seed, d.hashes, Prime(d.prime));
}

HashFamily sample_random_family(std::uint64_t seed, std::size_t count, Prime prime) {
  return HashFamily::sample_random(seed, count, prime);
}

HashFamily make_iterative_family(std::uint64_t seed, std::size_t count, Prime prime) {
  return HashFamily::sample_iterative(seed, count, prime);
}

void HashFamily::finalize_id() {
  std::uint64_t h = splitmix64(static_cast<std::uint64_t>(kind_) + 1);
  auto mix = [&h](std::uint64_t v) { h = splitmix64(h ^ v); };
  mix(prime_.value());
  mix(count_);
  for (std::size_t i = 0; i < a_.size(); ++i) {
    mix(a_[i]);
    mix(b_[i]);
  }
  id_ = h;
}

// --- evaluation -------------------------------------------------------------

void iterative_hash_values(const HashParams& base, std::uint64_t x, std::span<std::uint64_t> out) {
  const std::uint64_t p = base.prime().value();
  if (x >= p) throw std::out_of_range("hash input not below P");
  if (out.empty()) return;
  const std::uint64_t dh = addmod(x, base.b(), p);
  std::uint64_t h = mulmod(base.a(), x, p);
  out[0] = h;
  for (std::size_t i = 1; i < out.size(); ++i) {
    h = addmod(h, dh, p);
    out[i] = h;
  }
}

std::uint64_t iterative_hash_at(const HashParams& base, std::uint64_t x, std::uint64_t i) {
  const std::uint64_t p = base.prime().value();
  if (x >= p) throw std::out_of_range("hash input not below P");
  const std::uint64_t dh = addmod(x, base.b(), p);
  return addmod(mulmod(base.a(), x, p), mulmod(i % p, dh, p), p);
}

std::vector<HashParams> HashFamily::params() const {
  std::vector<HashParams> out;
  out.reserve(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) out.emplace_back(a_[i], b_[i], prime_);
  return out;
}

void HashFamily::check_input(std::uint64_t x) const {
  if (x >= prime_.value()) {
    throw std::out_of_range("hash input " + std::to_string(x) + " not below P = " +
                            std::to_string(prime_.value()));
  }
}

std::vector<std::uint64_t> HashFamily::eval_all(std::uint64_t x) const {
  std::vector<std::uint64_t> out(count_);
  eval_into(x, out);
  return out;
}

void HashFamily::eval_into(std::uint64_t x, std::span<std::uint64_t> out) const {
  check_input(x);
  if (out.size() != count_) throw std::invalid_argument("eval_into: output span must hold N values");
  for_each_value(x, [out](std::size_t i, std::uint64_t h) { out[i] = h; });
}

std::uint64_t HashFamily::eval_at(std::uint64_t x, std::size_t i) const {
  check_input(x);
  if (i >= count_) throw std::out_of_range("hash index out of range");
  const std::uint64_t p = prime_.value();
  if (kind_ == FamilyKind::random) return addmod(mulmod(a_[i], x, p), b_[i], p);
  return iterative_hash_at(HashParams(a_[0], b_[0], prime_), x, i);
}

// --- serialization ----------------------------------------------------------

namespace {

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("family descriptor: bad value for " + std::string(key) + ": '" +
                                std::string(value) + "'");
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(ws) - first + 1);
}

}  // namespace

std::string FamilyDescriptor::to_text() const {
  std::ostringstream os;
  os << "kind=" << iterhash::to_string(kind) << '\n'
     << "seed=" << seed << '\n'
     << "hashes=" << hashes << '\n'
     << "prime=" << prime << '\n';
  return os.str();
}

FamilyDescriptor FamilyDescriptor::from_text(std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("family descriptor: expected key=value, got '" + std::string(line) + "'");
    }
    fields[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  auto get = [&fields](std::string_view key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument("family descriptor: missing " + std::string(key));
    return it->second;
  };
  FamilyDescriptor d;
  d.kind = parse_family_kind(get("kind"));
  d.seed = parse_u64("seed", get("seed"));
  d.hashes = parse_u64("hashes", get("hashes"));
  d.prime = parse_u64("prime", get("prime"));
  return d;
}

std::string FamilyDescriptor::to_json() const {
  nlohmann::json j = {{"kind", iterhash::to_string(kind)}, {"seed", seed}, {"hashes", hashes}, {"prime", prime}};
  return j.dump();
}

FamilyDescriptor FamilyDescriptor::from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    FamilyDescriptor d;
    d.kind = parse_family_kind(j.at("kind").get<std::string>());
    d.seed = j.at("seed").get<std::uint64_t>();
    d.hashes = j.at("hashes").get<std::size_t>();
    d.prime = j.at("prime").get<std::uint64_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("family descriptor: ") + e.what());
  }
}

}  // namespace iterhash
