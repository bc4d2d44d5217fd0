#include "iterhash/minhash.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace iterhash {

FeatureSet::FeatureSet(std::vector<std::uint64_t> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

FeatureSet::FeatureSet(std::initializer_list<std::uint64_t> ids)
    : FeatureSet(std::vector<std::uint64_t>(ids)) {}

bool FeatureSet::contains(std::uint64_t id) const noexcept {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::uint64_t FeatureSet::max_id() const {
  if (ids_.empty()) throw std::logic_error("max_id of an empty feature set");
  return ids_.back();
}

double exact_jaccard(const FeatureSet& s1, const FeatureSet& s2) {
  if (s1.empty() && s2.empty()) return 1.0;
  auto a = s1.ids();
  auto b = s2.ids();
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t united = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(united);
}

void signature_into(const FeatureSet& s, const HashFamily& family, std::vector<std::uint64_t>& best,
                    Signature& out) {
  if (s.empty()) throw std::invalid_argument("signature of an empty feature set");
  if (s.max_id() >= family.prime().value()) {
    throw std::out_of_range("feature id " + std::to_string(s.max_id()) + " not below P = " +
                            std::to_string(family.prime().value()));
  }
  const std::size_t n = family.size();
  best.assign(n, std::numeric_limits<std::uint64_t>::max());
  out.mins.assign(n, 0);
  out.family_id = family.id();
  std::uint64_t* best_h = best.data();
  std::uint64_t* mins = out.mins.data();
  // Ids arrive ascending, so a strict comparison keeps the smallest id on ties.
  for (std::uint64_t x : s.ids()) {
    family.for_each_value(x, [=](std::size_t i, std::uint64_t h) {
      if (h < best_h[i]) {
        best_h[i] = h;
        mins[i] = x;
      }
    });
  }
}

Signature signature(const FeatureSet& s, const HashFamily& family) {
  std::vector<std::uint64_t> best;
  Signature out;
  signature_into(s, family, best, out);
  return out;
}

double estimate_jaccard(const Signature& g1, const Signature& g2) {
  if (g1.family_id != g2.family_id) {
    throw std::invalid_argument("signatures come from different hash families");
  }
  if (g1.mins.size() != g2.mins.size()) throw std::invalid_argument("signature lengths differ");
  if (g1.mins.empty()) throw std::invalid_argument("empty signatures");
  std::size_t equal = 0;
  for (std::size_t i = 0; i < g1.mins.size(); ++i) equal += g1.mins[i] == g2.mins[i];
  return static_cast<double>(equal) / static_cast<double>(g1.mins.size());
}

// --- files ------------------------------------------------------------------

void write_signatures_text(std::ostream& os, std::span<const SignatureRecord> records) {
  for (const auto& r : records) {
    os << r.object_id << ' ' << r.mins.size();
    for (std::uint64_t m : r.mins) os << ' ' << m;
    os << '\n';
  }
}

std::vector<SignatureRecord> read_signatures_text(std::istream& is) {
  std::vector<SignatureRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    SignatureRecord r;
    std::size_t n = 0;
    if (!(ls >> r.object_id >> n)) {
      throw std::runtime_error("signature text: bad header on line " + std::to_string(lineno));
    }
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t m = 0;
      if (!(ls >> m)) throw std::runtime_error("signature text: short record on line " + std::to_string(lineno));
      r.mins.push_back(m);
    }
    std::string extra;
    if (ls >> extra) throw std::runtime_error("signature text: trailing data on line " + std::to_string(lineno));
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> buf;
  for (int k = 0; k < 8; ++k) buf[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  os.write(buf.data(), buf.size());
}

// False on clean end of stream; throws on a truncated value.
bool get_u64(std::istream& is, std::uint64_t& v) {
  std::array<unsigned char, 8> buf;
  is.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (is.gcount() == 0) return false;
  if (is.gcount() != 8) throw std::runtime_error("signature binary: truncated value");
  v = 0;
  for (int k = 7; k >= 0; --k) v = (v << 8) | buf[k];
  return true;
}

}  // namespace

void write_signatures_binary(std::ostream& os, std::span<const SignatureRecord> records) {
  for (const auto& r : records) {
    put_u64(os, r.object_id);
    put_u64(os, r.mins.size());
    for (std::uint64_t m : r.mins) put_u64(os, m);
  }
}

std::vector<SignatureRecord> read_signatures_binary(std::istream& is) {
  std::vector<SignatureRecord> out;
  SignatureRecord r;
  while (get_u64(is, r.object_id)) {
    std::uint64_t n = 0;
    if (!get_u64(is, n)) throw std::runtime_error("signature binary: missing length");
    // n is untrusted; no up-front allocation.
    r.mins.clear();
    for (std::uint64_t k = 0; k < n; ++k) {
      std::uint64_t m = 0;
      if (!get_u64(is, m)) throw std::runtime_error("signature binary: short record");
      r.mins.push_back(m);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace iterhash
