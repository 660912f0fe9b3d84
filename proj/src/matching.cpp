#include "mirror/matching.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace mirror {

namespace {

bool is_pow2(std::uint32_t v) { return v >= 1 && (v & (v - 1)) == 0; }

std::uint32_t word_width(std::uint32_t n_value) {
  // 1 + log2 N bits name the 2N values 0..2N-1.
  return 1 + static_cast<std::uint32_t>(std::bit_width(n_value) - 1);
}

// Big-endian word starting at bit `pos`; caller guarantees it fits.
std::uint32_t read_word(const std::vector<bool>& bits, std::size_t pos,
                        std::uint32_t width) {
  std::uint32_t w = 0;
  for (std::uint32_t j = 0; j < width; ++j) {
    w = (w << 1) | static_cast<std::uint32_t>(bits[pos + j]);
  }
  return w;
}

}  // namespace

RandomBitString RandomBitString::random(std::size_t bit_count, Rng& rng) {
  RandomBitString s;
  s.bits.reserve(bit_count);
  std::uint64_t buffer = 0;
  int left = 0;
  for (std::size_t i = 0; i < bit_count; ++i) {
    if (left == 0) {
      buffer = rng();
      left = 64;
    }
    s.bits.push_back((buffer >> 63) & 1u);
    buffer <<= 1;
    --left;
  }
  return s;
}

RandomBitString RandomBitString::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open bit file: " + path);
  RandomBitString s;
  char byte;
  while (in.get(byte)) {
    auto b = static_cast<unsigned char>(byte);
    for (int j = 7; j >= 0; --j) s.bits.push_back((b >> j) & 1u);
  }
  return s;
}

void RandomBitString::to_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open bit file for writing: " + path);
  unsigned char b = 0;
  int filled = 0;
  for (bool bit : bits) {
    b = static_cast<unsigned char>((b << 1) | (bit ? 1 : 0));
    if (++filled == 8) {
      out.put(static_cast<char>(b));
      b = 0;
      filled = 0;
    }
  }
  if (filled > 0) {
    b = static_cast<unsigned char>(b << (8 - filled));  // pad with zeros
    out.put(static_cast<char>(b));
  }
  if (!out) throw IoError("write failed: " + path);
}

std::size_t recommended_bit_length(std::uint32_t n_value) {
  const std::size_t w = word_width(std::max<std::uint32_t>(n_value, 1));
  // Roughly 8 N ln(2N) coupon-collector draws of w bits each.
  return 8 * static_cast<std::size_t>(n_value) * w * w;
}

MatchingList MatchingList::generate(std::uint32_t n_value, Rng& rng) {
  if (n_value < 1) throw InvalidConfig("N must be at least 1");
  std::vector<num> perm(2 * n_value);
  std::iota(perm.begin(), perm.end(), 1u);
  // Fisher-Yates; pairing consecutive entries of a uniform permutation hits
  // every ordered list of unordered pairs with equal probability (each list
  // corresponds to exactly 2^N permutations).
  for (std::uint32_t i = 2 * n_value - 1; i > 0; --i) {
    std::uniform_int_distribution<std::uint32_t> d(0, i);
    std::swap(perm[i], perm[d(rng)]);
  }
  std::vector<std::pair<num, num>> pairs(n_value);
  for (std::uint32_t q = 0; q < n_value; ++q) {
    pairs[q] = {perm[2 * q], perm[2 * q + 1]};
  }
  return from_pairs(std::move(pairs));
}

MatchingList MatchingList::from_pairs(std::vector<std::pair<num, num>> pairs) {
  MatchingList list;
  list.n_ = static_cast<std::uint32_t>(pairs.size());
  if (list.n_ < 1) throw InvalidConfig("a matching needs at least one pair");
  const num top = 2 * list.n_;
  list.pair_of_.assign(top + 1, 0);
  for (std::uint32_t q = 0; q < list.n_; ++q) {
    auto [a, b] = pairs[q];
    if (a > b) std::swap(a, b);
    if (a < 1 || b > top || a == b) {
      throw InvalidConfig("pair members must be distinct values in [1, 2N]");
    }
    if (list.pair_of_[a] != 0 || list.pair_of_[b] != 0) {
      throw InvalidConfig("pairs must partition [1, 2N]");
    }
    pairs[q] = {a, b};
    list.pair_of_[a] = q + 1;
    list.pair_of_[b] = q + 1;
  }
  list.pairs_ = std::move(pairs);
  return list;
}

MatchingList MatchingList::decode_random_string(const RandomBitString& s,
                                                std::uint32_t n_value) {
  if (!is_pow2(n_value)) {
    throw InvalidConfig("decoding requires N to be a power of two");
  }
  const std::uint32_t w = word_width(n_value);
  const num top = 2 * n_value;
  std::vector<bool> seen(top + 1, false);
  std::vector<num> order;
  order.reserve(top);
  for (std::size_t pos = 0; pos + w <= s.bits.size() && order.size() < top;
       pos += w) {
    const num value = read_word(s.bits, pos, w) + 1;
    if (!seen[value]) {
      seen[value] = true;
      order.push_back(value);
    }
  }
  if (order.size() < top) {
    throw IncompleteCoverage("bit string exhausted before covering [1, 2N]");
  }
  std::vector<std::pair<num, num>> pairs(n_value);
  for (std::uint32_t q = 0; q < n_value; ++q) {
    pairs[q] = {order[2 * q], order[2 * q + 1]};
  }
  return from_pairs(std::move(pairs));
}

MatchingList MatchingList::load(std::istream& in) {
  std::vector<std::pair<num, num>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    num a = 0, b = 0;
    if (!(ls >> a >> b)) throw IoError("malformed matching line: " + line);
    pairs.emplace_back(a, b);
  }
  if (pairs.empty()) throw IoError("empty matching file");
  return from_pairs(std::move(pairs));
}

void MatchingList::save(std::ostream& out) const {
  for (const auto& [a, b] : pairs_) out << a << ' ' << b << '\n';
}

std::pair<num, num> MatchingList::pair(std::uint32_t q) const {
  if (q < 1 || q > n_) throw OutOfRange("pair index outside [1, N]");
  return pairs_[q - 1];
}

num MatchingList::partner(num x) const {
  const auto [a, b] = pair(locate(x));
  return x == a ? b : a;
}

std::uint32_t MatchingList::locate(num x) const {
  if (x < 1 || x > 2 * n_) throw OutOfRange("number outside [1, 2N]");
  return pair_of_[x];
}

num streaming_permutation_entry(const RandomBitString& s,
                                std::uint32_t n_value, std::uint32_t rank) {
  if (!is_pow2(n_value)) {
    throw InvalidConfig("decoding requires N to be a power of two");
  }
  const num top = 2 * n_value;
  if (rank < 1 || rank > top) throw OutOfRange("rank outside [1, 2N]");
  const std::uint32_t w = word_width(n_value);
  // Workspace: a distinct-value counter and two word buffers. Whether a
  // word is a first appearance is decided by rescanning the prefix, so no
  // seen-set is materialized.
  std::uint32_t distinct = 0;
  for (std::size_t pos = 0; pos + w <= s.bits.size(); pos += w) {
    const std::uint32_t word = read_word(s.bits, pos, w);
    bool appeared_before = false;
    for (std::size_t prev = 0; prev < pos; prev += w) {
      if (read_word(s.bits, prev, w) == word) {
        appeared_before = true;
        break;
      }
    }
    if (!appeared_before && ++distinct == rank) return word + 1;
  }
  throw IncompleteCoverage("bit string exhausted before covering [1, 2N]");
}

std::pair<num, num> streaming_pair(const RandomBitString& s,
                                   std::uint32_t n_value, std::uint32_t q) {
  if (q < 1 || q > n_value) throw OutOfRange("pair index outside [1, N]");
  num a = streaming_permutation_entry(s, n_value, 2 * q - 1);
  num b = streaming_permutation_entry(s, n_value, 2 * q);
  if (a > b) std::swap(a, b);
  return {a, b};
}

}  // namespace mirror
