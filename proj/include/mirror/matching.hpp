#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mirror/errors.hpp"
#include "mirror/game.hpp"
#include "mirror/rng.hpp"

namespace mirror {

// A string of unbiased random bits, read most-significant-bit-first within
// each byte when loaded from a file.
struct RandomBitString {
  std::vector<bool> bits;

  static RandomBitString random(std::size_t bit_count, Rng& rng);
  static RandomBitString from_file(const std::string& path);  // IoError
  void to_file(const std::string& path) const;                // IoError
};

// A generous bit length for which decoding at size N succeeds with
// overwhelming probability (a small multiple of N log^2 N).
std::size_t recommended_bit_length(std::uint32_t n_value);

// Read-only matching oracle: an ordered list M_1..M_N of N unordered pairs
// partitioning [1, 2N]. Pairs are stored smaller-element-first. Oracle
// contents and query answers are free for strategies: they are never
// counted against a player's memory meter.
class MatchingList {
 public:
  // Uniform over all (2N)!/2^N ordered lists of unordered pairs.
  static MatchingList generate(std::uint32_t n_value, Rng& rng);

  // Canonicalizes and validates that the pairs partition [1, 2N].
  static MatchingList from_pairs(std::vector<std::pair<num, num>> pairs);

  // Interprets the string as consecutive (1 + log2 N)-bit big-endian words;
  // word value w names the number w + 1. The order of first appearance
  // induces a permutation pi of [1, 2N]; pair q is {pi(2q-1), pi(2q)}.
  // Throws InvalidConfig unless N is a power of two, IncompleteCoverage if
  // the bits run out before every number has appeared.
  static MatchingList decode_random_string(const RandomBitString& s,
                                           std::uint32_t n_value);

  // Text format: N lines "a b" with a < b. load() accepts either member
  // order and canonicalizes, but requires a perfect matching.
  static MatchingList load(std::istream& in);
  void save(std::ostream& out) const;

  std::uint32_t size() const { return n_; }  // number of pairs N

  // Pair q, 1-based, smaller element first. OutOfRange unless 1 <= q <= N.
  std::pair<num, num> pair(std::uint32_t q) const;

  // The unique y matched with x (an involution). OutOfRange unless
  // 1 <= x <= 2N.
  num partner(num x) const;

  // Index q of the pair containing x, 1-based.
  std::uint32_t locate(num x) const;

  bool operator==(const MatchingList& o) const { return pairs_ == o.pairs_; }

 private:
  MatchingList() = default;
  std::uint32_t n_ = 0;
  std::vector<std::pair<num, num>> pairs_;
  std::vector<std::uint32_t> pair_of_;  // x -> q, oracle-side index (free ROM)
};

// Streaming accessor to the first-appearance permutation of a decoded
// string: returns pi(rank) using O(log N) workspace by rescanning the bits
// instead of materializing the list. Same error contract as
// decode_random_string.
num streaming_permutation_entry(const RandomBitString& s,
                                std::uint32_t n_value, std::uint32_t rank);

// Pair q of the decoded list via two streaming lookups.
std::pair<num, num> streaming_pair(const RandomBitString& s,
                                   std::uint32_t n_value, std::uint32_t q);

}  // namespace mirror
