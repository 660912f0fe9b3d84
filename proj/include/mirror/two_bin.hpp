#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mirror/errors.hpp"
#include "mirror/rng.hpp"

namespace mirror {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Two bins A and B start with m balls each. One round: Bob removes a ball
// chosen uniformly among all remaining balls, then Alice removes another
// ball from the same bin, falling back to the other bin if that bin is
// empty. In the AliceStarts variant Alice first removes a single ball from
// A before the rounds begin. The tracked event: B still holds more than t
// balls at the first moment A becomes empty.
enum class TwoBinVariant { AliceStarts, BobStarts };

struct TwoBinConfig {
  std::uint32_t m = 1;   // balls per bin
  std::uint32_t t = 0;   // threshold, 0 <= t < 2m
  TwoBinVariant variant = TwoBinVariant::BobStarts;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
};

struct TwoBinResult {
  std::uint64_t event_count = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  std::optional<Rational> exact;    // filled by callers when computable
  double confidence_halfwidth = 0;  // 3 sigma, normal approximation
};

// Monte Carlo estimate with per-trial derived seeds (deterministic for a
// given config). Throws InvalidConfig for m < 1, t >= 2m or trials < 1.
TwoBinResult simulate_two_bin(const TwoBinConfig& config);

// Probability that the last r items of a uniformly random permutation of
// m_pairs + m_pairs items all come from the second group:
//     prod_{j=0..r-1} (m_pairs - j) / (2 m_pairs - j).
// With even m the BobStarts process removes whole pairs, one bin chosen
// proportionally to its ball count, so its event probability equals
// exact_tail_prob(m/2, floor(t/2)+1). Zero for r > m_pairs (a factor
// vanishes). Throws InvalidParams unless 0 <= r <= 2*m_pairs, m_pairs >= 1.
Rational exact_tail_prob(std::uint32_t m_pairs, std::uint32_t r);

// Exact event probability by weighted enumeration of the process tree.
// Feasible only for small m; throws TooLarge for m > 6, InvalidConfig for
// m < 1 or t >= 2m. Independent of the closed form above.
Rational enumerate_prob(std::uint32_t m, std::uint32_t t,
                        TwoBinVariant variant);

// 2^-r minus the exact tail probability. Nonnegative for r >= 1 (every
// factor is at most 1/2) and zero exactly at r = 1. Throws InvalidParams
// unless 1 <= r <= 2*m_pairs.
Rational bound_margin(std::uint32_t m_pairs, std::uint32_t r);

// Union bound on the abort probability of the partition strategy with n
// partitions and budget k: partition i maps to bins of 2^(i-1) pairs each
// with threshold floor(k/2)+1 pair-removals, and only sketched partitions
// (2^i > k) can abort. `coarse` is the first-principles expression
// n * 2^-k for side-by-side reporting; the per-partition total is the
// bound the harness consumes.
struct AbortBoundReport {
  std::uint32_t partitions = 0;  // n
  std::uint32_t budget = 0;      // k
  std::vector<std::pair<std::uint32_t, Rational>> terms;  // (i, tail bound)
  Rational total = 0;
  Rational coarse = 0;
};

AbortBoundReport abort_union_bound(std::uint32_t partitions,
                                   std::uint32_t budget);

double to_double(const Rational& r);

}  // namespace mirror
