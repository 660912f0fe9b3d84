#pragma once

#include <algorithm>
#include <cstdint>
#include <ranges>
#include <span>
#include <vector>

#include "mirror/errors.hpp"
#include "mirror/game.hpp"

namespace mirror {

// Smallest prime p with 2N < p < 4N (one always exists by Bertrand's
// postulate). Throws InvalidParams for N = 0 or when 4N overflows the
// supported range.
std::uint64_t select_prime(std::uint64_t n_value);

// Arithmetic mod a prime p < 2^32 (so products fit in 64 bits).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);
  std::uint64_t p() const { return p_; }
  std::uint64_t reduce(std::uint64_t x) const { return x % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // a != 0

 private:
  std::uint64_t p_;
};

struct SketchParams {
  std::uint32_t n_value = 0;  // universe is [1, 2N]
  std::uint32_t s = 0;        // offline set size
  std::uint32_t k = 0;        // recovery budget: at most k missing values
  std::uint64_t p = 0;        // prime, 2N < p < 4N

  bool operator==(const SketchParams&) const = default;
};

// One-pass power-sum accumulator over F_p. After absorbing a multiset X it
// holds sums[i-1] = sum_{x in X} x^i mod p for i = 1..k, plus the element
// count. That is the entire state: k residues of ceil(log2 p) bits and one
// counter of ceil(log2(2N+1)) bits.
class PowerSumSketch {
 public:
  explicit PowerSumSketch(const SketchParams& params);  // zero sums

  // Absorbs one value. Throws OutOfRange unless 1 <= y <= 2N. Duplicates
  // cannot be detected here; a corrupted stream surfaces later as a
  // DecodeFailure during recovery.
  void update(num y);

  const SketchParams& params() const { return params_; }
  std::uint32_t count() const { return count_; }
  std::span<const std::uint64_t> sums() const { return sums_; }
  std::uint64_t metered_bits() const;

  bool operator==(const PowerSumSketch&) const = default;

 private:
  SketchParams params_;
  std::vector<std::uint64_t> sums_;
  std::uint32_t count_ = 0;
};

// Absorbs the whole offline set S. Throws InvalidParams for an empty S or
// parameters outside the sketch contract.
PowerSumSketch offline_sums(const std::vector<num>& s_members, std::uint32_t k,
                            std::uint64_t p, std::uint32_t n_value);

namespace detail {

// Coefficients (descending degree, monic: coeffs[0] = 1) of the polynomial
// whose roots are exactly the k' = offline.count - online.count values
// present offline but absent online.
//
// Newton's identities over F_p: with power sums p_i of the missing set and
// elementary symmetric functions e_j,
//     j * e_j = sum_{i=1..j} (-1)^(i-1) * e_{j-i} * p_i,
// and the division by j is valid because j <= k < p. The monic polynomial
// is then sum_j (-1)^j e_j z^(k'-j).
//
// Throws ParamMismatch if the sketches disagree on parameters and
// DecodeFailure when the counts imply k' < 0 or k' > k.
std::vector<std::uint64_t> missing_poly_coeffs(const PowerSumSketch& offline,
                                               const PowerSumSketch& online);

std::uint64_t eval_monic(std::span<const std::uint64_t> coeffs, num x,
                         const PrimeField& field);

}  // namespace detail

// Recovers the set of values present offline but absent from the online
// stream, by scanning `candidates` (the offline set, in any order, e.g.
// streamed from a read-only oracle) for roots of the missing-value
// polynomial. Returns the values sorted ascending. Throws DecodeFailure
// when the number of roots found differs from k' (corrupted stream or more
// than k values missing).
template <std::ranges::input_range R>
std::vector<num> recover_newton(const PowerSumSketch& offline,
                                const PowerSumSketch& online, R&& candidates) {
  const auto coeffs = detail::missing_poly_coeffs(offline, online);
  const std::size_t missing = coeffs.size() - 1;
  const PrimeField field(offline.params().p);
  std::vector<num> roots;
  for (num x : candidates) {
    if (missing > 0 && detail::eval_monic(coeffs, x, field) == 0) {
      roots.push_back(x);
    }
  }
  if (roots.size() != missing) {
    throw DecodeFailure("root count does not match the missing count");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Independent recovery oracle: enumerates every k'-subset of `s_members`
// and keeps the one whose power sums match the sketch difference. Usable
// only at small |S|; intended as a cross-check for recover_newton.
std::vector<num> recover_bruteforce(const PowerSumSketch& offline,
                                    const PowerSumSketch& online,
                                    const std::vector<num>& s_members);

}  // namespace mirror
