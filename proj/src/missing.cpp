#include "mirror/missing.hpp"

#include <bit>

#include "mirror/strategies.hpp"

namespace mirror {

namespace {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

void validate_params(const SketchParams& params) {
  if (params.n_value < 1) throw InvalidParams("N must be at least 1");
  if (params.n_value > (1u << 30)) throw InvalidParams("N too large");
  if (params.s < 1 || params.s > 2 * params.n_value) {
    throw InvalidParams("offline size must lie in [1, 2N]");
  }
  if (params.k < 1) throw InvalidParams("budget k must be at least 1");
  if (params.p <= 2 * params.n_value || params.p >= 4ull * params.n_value ||
      !is_prime(params.p)) {
    throw InvalidParams("p must be a prime strictly between 2N and 4N");
  }
}

}  // namespace

std::uint64_t select_prime(std::uint64_t n_value) {
  if (n_value < 1 || n_value > (1ull << 30)) {
    throw InvalidParams("N outside supported range");
  }
  for (std::uint64_t p = 2 * n_value + 1; p < 4 * n_value; ++p) {
    if (is_prime(p)) return p;
  }
  throw InvalidParams("no prime in (2N, 4N)");  // unreachable for N >= 1
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p >= (1ull << 32)) throw InvalidParams("prime outside [2, 2^32)");
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = a + b;
  return r >= p_ ? r - p_ : r;
}

std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const {
  return a >= b ? a - b : a + p_ - b;
}

std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const {
  return (a * b) % p_;  // a, b < 2^32
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw InvalidParams("no inverse of 0");
  return pow(a, p_ - 2);
}

PowerSumSketch::PowerSumSketch(const SketchParams& params) : params_(params) {
  validate_params(params);
  sums_.assign(params.k, 0);
}

void PowerSumSketch::update(num y) {
  if (y < 1 || y > 2 * params_.n_value) {
    throw OutOfRange("stream value outside [1, 2N]");
  }
  const PrimeField field(params_.p);
  std::uint64_t power = 1;
  for (std::uint32_t i = 0; i < params_.k; ++i) {
    power = field.mul(power, y);
    sums_[i] = field.add(sums_[i], power);
  }
  ++count_;
}

std::uint64_t PowerSumSketch::metered_bits() const {
  return static_cast<std::uint64_t>(params_.k) * bits_for_residue(params_.p) +
         bits_for_counter(params_.n_value);
}

PowerSumSketch offline_sums(const std::vector<num>& s_members, std::uint32_t k,
                            std::uint64_t p, std::uint32_t n_value) {
  if (s_members.empty()) {
    throw InvalidParams("offline set must not be empty");
  }
  SketchParams params{n_value, static_cast<std::uint32_t>(s_members.size()), k,
                      p};
  PowerSumSketch sketch(params);
  for (num x : s_members) sketch.update(x);
  return sketch;
}

namespace detail {

std::vector<std::uint64_t> missing_poly_coeffs(const PowerSumSketch& offline,
                                               const PowerSumSketch& online) {
  if (offline.params() != online.params()) {
    throw ParamMismatch("sketch parameters differ");
  }
  if (online.count() > offline.count()) {
    throw DecodeFailure("online stream longer than the offline set");
  }
  const std::uint32_t missing = offline.count() - online.count();
  if (missing > offline.params().k) {
    throw DecodeFailure("more values missing than the budget k");
  }
  const PrimeField field(offline.params().p);

  // Power sums of the missing set: differences of the accumulated sums.
  std::vector<std::uint64_t> pw(missing);
  for (std::uint32_t i = 0; i < missing; ++i) {
    pw[i] = field.sub(offline.sums()[i], online.sums()[i]);
  }

  // Newton's identities: j e_j = sum_{i=1..j} (-1)^(i-1) e_{j-i} p_i.
  std::vector<std::uint64_t> e(missing + 1, 0);
  e[0] = 1;
  for (std::uint32_t j = 1; j <= missing; ++j) {
    std::uint64_t acc = 0;
    for (std::uint32_t i = 1; i <= j; ++i) {
      const std::uint64_t term = field.mul(e[j - i], pw[i - 1]);
      acc = (i % 2 == 1) ? field.add(acc, term) : field.sub(acc, term);
    }
    e[j] = field.mul(acc, field.inv(j));
  }

  // Monic polynomial with the missing values as roots:
  // z^m - e_1 z^(m-1) + e_2 z^(m-2) - ...
  std::vector<std::uint64_t> coeffs(missing + 1);
  for (std::uint32_t j = 0; j <= missing; ++j) {
    coeffs[j] = (j % 2 == 0) ? e[j] : field.sub(0, e[j]);
  }
  return coeffs;
}

std::uint64_t eval_monic(std::span<const std::uint64_t> coeffs, num x,
                         const PrimeField& field) {
  std::uint64_t v = coeffs[0];
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    v = field.add(field.mul(v, x), coeffs[j]);
  }
  return v;
}

}  // namespace detail

std::vector<num> recover_bruteforce(const PowerSumSketch& offline,
                                    const PowerSumSketch& online,
                                    const std::vector<num>& s_members) {
  if (offline.params() != online.params()) {
    throw ParamMismatch("sketch parameters differ");
  }
  if (online.count() > offline.count()) {
    throw DecodeFailure("online stream longer than the offline set");
  }
  const std::uint32_t missing = offline.count() - online.count();
  if (missing > offline.params().k) {
    throw DecodeFailure("more values missing than the budget k");
  }
  if (missing == 0) return {};

  const PrimeField field(offline.params().p);
  std::vector<std::uint64_t> target(missing);
  for (std::uint32_t i = 0; i < missing; ++i) {
    target[i] = field.sub(offline.sums()[i], online.sums()[i]);
  }

  const std::size_t n = s_members.size();
  if (missing > n) throw DecodeFailure("missing count exceeds candidate set");

  // Walk all size-`missing` index combinations in lexicographic order.
  std::vector<std::size_t> idx(missing);
  for (std::size_t i = 0; i < missing; ++i) idx[i] = i;
  std::vector<num> found;
  bool matched = false;
  for (;;) {
    bool ok = true;
    for (std::uint32_t i = 1; i <= missing && ok; ++i) {
      std::uint64_t sum = 0;
      for (std::size_t j : idx) {
        sum = field.add(sum, field.pow(s_members[j], i));
      }
      ok = sum == target[i - 1];
    }
    if (ok) {
      if (matched) throw DecodeFailure("ambiguous recovery");
      matched = true;
      found.clear();
      for (std::size_t j : idx) found.push_back(s_members[j]);
    }
    // next combination
    std::size_t i = missing;
    while (i > 0 && idx[i - 1] == n - missing + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < missing; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!matched) throw DecodeFailure("no subset matches the sketch difference");
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace mirror
