#include "mirror/two_bin.hpp"

#include <cmath>
#include <random>

namespace mirror {

namespace {

void validate_process(std::uint32_t m, std::uint32_t t) {
  if (m < 1) throw InvalidConfig("m must be at least 1");
  if (t >= 2 * m) throw InvalidConfig("threshold t must satisfy t < 2m");
}

// Runs one trial; returns whether B held more than t balls when A first
// became empty.
bool run_trial(const TwoBinConfig& config, Rng& rng) {
  std::uint32_t a = config.m, b = config.m;
  if (config.variant == TwoBinVariant::AliceStarts) {
    --a;
    if (a == 0) return b > config.t;
  }
  for (;;) {
    // Bob: uniform over all remaining balls. a > 0 here.
    std::uniform_int_distribution<std::uint32_t> d(0, a + b - 1);
    if (d(rng) < a) {
      --a;
      if (a == 0) return b > config.t;
      --a;  // Alice follows in the same bin, still nonempty or checked next
      if (a == 0) return b > config.t;
    } else {
      --b;
      if (b > 0) {
        --b;  // Alice follows in B
      } else {
        --a;  // B emptied; Alice falls back to A
        if (a == 0) return b > config.t;
      }
    }
  }
}

// Event probability from a state with Bob about to draw and a > 0.
Rational event_prob(std::uint32_t a, std::uint32_t b, std::uint32_t t) {
  const std::uint32_t balls = a + b;
  Rational total = 0;

  {  // Bob draws from A
    Rational sub;
    const std::uint32_t a1 = a - 1;
    if (a1 == 0) {
      sub = (b > t) ? 1 : 0;
    } else {
      const std::uint32_t a2 = a1 - 1;  // Alice follows in A
      sub = (a2 == 0) ? Rational((b > t) ? 1 : 0) : event_prob(a2, b, t);
    }
    total += Rational(a, balls) * sub;
  }

  if (b > 0) {  // Bob draws from B
    Rational sub;
    const std::uint32_t b1 = b - 1;
    if (b1 > 0) {
      sub = event_prob(a, b1 - 1, t);  // Alice follows in B; a unchanged
    } else {
      const std::uint32_t a1 = a - 1;  // B emptied; Alice falls back to A
      sub = (a1 == 0) ? Rational((b1 > t) ? 1 : 0) : event_prob(a1, b1, t);
    }
    total += Rational(b, balls) * sub;
  }
  return total;
}

}  // namespace

TwoBinResult simulate_two_bin(const TwoBinConfig& config) {
  validate_process(config.m, config.t);
  if (config.trials < 1) throw InvalidConfig("trials must be at least 1");

  TwoBinResult result;
  result.trials = config.trials;
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    Rng rng = make_rng(mix_seed(config.seed, trial));
    if (run_trial(config, rng)) ++result.event_count;
  }
  result.estimate =
      static_cast<double>(result.event_count) / static_cast<double>(config.trials);
  result.confidence_halfwidth =
      3.0 * std::sqrt(result.estimate * (1.0 - result.estimate) /
                      static_cast<double>(config.trials));
  return result;
}

Rational exact_tail_prob(std::uint32_t m_pairs, std::uint32_t r) {
  if (m_pairs < 1) throw InvalidParams("m_pairs must be at least 1");
  if (r > 2 * m_pairs) throw InvalidParams("r must not exceed 2 * m_pairs");
  Rational prod = 1;
  for (std::uint32_t j = 0; j < r; ++j) {
    if (j >= m_pairs) return Rational(0);  // the (m_pairs - j) factor vanished
    prod *= Rational(m_pairs - j, 2 * m_pairs - j);
  }
  return prod;
}

Rational enumerate_prob(std::uint32_t m, std::uint32_t t,
                        TwoBinVariant variant) {
  validate_process(m, t);
  if (m > 6) throw TooLarge("enumeration is limited to m <= 6");
  std::uint32_t a = m, b = m;
  if (variant == TwoBinVariant::AliceStarts) {
    --a;
    if (a == 0) return (b > t) ? 1 : 0;
  }
  return event_prob(a, b, t);
}

Rational bound_margin(std::uint32_t m_pairs, std::uint32_t r) {
  if (r < 1) throw InvalidParams("r must be at least 1");
  const Rational tail = exact_tail_prob(m_pairs, r);  // validates r <= m_pairs
  return Rational(BigInt(1), BigInt(1) << r) - tail;
}

AbortBoundReport abort_union_bound(std::uint32_t partitions,
                                   std::uint32_t budget) {
  if (partitions < 1) throw InvalidParams("need at least one partition");
  if (budget < 1) throw InvalidParams("budget must be at least 1");
  AbortBoundReport report;
  report.partitions = partitions;
  report.budget = budget;
  const std::uint32_t r = budget / 2 + 1;
  for (std::uint32_t i = 1; i <= partitions; ++i) {
    if ((1ull << i) <= budget) continue;  // tracked explicitly, cannot abort
    const std::uint32_t m_pairs = 1u << (i - 1);
    Rational term = exact_tail_prob(m_pairs, r);
    report.total += term;
    report.terms.emplace_back(i, std::move(term));
  }
  report.coarse = Rational(BigInt(partitions), BigInt(1) << budget);
  return report;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace mirror
