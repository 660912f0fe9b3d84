#include <doctest.h>

#include <cmath>

#include "mirror/two_bin.hpp"

using namespace mirror;

TEST_CASE("exact tail probabilities on worked values") {
  CHECK(exact_tail_prob(1, 0) == Rational(1));
  CHECK(exact_tail_prob(1, 1) == Rational(1, 2));
  CHECK(exact_tail_prob(3, 1) == Rational(1, 2));
  CHECK(exact_tail_prob(3, 2) == Rational(1, 5));   // (3/6)(2/5)
  CHECK(exact_tail_prob(2, 2) == Rational(1, 6));   // (2/4)(1/3)
  CHECK(exact_tail_prob(8, 4) == Rational(1, 26));  // 1680/43680
  CHECK(exact_tail_prob(2, 3) == Rational(0));      // a factor vanishes
  CHECK(exact_tail_prob(2, 4) == Rational(0));
  CHECK_THROWS_AS(exact_tail_prob(0, 0), InvalidParams);
  CHECK_THROWS_AS(exact_tail_prob(2, 5), InvalidParams);
}

TEST_CASE("enumeration equals the pair-removal closed form for even m") {
  for (const std::uint32_t m : {2u, 4u, 6u}) {
    for (std::uint32_t t = 0; t < 2 * m; ++t) {
      CHECK(enumerate_prob(m, t, TwoBinVariant::BobStarts) ==
            exact_tail_prob(m / 2, t / 2 + 1));
    }
  }
  CHECK(enumerate_prob(4, 3, TwoBinVariant::BobStarts) == Rational(1, 6));
  CHECK(enumerate_prob(2, 1, TwoBinVariant::BobStarts) == Rational(1, 2));
}

TEST_CASE("enumeration handles the alice-starts prelude") {
  // m = 2, t = 1: Bob's first draw hits A with probability 1/3 and B holds
  // 2 > 1 balls; every other branch empties B first.
  CHECK(enumerate_prob(2, 1, TwoBinVariant::AliceStarts) == Rational(1, 3));
  // m = 1: the prelude already empties A.
  CHECK(enumerate_prob(1, 0, TwoBinVariant::AliceStarts) == Rational(1));
  CHECK(enumerate_prob(1, 1, TwoBinVariant::AliceStarts) == Rational(0));
  // B can never exceed 2m - 1 at the end.
  CHECK(enumerate_prob(3, 5, TwoBinVariant::BobStarts) == Rational(0));
  CHECK(enumerate_prob(4, 4, TwoBinVariant::BobStarts) == Rational(0));

  CHECK_THROWS_AS(enumerate_prob(7, 0, TwoBinVariant::BobStarts), TooLarge);
  CHECK_THROWS_AS(enumerate_prob(0, 0, TwoBinVariant::BobStarts),
                  InvalidConfig);
  CHECK_THROWS_AS(enumerate_prob(2, 4, TwoBinVariant::BobStarts),
                  InvalidConfig);
}

TEST_CASE("tail bound margin") {
  CHECK(bound_margin(2, 2) == Rational(1, 12));   // 1/4 - 1/6
  CHECK(bound_margin(8, 4) == Rational(5, 208));  // 1/16 - 1/26
  CHECK(bound_margin(1, 1) == Rational(0));
  CHECK(bound_margin(64, 1) == Rational(0));
  for (std::uint32_t m = 1; m <= 16; ++m) {
    for (std::uint32_t r = 1; r <= m; ++r) {
      const Rational margin = bound_margin(m, r);
      CHECK(margin >= 0);
      if (r >= 2) CHECK(margin > 0);
    }
  }
  CHECK_THROWS_AS(bound_margin(4, 0), InvalidParams);
  CHECK_THROWS_AS(bound_margin(4, 9), InvalidParams);
}

TEST_CASE("simulation tracks the exact probabilities") {
  TwoBinConfig config;
  config.m = 1;
  config.t = 0;
  config.variant = TwoBinVariant::BobStarts;
  config.trials = 20000;
  config.seed = 11;
  const TwoBinResult r = simulate_two_bin(config);
  CHECK(r.trials == 20000);
  CHECK(std::abs(r.estimate - 0.5) <= 3.0 * std::sqrt(0.25 / 20000.0));
  CHECK(r.confidence_halfwidth > 0.0);

  // Deterministic for a fixed config.
  const TwoBinResult again = simulate_two_bin(config);
  CHECK(again.event_count == r.event_count);

  // AliceStarts with m = 1 is decided by the prelude alone.
  config.variant = TwoBinVariant::AliceStarts;
  CHECK(simulate_two_bin(config).estimate == 1.0);
  config.t = 1;
  CHECK(simulate_two_bin(config).estimate == 0.0);

  // m = 4, t = 3 has exact probability 1/6.
  TwoBinConfig mid;
  mid.m = 4;
  mid.t = 3;
  mid.trials = 30000;
  mid.seed = 12;
  const double p = 1.0 / 6.0;
  const TwoBinResult est = simulate_two_bin(mid);
  CHECK(std::abs(est.estimate - p) <=
        3.0 * std::sqrt(p * (1 - p) / 30000.0));
}

TEST_CASE("simulation config validation") {
  TwoBinConfig config;
  config.m = 0;
  CHECK_THROWS_AS(simulate_two_bin(config), InvalidConfig);
  config.m = 2;
  config.t = 4;
  CHECK_THROWS_AS(simulate_two_bin(config), InvalidConfig);
  config.t = 1;
  config.trials = 0;
  CHECK_THROWS_AS(simulate_two_bin(config), InvalidConfig);
}

TEST_CASE("abort union bound per partition") {
  const AbortBoundReport report = abort_union_bound(10, 20);
  CHECK(report.partitions == 10);
  CHECK(report.budget == 20);
  REQUIRE(report.terms.size() == 6);  // partitions 5..10 are sketched
  CHECK(report.terms.front().first == 5);
  CHECK(report.terms.back().first == 10);
  CHECK(report.terms.front().second == exact_tail_prob(16, 11));
  Rational total = 0;
  for (const auto& [i, term] : report.terms) total += term;
  CHECK(total == report.total);
  const double val = to_double(report.total);
  CHECK(val > 1.7e-3);
  CHECK(val < 1.9e-3);
  CHECK(report.coarse == Rational(10, 1 << 20));

  // Everything explicit: no abort terms at all.
  const AbortBoundReport none = abort_union_bound(3, 8);
  CHECK(none.terms.empty());
  CHECK(none.total == 0);

  CHECK_THROWS_AS(abort_union_bound(0, 5), InvalidParams);
  CHECK_THROWS_AS(abort_union_bound(5, 0), InvalidParams);
}

TEST_CASE("rational to double") {
  CHECK(to_double(Rational(1, 2)) == 0.5);
  CHECK(to_double(Rational(0)) == 0.0);
  CHECK(std::abs(to_double(Rational(1, 3)) - 1.0 / 3.0) < 1e-15);
}
