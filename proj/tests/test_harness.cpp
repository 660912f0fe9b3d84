#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "mirror/harness.hpp"
#include "mirror/matching.hpp"
#include "mirror/strategies.hpp"

using namespace mirror;

namespace {

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("one match is deterministic in the seed") {
  const GameTranscript a =
      play_match(kAlicePartition, kBobUniform, 8, 2.0, 42);
  const GameTranscript b =
      play_match(kAlicePartition, kBobUniform, 8, 2.0, 42);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.outcome != Outcome::Ongoing);
  REQUIRE_FALSE(a.moves.empty());
  for (std::size_t i = 0; i < a.moves.size(); ++i) {
    CHECK(a.moves[i].player == (i % 2 ? Player::Bob : Player::Alice));
  }
  const GameTranscript c =
      play_match(kAlicePartition, kBobUniform, 8, 2.0, 43);
  CHECK(a.to_text() != c.to_text());  // astronomically unlikely to collide
}

TEST_CASE("match configuration errors") {
  CHECK_THROWS_AS(play_match("alice-greedy", kBobMirror, 8, 2.0, 0),
                  InvalidConfig);
  CHECK_THROWS_AS(play_match(kAlicePartition, "bob-psychic", 8, 2.0, 0),
                  InvalidConfig);
  CHECK_THROWS_AS(play_match(kAlicePartition, kBobMirror, 3, 2.0, 0),
                  InvalidConfig);
  CHECK_THROWS_AS(play_match(kAlicePartition, kBobMirror, 8, 0.0, 0),
                  InvalidConfig);
}

TEST_CASE("a mirroring opponent never wins outright") {
  for (const std::uint32_t n : {4u, 8u, 16u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const GameTranscript t =
          play_match(kAlicePartition, kBobMirror, n, 2.0, seed);
      const bool tie = t.outcome == Outcome::Tie && !t.abort;
      const bool abort_loss = t.outcome == Outcome::BobWins && t.abort;
      CHECK((tie || abort_loss));
    }
  }
}

TEST_CASE("campaign counts are conserved and reports are stable") {
  CampaignConfig config;
  config.n_values = {4, 8};
  config.c = 2.0;
  config.bob = kBobUniform;
  config.trials = 40;
  config.master_seed = 99;
  config.workers = 1;
  const StatsReport one = run_montecarlo(config);
  REQUIRE(one.per_n.size() == 2);
  for (const NStats& st : one.per_n) {
    CHECK(st.ties + st.alice_wins + st.bob_wins == st.trials);
    CHECK(st.aborts <= st.bob_wins);
    CHECK(st.trials == 40);
    CHECK(st.peak_alice_bits_max > 0);
    CHECK(st.peak_alice_bits_mean > 0.0);
    CHECK(st.tie_target == doctest::Approx(1.0 - 1.0 / st.n));
  }

  config.workers = 8;
  const StatsReport eight = run_montecarlo(config);
  CHECK(to_json(one) == to_json(eight));
  CHECK(to_csv(one) == to_csv(eight));
}

TEST_CASE("json report carries the config but no timing") {
  CampaignConfig config;
  config.n_values = {4};
  config.bob = kBobMirror;
  config.trials = 5;
  config.master_seed = 7;
  config.workers = 3;
  const std::string text = to_json(run_montecarlo(config));
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["config"]["bob"] == "bob-mirror");
  CHECK(j["config"]["trials"] == 5);
  CHECK(j["config"]["master_seed"] == 7);
  CHECK(j["config"]["n_values"] == nlohmann::json::array({4}));
  CHECK_FALSE(j["config"].contains("workers"));
  REQUIRE(j["per_n"].size() == 1);
  const auto& row = j["per_n"][0];
  CHECK(row["n"] == 4);
  CHECK(row["log2_n"] == 2);
  CHECK(row["k"] == 4);
  CHECK(row["trials"] == 5);
  CHECK_FALSE(row.contains("elapsed_seconds"));
  CHECK(row["ties"].get<std::uint64_t>() +
            row["alice_wins"].get<std::uint64_t>() +
            row["bob_wins"].get<std::uint64_t>() ==
        5);
}

TEST_CASE("csv report has a frozen layout") {
  StatsReport report;
  NStats st;
  st.n = 4;
  st.log2_n = 2;
  st.k = 4;
  st.trials = 10;
  st.ties = 9;
  st.alice_wins = 1;
  st.bob_wins = 0;
  st.aborts = 0;
  st.tie_rate = 0.9;
  st.abort_rate = 0.0;
  st.tie_target = 0.75;
  st.predicted_abort_bound = 0.0;
  st.peak_alice_bits_max = 10;
  st.peak_alice_bits_mean = 5.5;
  st.peak_bob_bits_max = 4;
  st.elapsed_seconds = 123.0;  // must never appear
  report.per_n.push_back(st);
  CHECK(to_csv(report) ==
        "n,log2_n,k,trials,ties,alice_wins,bob_wins,aborts,tie_rate,"
        "abort_rate,tie_target,predicted_abort_bound,peak_alice_bits_max,"
        "peak_alice_bits_mean,peak_bob_bits_max\n"
        "4,2,4,10,9,1,0,0,0.90000000000000002,0,0.75,0,10,5.5,4\n");
}

TEST_CASE("campaign configuration errors") {
  CampaignConfig config;
  config.bob = kBobUniform;
  config.trials = 1;
  CHECK_THROWS_AS(run_montecarlo(config), InvalidConfig);  // no sizes
  config.n_values = {6};
  CHECK_THROWS_AS(run_montecarlo(config), InvalidConfig);  // not a power of 2
  config.n_values = {4};
  config.trials = 0;
  CHECK_THROWS_AS(run_montecarlo(config), InvalidConfig);
  config.trials = 1;
  config.bob = "bob-psychic";
  CHECK_THROWS_AS(run_montecarlo(config), InvalidConfig);
  config.bob = kBobUniform;
  config.workers = 0;
  CHECK_THROWS_AS(run_montecarlo(config), InvalidConfig);
}

TEST_CASE("memory measurement rows") {
  const MemoryReport report = measure_memory({4, 8}, 2.0, 5, 3);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].n == 4);
  CHECK(report.rows[1].n == 8);
  for (const MemoryRow& row : report.rows) {
    CHECK(row.alice_peak_max > 0);
    CHECK(row.alice_peak_mean > 0.0);
    CHECK(row.alice_peak_mean <= static_cast<double>(row.alice_peak_max));
    CHECK(row.mirror_bound == 2 * bits_for_number(row.n));
    CHECK(row.mirror_peak_max == row.mirror_bound);  // reached on each move
    const double lg = row.log2_n;
    CHECK(row.per_log_cubed ==
          doctest::Approx(row.alice_peak_max / (lg * lg * lg)));
  }
  const std::string text = to_text(report);
  CHECK(contains(text, "alice_peak_max"));
  CHECK(contains(text, "mirror_bound"));
  CHECK_THROWS_AS(measure_memory({}, 2.0, 5, 3), InvalidConfig);
  CHECK_THROWS_AS(measure_memory({4}, 2.0, 0, 3), InvalidConfig);
}

TEST_CASE("two-bin rows in both formats") {
  TwoBinConfig config;
  config.m = 2;
  config.t = 1;
  config.variant = TwoBinVariant::BobStarts;
  TwoBinResult result;
  result.event_count = 5;
  result.trials = 10;
  result.estimate = 0.5;
  result.exact = Rational(1, 2);
  result.confidence_halfwidth = 0.25;
  CHECK(twobin_row(config, result, ReportFormat::Csv) ==
        "m,t,variant,trials,event_count,estimate,exact,margin\n"
        "2,1,bob,10,5,0.5,1/2,0.25\n");

  const nlohmann::json j =
      nlohmann::json::parse(twobin_row(config, result, ReportFormat::Json));
  CHECK(j["m"] == 2);
  CHECK(j["variant"] == "bob");
  CHECK(j["exact"] == "1/2");
  CHECK(j["estimate"] == 0.5);

  result.exact.reset();
  config.variant = TwoBinVariant::AliceStarts;
  CHECK(twobin_row(config, result, ReportFormat::Csv) ==
        "m,t,variant,trials,event_count,estimate,exact,margin\n"
        "2,1,alice,10,5,0.5,,0.25\n");
  const nlohmann::json k =
      nlohmann::json::parse(twobin_row(config, result, ReportFormat::Json));
  CHECK_FALSE(k.contains("exact"));
}

TEST_CASE("terminal game: quit, eof and input validation") {
  {
    std::istringstream in("quit\n");
    std::ostringstream out;
    CHECK(interactive_repl(2, 2.0, 5, in, out) == 0);
    CHECK(contains(out.str(), "alice declares"));
    CHECK(contains(out.str(), "goodbye"));
  }
  {
    std::istringstream in("");
    std::ostringstream out;
    CHECK(interactive_repl(2, 2.0, 5, in, out) == 1);
    CHECK(contains(out.str(), "input closed"));
  }
  {
    std::istringstream in("abc\n0\n99\nshow\nquit\n");
    std::ostringstream out;
    CHECK(interactive_repl(2, 2.0, 5, in, out) == 0);
    CHECK(contains(out.str(), "enter a number in [1, 4]"));
    CHECK(contains(out.str(), "declared:"));
  }
}

TEST_CASE("terminal game: repeating and finishing") {
  // Reconstruct the oracle the terminal game derives from seed 5 so the
  // script can collide with alice's first declaration on purpose.
  Rng oracle_rng = make_rng(mix_seed(5, 0));
  const MatchingList oracle = MatchingList::generate(2, oracle_rng);
  const num first = oracle.pair(1).first;

  {
    std::istringstream in(std::to_string(first) + "\n");
    std::ostringstream out;
    CHECK(interactive_repl(2, 2.0, 5, in, out) == 0);
    CHECK(contains(out.str(), "you lose: repeated declaration"));
    CHECK(contains(out.str(), "OUTCOME AliceWins"));
  }
  {
    // Closing the open pair makes alice open the second oracle pair; its
    // partner then fills the universe for a tie.
    const num close_first = oracle.partner(first);
    const num close_second = oracle.pair(2).second;
    std::istringstream in(std::to_string(close_first) + "\n" +
                          std::to_string(close_second) + "\n");
    std::ostringstream out;
    CHECK(interactive_repl(2, 2.0, 5, in, out) == 0);
    CHECK(contains(out.str(), "game over: tie"));
    CHECK(contains(out.str(), "OUTCOME Tie"));
  }
}
