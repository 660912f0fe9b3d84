#include "mirror/harness.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mirror/matching.hpp"
#include "mirror/strategies.hpp"

namespace mirror {

namespace {

using nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_pow2_at_least_2(std::uint32_t v) {
  return v >= 2 && (v & (v - 1)) == 0;
}

std::uint32_t log2_exact(std::uint32_t v) {
  return static_cast<std::uint32_t>(std::bit_width(v)) - 1;
}

// Mirrors the budget computed by AlicePartition.
std::uint32_t budget_for(std::uint32_t n_value, double c) {
  const auto k =
      static_cast<std::uint32_t>(std::ceil(c * log2_exact(n_value)));
  return k < 1 ? 1 : k;
}

struct PlayResult {
  GameTranscript transcript;
  std::uint64_t alice_peak = 0;
  std::uint64_t bob_peak = 0;
};

// One full game of alice-partition against the named Bob. The seed derives
// the oracle (stream 0) and Bob's randomness (stream 1).
PlayResult play_game(const std::string& bob_name, std::uint32_t n_value,
                     double c, std::uint64_t seed) {
  if (!is_known_bob(bob_name)) {
    throw InvalidConfig("unknown bob strategy: " + bob_name);
  }
  Rng oracle_rng = make_rng(mix_seed(seed, 0));
  Rng bob_rng = make_rng(mix_seed(seed, 1));
  const MatchingList oracle = MatchingList::generate(n_value, oracle_rng);

  GameConfig game_config;
  game_config.n = n_value;
  game_config.c = c;
  game_config.master_seed = seed;
  GameState state = new_game(game_config);
  AlicePartition alice(oracle, n_value, c);

  std::optional<MirrorBob> mirror;
  std::optional<UniformBob> uniform;
  if (bob_name == kBobMirror) {
    mirror.emplace(n_value);
  } else if (bob_name == kBobUniform) {
    uniform.emplace(n_value);
  }

  PlayResult out;
  const auto declare = [&](Player p, num x) {
    state.apply_declaration(p, x);
    out.transcript.moves.push_back({p, x});
    if (uniform && state.outcome() == Outcome::Ongoing) {
      uniform->on_declared(x);
    }
  };

  const num first = alice.first_declaration();
  declare(Player::Alice, first);
  if (mirror) mirror->observe_alice(first);

  while (state.outcome() == Outcome::Ongoing) {
    num bob_number = 0;
    if (mirror) {
      bob_number = mirror->move();
    } else if (uniform) {
      bob_number = uniform->move(bob_rng);
    } else {
      bob_number = bob_peeking_move(oracle, state, alice.open_number());
    }
    declare(Player::Bob, bob_number);
    if (state.outcome() != Outcome::Ongoing) break;

    const auto reply = alice.respond(bob_number);
    if (!reply) {
      state.abort_alice();
      out.transcript.abort = true;
      out.transcript.abort_reason = "sketched partition exceeded budget";
      break;
    }
    declare(Player::Alice, *reply);
    if (mirror) mirror->observe_alice(*reply);
  }

  out.transcript.outcome = state.outcome();
  out.transcript.abort = state.abort_flag();
  out.alice_peak = alice.peak_metered_bits();
  if (mirror) {
    out.bob_peak = mirror->peak_metered_bits();
  } else if (uniform) {
    out.bob_peak = uniform->peak_metered_bits();
  } else {
    // The peeking control transiently holds Alice's open number and its
    // own candidate.
    out.bob_peak = 2ull * bits_for_number(n_value);
  }
  return out;
}

struct TrialRec {
  Outcome outcome = Outcome::Ongoing;
  bool abort = false;
  std::uint64_t alice_peak = 0;
  std::uint64_t bob_peak = 0;
};

// Plays `trials` games with per-trial seeds mix_seed(master_seed, i) on up
// to `workers` threads. Results land in a slot array indexed by trial, so
// aggregation order never depends on scheduling.
std::vector<TrialRec> run_trials(const std::string& bob_name,
                                 std::uint32_t n_value, double c,
                                 std::uint64_t trials,
                                 std::uint64_t master_seed, unsigned workers) {
  std::vector<TrialRec> recs(trials);
  const auto run_one = [&](std::uint64_t i) {
    const PlayResult r = play_game(bob_name, n_value, c, mix_seed(master_seed, i));
    recs[i] = TrialRec{r.transcript.outcome, r.transcript.abort, r.alice_peak,
                       r.bob_peak};
  };

  if (workers <= 1 || trials <= 1) {
    for (std::uint64_t i = 0; i < trials; ++i) run_one(i);
    return recs;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  const auto work = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        run_one(i);
      } catch (...) {
        const std::lock_guard<std::mutex> g(err_mutex);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count =
      static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return recs;
}

void validate_campaign(const std::vector<std::uint32_t>& n_values, double c,
                       const std::string& bob, std::uint64_t trials) {
  if (n_values.empty()) throw InvalidConfig("need at least one N");
  for (const std::uint32_t n : n_values) {
    if (!is_pow2_at_least_2(n)) {
      throw InvalidConfig("every N must be a power of two, >= 2");
    }
  }
  if (!(c > 0.0)) throw InvalidConfig("c must be positive");
  if (!is_known_bob(bob)) throw InvalidConfig("unknown bob strategy: " + bob);
  if (trials < 1) throw InvalidConfig("trials must be at least 1");
}

ordered_json config_json(const CampaignConfig& config) {
  ordered_json j;
  j["n_values"] = config.n_values;
  j["c"] = config.c;
  j["bob"] = config.bob;
  j["trials"] = config.trials;
  j["master_seed"] = config.master_seed;
  return j;
}

}  // namespace

GameTranscript play_match(const std::string& alice_name,
                          const std::string& bob_name, std::uint32_t n_value,
                          double c, std::uint64_t seed) {
  if (alice_name != kAlicePartition) {
    throw InvalidConfig("unknown alice strategy: " + alice_name);
  }
  return play_game(bob_name, n_value, c, seed).transcript;
}

StatsReport run_montecarlo(const CampaignConfig& config) {
  validate_campaign(config.n_values, config.c, config.bob, config.trials);
  if (config.workers < 1) throw InvalidConfig("workers must be at least 1");

  StatsReport report;
  report.config = config;
  report.per_n.reserve(config.n_values.size());
  for (const std::uint32_t n : config.n_values) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<TrialRec> recs = run_trials(
        config.bob, n, config.c, config.trials, config.master_seed,
        config.workers);

    NStats st;
    st.n = n;
    st.log2_n = log2_exact(n);
    st.k = budget_for(n, config.c);
    st.trials = config.trials;
    std::uint64_t alice_peak_sum = 0;
    for (const TrialRec& r : recs) {
      switch (r.outcome) {
        case Outcome::Tie: ++st.ties; break;
        case Outcome::AliceWins: ++st.alice_wins; break;
        case Outcome::BobWins: ++st.bob_wins; break;
        case Outcome::Ongoing:
          throw ProtocolError("trial finished with an unfinished game");
      }
      if (r.abort) ++st.aborts;
      st.peak_alice_bits_max = std::max(st.peak_alice_bits_max, r.alice_peak);
      st.peak_bob_bits_max = std::max(st.peak_bob_bits_max, r.bob_peak);
      alice_peak_sum += r.alice_peak;
    }
    const auto trials_d = static_cast<double>(config.trials);
    st.tie_rate = static_cast<double>(st.ties) / trials_d;
    st.abort_rate = static_cast<double>(st.aborts) / trials_d;
    st.tie_target = 1.0 - 1.0 / static_cast<double>(n);
    st.predicted_abort_bound =
        to_double(abort_union_bound(st.log2_n, st.k).total);
    st.peak_alice_bits_mean = static_cast<double>(alice_peak_sum) / trials_d;
    st.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report.per_n.push_back(st);
  }
  return report;
}

std::string to_json(const StatsReport& report) {
  ordered_json j;
  j["config"] = config_json(report.config);
  ordered_json rows = ordered_json::array();
  for (const NStats& st : report.per_n) {
    ordered_json r;
    r["n"] = st.n;
    r["log2_n"] = st.log2_n;
    r["k"] = st.k;
    r["trials"] = st.trials;
    r["ties"] = st.ties;
    r["alice_wins"] = st.alice_wins;
    r["bob_wins"] = st.bob_wins;
    r["aborts"] = st.aborts;
    r["tie_rate"] = st.tie_rate;
    r["abort_rate"] = st.abort_rate;
    r["tie_target"] = st.tie_target;
    r["predicted_abort_bound"] = st.predicted_abort_bound;
    r["peak_alice_bits_max"] = st.peak_alice_bits_max;
    r["peak_alice_bits_mean"] = st.peak_alice_bits_mean;
    r["peak_bob_bits_max"] = st.peak_bob_bits_max;
    rows.push_back(std::move(r));
  }
  j["per_n"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_csv(const StatsReport& report) {
  std::ostringstream os;
  os << "n,log2_n,k,trials,ties,alice_wins,bob_wins,aborts,tie_rate,"
        "abort_rate,tie_target,predicted_abort_bound,peak_alice_bits_max,"
        "peak_alice_bits_mean,peak_bob_bits_max\n";
  for (const NStats& st : report.per_n) {
    os << st.n << ',' << st.log2_n << ',' << st.k << ',' << st.trials << ','
       << st.ties << ',' << st.alice_wins << ',' << st.bob_wins << ','
       << st.aborts << ',' << fmt_double(st.tie_rate) << ','
       << fmt_double(st.abort_rate) << ',' << fmt_double(st.tie_target) << ','
       << fmt_double(st.predicted_abort_bound) << ','
       << st.peak_alice_bits_max << ','
       << fmt_double(st.peak_alice_bits_mean) << ','
       << st.peak_bob_bits_max << '\n';
  }
  return os.str();
}

MemoryReport measure_memory(const std::vector<std::uint32_t>& n_values,
                            double c, std::uint64_t trials,
                            std::uint64_t master_seed) {
  validate_campaign(n_values, c, kBobUniform, trials);

  MemoryReport report;
  report.c = c;
  report.trials = trials;
  report.master_seed = master_seed;
  report.rows.reserve(n_values.size());
  for (const std::uint32_t n : n_values) {
    MemoryRow row;
    row.n = n;
    row.log2_n = log2_exact(n);
    row.k = budget_for(n, c);

    std::uint64_t alice_sum = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
      const PlayResult r =
          play_game(kBobUniform, n, c, mix_seed(master_seed, i));
      row.alice_peak_max = std::max(row.alice_peak_max, r.alice_peak);
      alice_sum += r.alice_peak;
    }
    row.alice_peak_mean =
        static_cast<double>(alice_sum) / static_cast<double>(trials);
    const double lg = static_cast<double>(row.log2_n);
    row.per_log_cubed =
        static_cast<double>(row.alice_peak_max) / (lg * lg * lg);

    for (std::uint64_t i = 0; i < trials; ++i) {
      const PlayResult r =
          play_game(kBobMirror, n, c, mix_seed(master_seed, i));
      row.mirror_peak_max = std::max(row.mirror_peak_max, r.bob_peak);
    }
    row.mirror_bound = 2ull * bits_for_number(n);
    report.rows.push_back(row);
  }
  return report;
}

std::string to_text(const MemoryReport& report) {
  std::ostringstream os;
  os << "peak metered bits, c=" << report.c << ", trials=" << report.trials
     << ", seed=" << report.master_seed << "\n";
  os << std::setw(8) << "n" << std::setw(7) << "log2" << std::setw(5) << "k"
     << std::setw(16) << "alice_peak_max" << std::setw(17) << "alice_peak_mean"
     << std::setw(15) << "peak/log^3" << std::setw(17) << "mirror_peak_max"
     << std::setw(14) << "mirror_bound" << "\n";
  for (const MemoryRow& row : report.rows) {
    char mean[32], ratio[32];
    std::snprintf(mean, sizeof mean, "%.1f", row.alice_peak_mean);
    std::snprintf(ratio, sizeof ratio, "%.3f", row.per_log_cubed);
    os << std::setw(8) << row.n << std::setw(7) << row.log2_n << std::setw(5)
       << row.k << std::setw(16) << row.alice_peak_max << std::setw(17)
       << mean << std::setw(15) << ratio << std::setw(17)
       << row.mirror_peak_max << std::setw(14) << row.mirror_bound << "\n";
  }
  return os.str();
}

std::string twobin_row(const TwoBinConfig& config, const TwoBinResult& result,
                       ReportFormat format) {
  const char* variant =
      config.variant == TwoBinVariant::AliceStarts ? "alice" : "bob";
  if (format == ReportFormat::Csv) {
    std::ostringstream os;
    os << "m,t,variant,trials,event_count,estimate,exact,margin\n";
    os << config.m << ',' << config.t << ',' << variant << ','
       << result.trials << ',' << result.event_count << ','
       << fmt_double(result.estimate) << ','
       << (result.exact ? result.exact->str() : std::string()) << ','
       << fmt_double(result.confidence_halfwidth) << '\n';
    return os.str();
  }
  ordered_json j;
  j["m"] = config.m;
  j["t"] = config.t;
  j["variant"] = variant;
  j["trials"] = result.trials;
  j["event_count"] = result.event_count;
  j["estimate"] = result.estimate;
  if (result.exact) j["exact"] = result.exact->str();
  j["confidence_halfwidth"] = result.confidence_halfwidth;
  return j.dump(2) + "\n";
}

int interactive_repl(std::uint32_t n_value, double c, std::uint64_t seed,
                     std::istream& in, std::ostream& out) {
  Rng oracle_rng = make_rng(mix_seed(seed, 0));
  const MatchingList oracle = MatchingList::generate(n_value, oracle_rng);
  GameConfig game_config;
  game_config.n = n_value;
  game_config.c = c;
  game_config.master_seed = seed;
  GameState state = new_game(game_config);
  AlicePartition alice(oracle, n_value, c);
  const num total = 2 * n_value;

  out << "mirror game on [1, " << total
      << "]: repeating a declared number loses, declaring everything is a "
         "tie.\n";
  out << "you play bob. enter a number, 'show' for the declared set, or "
         "'quit'.\n";

  const num first = alice.first_declaration();
  state.apply_declaration(Player::Alice, first);
  out << "alice declares " << first << "\n";

  const auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  };

  std::string line;
  while (state.outcome() == Outcome::Ongoing) {
    out << "bob> " << std::flush;
    if (!std::getline(in, line)) {
      out << "\n(input closed before the game ended)\n";
      return 1;
    }
    const std::string word = trim(line);
    if (word == "quit") {
      out << "goodbye\n";
      return 0;
    }
    if (word == "show") {
      out << "declared:";
      for (const num x : state.declared_sorted()) out << ' ' << x;
      out << "\n";
      continue;
    }
    if (word.empty() || word.size() > 9 ||
        word.find_first_not_of("0123456789") != std::string::npos) {
      out << "enter a number in [1, " << total << "], 'show', or 'quit'\n";
      continue;
    }
    const num x = static_cast<num>(std::stoul(word));
    if (x < 1 || x > total) {
      out << "enter a number in [1, " << total << "], 'show', or 'quit'\n";
      continue;
    }
    if (state.is_declared(x)) {
      state.apply_declaration(Player::Bob, x);
      out << "you lose: repeated declaration\n";
      break;
    }
    state.apply_declaration(Player::Bob, x);
    if (state.outcome() != Outcome::Ongoing) break;

    const auto reply = alice.respond(x);
    if (!reply) {
      state.abort_alice();
      out << "alice cannot continue and aborts; you win\n";
      break;
    }
    state.apply_declaration(Player::Alice, *reply);
    out << "alice declares " << *reply << "\n";
  }

  switch (state.outcome()) {
    case Outcome::Tie:
      out << "game over: tie, every number was declared\n";
      break;
    case Outcome::AliceWins:
      out << "game over: alice wins\n";
      break;
    case Outcome::BobWins:
      out << "game over: bob wins\n";
      break;
    case Outcome::Ongoing:
      break;
  }
  out << "OUTCOME " << to_string(state.outcome())
      << (state.abort_flag() ? " abort" : "") << "\n";
  return 0;
}

}  // namespace mirror
