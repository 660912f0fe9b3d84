#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mirror/game.hpp"
#include "mirror/two_bin.hpp"

namespace mirror {

enum class ReportFormat { Json, Csv };

// Plays one full game of alice-partition against the named Bob strategy.
// The seed derives both the oracle and any Bob randomness. Throws
// InvalidConfig for an unknown strategy name or an N the Alice strategy
// cannot play (not a power of two, or below 2).
GameTranscript play_match(const std::string& alice_name,
                          const std::string& bob_name, std::uint32_t n_value,
                          double c, std::uint64_t seed);

struct CampaignConfig {
  std::vector<std::uint32_t> n_values;  // each a power of two >= 2
  double c = 2.0;
  std::string bob;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  ReportFormat format = ReportFormat::Json;
};

struct NStats {
  std::uint32_t n = 0;
  std::uint32_t log2_n = 0;
  std::uint32_t k = 0;
  std::uint64_t trials = 0;
  std::uint64_t ties = 0;
  std::uint64_t alice_wins = 0;
  std::uint64_t bob_wins = 0;
  std::uint64_t aborts = 0;
  double tie_rate = 0.0;
  double abort_rate = 0.0;
  double tie_target = 0.0;             // 1 - 1/N
  double predicted_abort_bound = 0.0;  // exact two-bin tail union bound
  std::uint64_t peak_alice_bits_max = 0;
  double peak_alice_bits_mean = 0.0;
  std::uint64_t peak_bob_bits_max = 0;
  double elapsed_seconds = 0.0;  // console diagnostics only, never serialized
};

struct StatsReport {
  CampaignConfig config;
  std::vector<NStats> per_n;
};

// Runs trials x |n_values| games on a worker pool. Trial i of a given N
// is seeded with mix_seed(master_seed, i), so the report is byte-identical
// for any worker count. Throws InvalidConfig for empty n_values, zero
// trials, an unknown Bob, or an invalid N.
StatsReport run_montecarlo(const CampaignConfig& config);

// Serialized reports deliberately omit wall-clock times and worker count
// so identical configs produce identical bytes.
std::string to_json(const StatsReport& report);
std::string to_csv(const StatsReport& report);

struct MemoryRow {
  std::uint32_t n = 0;
  std::uint32_t log2_n = 0;
  std::uint32_t k = 0;
  std::uint64_t alice_peak_max = 0;   // vs bob-uniform
  double alice_peak_mean = 0.0;
  double per_log_cubed = 0.0;         // alice_peak_max / (log2 N)^3
  std::uint64_t mirror_peak_max = 0;  // mirror Bob peak, vs alice-partition
  std::uint64_t mirror_bound = 0;     // 2 * ceil(log2(2N+1))
};

struct MemoryReport {
  double c = 2.0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<MemoryRow> rows;
};

// Peak metered bits per size: Alice against bob-uniform and mirror Bob
// against Alice, `trials` games each. Throws InvalidConfig for an empty
// size list, zero trials, or an invalid N.
MemoryReport measure_memory(const std::vector<std::uint32_t>& n_values,
                            double c, std::uint64_t trials,
                            std::uint64_t master_seed);

std::string to_text(const MemoryReport& report);

// One row of twobin output.
std::string twobin_row(const TwoBinConfig& config, const TwoBinResult& result,
                       ReportFormat format);

// Terminal game: the human plays Bob against alice-partition. Accepts a
// number, "show" (list declared numbers) or "quit" per prompt; out-of-range
// or unparseable input re-prompts, a repeated declaration loses on the
// spot. Returns the process exit status (0 on a completed or quit game).
int interactive_repl(std::uint32_t n_value, double c, std::uint64_t seed,
                     std::istream& in, std::ostream& out);

}  // namespace mirror
