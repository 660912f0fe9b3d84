#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mirror/errors.hpp"
#include "mirror/harness.hpp"
#include "mirror/matching.hpp"
#include "mirror/strategies.hpp"
#include "mirror/two_bin.hpp"

namespace {

mirror::ReportFormat parse_format(const std::string& name) {
  if (name == "json") return mirror::ReportFormat::Json;
  if (name == "csv") return mirror::ReportFormat::Csv;
  throw mirror::InvalidConfig("format must be json or csv");
}

mirror::TwoBinVariant parse_variant(const std::string& name) {
  if (name == "alice") return mirror::TwoBinVariant::AliceStarts;
  if (name == "bob") return mirror::TwoBinVariant::BobStarts;
  throw mirror::InvalidConfig("variant must be alice or bob");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw mirror::IoError("cannot open " + out_path + " for writing");
  os << text;
  if (!os) throw mirror::IoError("write to " + out_path + " failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memory-metered mirror game simulator"};
  app.require_subcommand(1);

  // play
  auto* play = app.add_subcommand(
      "play", "one game of alice-partition against a bob strategy");
  std::uint32_t play_n = 0;
  std::string play_bob;
  double play_c = 2.0;
  std::uint64_t play_seed = 0;
  bool play_interactive = false;
  play->add_option("--n", play_n, "pairs per game; power of two, >= 2")
      ->required();
  play->add_option("--bob", play_bob,
                   "bob-mirror | bob-uniform | bob-peeking");
  play->add_option("--c", play_c, "memory constant, k = ceil(c log2 N)");
  play->add_option("--seed", play_seed, "master seed");
  play->add_flag("--interactive", play_interactive,
                 "you play bob on the terminal");

  // mc
  auto* mc = app.add_subcommand(
      "mc", "monte carlo campaign over a list of sizes");
  std::vector<std::uint32_t> mc_n;
  std::uint64_t mc_trials = 0;
  std::string mc_bob;
  double mc_c = 2.0;
  std::uint64_t mc_seed = 0;
  std::string mc_out;
  std::string mc_format = "json";
  unsigned mc_workers = 1;
  mc->add_option("--n", mc_n, "comma-separated sizes, e.g. 16,64,256")
      ->required()
      ->delimiter(',');
  mc->add_option("--trials", mc_trials, "games per size")->required();
  mc->add_option("--bob", mc_bob, "bob-mirror | bob-uniform | bob-peeking")
      ->required();
  mc->add_option("--c", mc_c, "memory constant");
  mc->add_option("--seed", mc_seed, "master seed");
  mc->add_option("--out", mc_out, "output path (default: stdout)");
  mc->add_option("--format", mc_format, "json | csv");
  mc->add_option("--workers", mc_workers, "worker threads");

  // memory
  auto* memory = app.add_subcommand(
      "memory", "peak metered bits per strategy and size");
  std::vector<std::uint32_t> mem_n;
  std::uint64_t mem_trials = 50;
  double mem_c = 2.0;
  std::uint64_t mem_seed = 0;
  memory->add_option("--n", mem_n, "comma-separated sizes")
      ->required()
      ->delimiter(',');
  memory->add_option("--trials", mem_trials, "games per size");
  memory->add_option("--c", mem_c, "memory constant");
  memory->add_option("--seed", mem_seed, "master seed");

  // twobin
  auto* twobin = app.add_subcommand(
      "twobin", "two-bin removal process: simulation and exact values");
  std::uint32_t tb_m = 0;
  std::uint32_t tb_t = 0;
  std::string tb_variant = "bob";
  std::uint64_t tb_trials = 100000;
  std::uint64_t tb_seed = 0;
  bool tb_exact = false;
  bool tb_enumerate = false;
  std::string tb_format = "json";
  twobin->add_option("--m", tb_m, "balls per bin")->required();
  twobin->add_option("--t", tb_t, "threshold, 0 <= t < 2m")->required();
  twobin->add_option("--variant", tb_variant, "alice | bob (who removes first)");
  twobin->add_option("--trials", tb_trials, "simulation trials");
  twobin->add_option("--seed", tb_seed, "simulation seed");
  twobin->add_flag("--exact", tb_exact,
                   "closed-form tail value (bob variant, even m)");
  twobin->add_flag("--enumerate", tb_enumerate,
                   "exact value by process-tree enumeration (m <= 6)");
  twobin->add_option("--format", tb_format, "json | csv");

  // decode
  auto* decode = app.add_subcommand(
      "decode", "turn a random bit string into a matching list");
  std::string dec_bits;
  std::uint32_t dec_n = 0;
  decode->add_option("--bits", dec_bits, "file of raw bytes, bits consumed "
                     "most significant first")
      ->required();
  decode->add_option("--n", dec_n, "pairs to decode; power of two")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (play->parsed()) {
      if (play_interactive) {
        return mirror::interactive_repl(play_n, play_c, play_seed, std::cin,
                                        std::cout);
      }
      if (play_bob.empty()) {
        throw mirror::InvalidConfig("--bob is required without --interactive");
      }
      const mirror::GameTranscript transcript = mirror::play_match(
          mirror::kAlicePartition, play_bob, play_n, play_c, play_seed);
      std::cout << transcript.to_text();
      return 0;
    }

    if (mc->parsed()) {
      mirror::CampaignConfig config;
      config.n_values = mc_n;
      config.c = mc_c;
      config.bob = mc_bob;
      config.trials = mc_trials;
      config.master_seed = mc_seed;
      config.workers = mc_workers;
      config.format = parse_format(mc_format);
      const mirror::StatsReport report = mirror::run_montecarlo(config);
      emit(config.format == mirror::ReportFormat::Json ? mirror::to_json(report)
                                                       : mirror::to_csv(report),
           mc_out);
      for (const mirror::NStats& st : report.per_n) {
        std::cerr << "n=" << st.n << " done in " << st.elapsed_seconds
                  << "s\n";
      }
      return 0;
    }

    if (memory->parsed()) {
      const mirror::MemoryReport report =
          mirror::measure_memory(mem_n, mem_c, mem_trials, mem_seed);
      std::cout << mirror::to_text(report);
      return 0;
    }

    if (twobin->parsed()) {
      mirror::TwoBinConfig config;
      config.m = tb_m;
      config.t = tb_t;
      config.variant = parse_variant(tb_variant);
      config.trials = tb_trials;
      config.seed = tb_seed;
      mirror::TwoBinResult result = mirror::simulate_two_bin(config);
      if (tb_enumerate) {
        result.exact = mirror::enumerate_prob(tb_m, tb_t, config.variant);
      } else if (tb_exact) {
        if (config.variant != mirror::TwoBinVariant::BobStarts || tb_m % 2) {
          throw mirror::InvalidParams(
              "--exact needs the bob variant and even m; use --enumerate");
        }
        result.exact = mirror::exact_tail_prob(tb_m / 2, tb_t / 2 + 1);
      }
      std::cout << mirror::twobin_row(config, result, parse_format(tb_format));
      return 0;
    }

    if (decode->parsed()) {
      const mirror::RandomBitString bits =
          mirror::RandomBitString::from_file(dec_bits);
      const mirror::MatchingList list =
          mirror::MatchingList::decode_random_string(bits, dec_n);
      list.save(std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
