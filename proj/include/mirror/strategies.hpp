#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mirror/game.hpp"
#include "mirror/matching.hpp"
#include "mirror/missing.hpp"
#include "mirror/rng.hpp"

namespace mirror {

// --- memory accounting -----------------------------------------------------
//
// Canonical costs: a stored number or counter costs ceil(log2(2N+1)) bits,
// a stored residue ceil(log2 p) bits, a flag 1 bit. Oracle contents and
// oracle query answers cost nothing. Only strategy state is metered; the
// referee and the harness are unmetered bookkeeping.

std::uint32_t ceil_log2(std::uint64_t v);                // 0 for v <= 1
std::uint32_t bits_for_number(std::uint32_t n_value);    // ceil(log2(2N+1))
std::uint32_t bits_for_counter(std::uint32_t n_value);   // same cost as a number
std::uint32_t bits_for_residue(std::uint64_t p);         // ceil(log2 p)

// --- partitions -------------------------------------------------------------
//
// For N = 2^n the pair indices split into n blocks: partition 1 covers
// pairs 1..2 (four numbers), partition i >= 2 covers pairs 2^(i-1)+1..2^i
// (2^(i-1) pairs, 2^i numbers). Every partition i >= 2 covers exactly as
// many pairs as all earlier partitions together.

std::uint32_t partition_of_pair(std::uint32_t q);  // 1-based block index
std::pair<std::uint32_t, std::uint32_t> partition_pair_range(std::uint32_t i);

// Per-partition bookkeeping. A tracker either holds the undeclared members
// outright (Explicit) or holds two power-sum sketches (Sketched): an
// offline sketch of the full partition, frozen at init, and an online
// sketch absorbing every declaration that lands in the partition.
class PartitionTracker {
 public:
  enum class Mode { Explicit, Sketched };

  Mode mode() const { return mode_; }
  std::uint32_t index() const { return index_; }
  std::uint32_t first_pair() const { return first_pair_; }
  std::uint32_t last_pair() const { return last_pair_; }
  std::uint32_t size() const { return 2 * (last_pair_ - first_pair_ + 1); }
  std::uint32_t declared_count() const;
  std::uint32_t undeclared_count() const { return size() - declared_count(); }
  bool exhausted() const { return declared_count() == size(); }

  // Explicit mode only: undeclared members, sorted ascending.
  const std::vector<num>& undeclared() const;

  std::uint64_t metered_bits(std::uint32_t number_bits) const;

 private:
  friend class AlicePartition;
  std::uint32_t index_ = 0, first_pair_ = 0, last_pair_ = 0;
  Mode mode_ = Mode::Explicit;
  std::vector<num> undeclared_;                 // Explicit
  std::optional<PowerSumSketch> offline_;       // Sketched
  std::optional<PowerSumSketch> online_;        // Sketched
};

// Alice strategy with O((log N)^3) metered bits: one tracker per
// partition, the open generated number with its partner, and an abort
// flag. Small partitions (2^i <= k) are tracked explicitly; large ones are
// sketched with budget k = ceil(c * log2 N) and converted to explicit sets
// once at most k of their members remain undeclared.
//
// Protocol: construct (this already produces and absorbs the first
// declaration, the smaller member of pair 1), then alternate
// respond(bob_number) with the opponent's declarations. respond() mirrors
// the partner of bob_number unless Bob closed the open pair, in which case
// it generates the smallest undeclared number of the smallest
// non-exhausted partition. If that partition is sketched with more than k
// undeclared members, Alice aborts (respond returns nullopt) and the game
// is forfeited to Bob.
class AlicePartition {
 public:
  // Requires N a power of two, N >= 2, c > 0; throws InvalidConfig.
  // The oracle must outlive the strategy.
  AlicePartition(const MatchingList& oracle, std::uint32_t n_value, double c);

  num first_declaration() const { return first_; }

  // Feed Bob's (referee-validated) declaration; returns Alice's reply or
  // nullopt on abort. Throws ProtocolError after an abort, OutOfRange for
  // a value outside [1, 2N].
  std::optional<num> respond(num bob_number);

  bool aborted() const { return aborted_; }
  num open_number() const { return open_g_; }
  num open_partner() const { return open_partner_; }
  std::uint32_t budget() const { return k_; }       // k
  std::uint32_t partition_count() const { return part_count_; }  // n = log2 N
  const PartitionTracker& tracker(std::uint32_t i) const;        // 1-based

  std::uint64_t metered_bits() const;
  std::uint64_t peak_metered_bits() const { return peak_bits_; }

 private:
  void absorb(num x);
  void convert_to_explicit(PartitionTracker& t);
  std::optional<num> generate();
  void note_peak(std::uint64_t transient_extra = 0);

  const MatchingList* oracle_;
  std::uint32_t n_value_ = 0, part_count_ = 0, k_ = 0;
  std::uint64_t p_ = 0;
  std::uint32_t number_bits_ = 0;
  std::vector<PartitionTracker> trackers_;
  num first_ = 0, open_g_ = 0, open_partner_ = 0;
  bool aborted_ = false;
  std::uint64_t peak_bits_ = 0;
};

// --- Bob strategies ----------------------------------------------------------

// One mirror response: the partner of the opponent's last declaration
// under a fixed matching.
num bob_mirror_move(num last_alice_number,
                    const std::function<num(num)>& matching);

// The default fixed matching x <-> 2N+1-x.
num reflect(num x, std::uint32_t n_value);

// Mirror Bob: remembers only the last opposing declaration. Never repeats
// a declared number against any legal opponent, because after each of his
// moves every pair of his matching is either fully declared or fully
// undeclared.
class MirrorBob {
 public:
  explicit MirrorBob(std::uint32_t n_value);  // uses reflect()
  MirrorBob(std::uint32_t n_value, std::function<num(num)> matching);

  void observe_alice(num x);  // stores x
  num move();                 // partner of the stored number; ProtocolError if none

  std::uint64_t metered_bits() const;  // 0 when nothing stored
  std::uint64_t peak_metered_bits() const { return peak_bits_; }

 private:
  std::uint32_t n_value_;
  std::function<num(num)> matching_;
  std::optional<num> last_;
  std::uint64_t peak_bits_ = 0;
};

// Uniform draw over the undeclared numbers: picks rank r uniformly in
// [0, undeclared_count) and declares the r-th smallest undeclared number.
// Reference implementation, O(N) scan. Throws Exhausted when nothing is
// undeclared.
num bob_uniform_move(const GameState& state, Rng& rng);

// Order-statistics index over [1, 2N] (Fenwick tree). Referee-side helper
// for sampling undeclared numbers in O(log N).
class UndeclaredIndex {
 public:
  explicit UndeclaredIndex(std::uint32_t n_value);  // all 2N undeclared
  void mark_declared(num x);
  std::uint32_t undeclared_count() const { return remaining_; }
  num select(std::uint32_t rank) const;  // rank-th smallest undeclared, 0-based

 private:
  std::uint32_t universe_;
  std::uint32_t remaining_;
  std::vector<std::uint32_t> tree_;
};

// Incremental uniform Bob; draws exactly the same sequence as
// bob_uniform_move given the same rng stream.
class UniformBob {
 public:
  explicit UniformBob(std::uint32_t n_value);
  void on_declared(num x);  // notify for every declaration, both players
  num move(Rng& rng);

  std::uint64_t peak_metered_bits() const;  // transiently holds one number

 private:
  std::uint32_t n_value_;
  UndeclaredIndex index_;
};

// Adversarial control that reads Alice's open number: burns through the
// low partitions (everything before the last one) while avoiding the open
// partner, declares the partner only when it is the last low number left,
// then falls back to the last partition. Against the partition strategy
// this forces an abort whenever the last partition is sketched.
num bob_peeking_move(const MatchingList& oracle, const GameState& state,
                     num alice_open_number);

// --- strategy registry -------------------------------------------------------

inline constexpr const char* kAlicePartition = "alice-partition";
inline constexpr const char* kBobMirror = "bob-mirror";
inline constexpr const char* kBobUniform = "bob-uniform";
inline constexpr const char* kBobPeeking = "bob-peeking";

bool is_known_bob(const std::string& name);

}  // namespace mirror
