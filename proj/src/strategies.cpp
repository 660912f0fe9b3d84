#include "mirror/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>

namespace mirror {

std::uint32_t ceil_log2(std::uint64_t v) {
  if (v <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(v - 1));
}

std::uint32_t bits_for_number(std::uint32_t n_value) {
  return ceil_log2(2ull * n_value + 1);
}

std::uint32_t bits_for_counter(std::uint32_t n_value) {
  return bits_for_number(n_value);
}

std::uint32_t bits_for_residue(std::uint64_t p) { return ceil_log2(p); }

std::uint32_t partition_of_pair(std::uint32_t q) {
  if (q < 1) throw OutOfRange("pair index must be positive");
  if (q <= 2) return 1;
  return static_cast<std::uint32_t>(std::bit_width(q - 1));
}

std::pair<std::uint32_t, std::uint32_t> partition_pair_range(std::uint32_t i) {
  if (i < 1) throw OutOfRange("partition index must be positive");
  if (i == 1) return {1, 2};
  return {(1u << (i - 1)) + 1, 1u << i};
}

namespace {

bool is_pow2(std::uint32_t v) { return v >= 1 && (v & (v - 1)) == 0; }

// Lazy view of the numbers covered by a contiguous pair range. Iterating
// it issues oracle queries instead of materializing the members, so
// recovery scans cost no metered workspace beyond a pair index.
class PartitionMembers {
 public:
  class iterator {
   public:
    using value_type = num;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(const MatchingList* list, std::uint32_t q, std::uint32_t half)
        : list_(list), q_(q), half_(half) {}

    num operator*() const {
      const auto pr = list_->pair(q_);
      return half_ == 0 ? pr.first : pr.second;
    }
    iterator& operator++() {
      if (half_ == 0) {
        half_ = 1;
      } else {
        half_ = 0;
        ++q_;
      }
      return *this;
    }
    iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    bool operator==(const iterator&) const = default;

   private:
    const MatchingList* list_ = nullptr;
    std::uint32_t q_ = 0, half_ = 0;
  };

  PartitionMembers(const MatchingList& list, std::uint32_t first_pair,
                   std::uint32_t last_pair)
      : list_(&list), first_(first_pair), last_(last_pair) {}

  iterator begin() const { return iterator(list_, first_, 0); }
  iterator end() const { return iterator(list_, last_ + 1, 0); }

 private:
  const MatchingList* list_;
  std::uint32_t first_, last_;
};

}  // namespace

std::uint32_t PartitionTracker::declared_count() const {
  if (mode_ == Mode::Explicit) {
    return size() - static_cast<std::uint32_t>(undeclared_.size());
  }
  return online_->count();
}

const std::vector<num>& PartitionTracker::undeclared() const {
  if (mode_ != Mode::Explicit) {
    throw ProtocolError("tracker holds sketches, not an explicit set");
  }
  return undeclared_;
}

std::uint64_t PartitionTracker::metered_bits(std::uint32_t number_bits) const {
  std::uint64_t bits = 1;  // mode flag
  if (mode_ == Mode::Explicit) {
    bits += undeclared_.size() * static_cast<std::uint64_t>(number_bits);
  } else {
    bits += offline_->metered_bits() + online_->metered_bits();
  }
  return bits;
}

AlicePartition::AlicePartition(const MatchingList& oracle,
                               std::uint32_t n_value, double c)
    : oracle_(&oracle), n_value_(n_value) {
  if (!is_pow2(n_value) || n_value < 2) {
    throw InvalidConfig("the partition strategy needs N a power of two, >= 2");
  }
  if (!(c > 0.0)) throw InvalidConfig("c must be positive");
  if (oracle.size() != n_value) {
    throw InvalidConfig("oracle size does not match N");
  }
  part_count_ = static_cast<std::uint32_t>(std::bit_width(n_value)) - 1;
  k_ = static_cast<std::uint32_t>(std::ceil(c * part_count_));
  if (k_ < 1) k_ = 1;
  p_ = select_prime(n_value);
  number_bits_ = bits_for_number(n_value);

  trackers_.reserve(part_count_);
  for (std::uint32_t i = 1; i <= part_count_; ++i) {
    PartitionTracker t;
    t.index_ = i;
    const auto [lo, hi] = partition_pair_range(i);
    t.first_pair_ = lo;
    t.last_pair_ = hi;
    if ((1ull << i) <= k_) {
      t.mode_ = PartitionTracker::Mode::Explicit;
      t.undeclared_.reserve(t.size());
      for (num x : PartitionMembers(oracle, lo, hi)) t.undeclared_.push_back(x);
      std::sort(t.undeclared_.begin(), t.undeclared_.end());
    } else {
      t.mode_ = PartitionTracker::Mode::Sketched;
      const SketchParams params{n_value, t.size(), k_, p_};
      PowerSumSketch offline(params);
      for (num x : PartitionMembers(oracle, lo, hi)) offline.update(x);
      t.offline_ = std::move(offline);
      t.online_ = PowerSumSketch(params);
    }
    trackers_.push_back(std::move(t));
  }

  first_ = oracle.pair(1).first;
  open_g_ = first_;
  open_partner_ = oracle.partner(first_);
  absorb(first_);
  note_peak();
}

const PartitionTracker& AlicePartition::tracker(std::uint32_t i) const {
  if (i < 1 || i > trackers_.size()) {
    throw OutOfRange("partition index outside [1, n]");
  }
  return trackers_[i - 1];
}

void AlicePartition::absorb(num x) {
  PartitionTracker& t = trackers_[partition_of_pair(oracle_->locate(x)) - 1];
  if (t.mode_ == PartitionTracker::Mode::Explicit) {
    const auto it =
        std::lower_bound(t.undeclared_.begin(), t.undeclared_.end(), x);
    if (it == t.undeclared_.end() || *it != x) {
      throw ProtocolError("declaration was not tracked as undeclared");
    }
    t.undeclared_.erase(it);
  } else {
    t.online_->update(x);
    // Once at most k members remain undeclared the sketch pair is
    // decodable; switch to the explicit set right away (and permanently).
    if (t.undeclared_count() <= k_) convert_to_explicit(t);
  }
}

void AlicePartition::convert_to_explicit(PartitionTracker& t) {
  const std::uint32_t missing = t.undeclared_count();
  std::vector<num> roots =
      recover_newton(*t.offline_, *t.online_,
                     PartitionMembers(*oracle_, t.first_pair_, t.last_pair_));
  // Transient peak: both sketches, the polynomial coefficients, and the
  // recovered set coexist until the switch below.
  note_peak(roots.size() * static_cast<std::uint64_t>(number_bits_) +
            (missing + 1ull) * bits_for_residue(p_));
  t.mode_ = PartitionTracker::Mode::Explicit;
  t.undeclared_ = std::move(roots);
  t.offline_.reset();
  t.online_.reset();
}

std::optional<num> AlicePartition::generate() {
  for (PartitionTracker& t : trackers_) {
    if (t.exhausted()) continue;
    if (t.mode_ == PartitionTracker::Mode::Sketched) {
      if (t.undeclared_count() > k_) return std::nullopt;
      convert_to_explicit(t);  // on-demand fallback; absorb() normally preempts
    }
    return t.undeclared_.front();
  }
  throw ProtocolError("no undeclared number remains; the game should be over");
}

std::optional<num> AlicePartition::respond(num bob_number) {
  if (aborted_) throw ProtocolError("strategy already aborted");
  if (bob_number < 1 || bob_number > 2 * n_value_) {
    throw OutOfRange("number outside [1, 2N]");
  }
  absorb(bob_number);
  num reply;
  if (bob_number == open_partner_) {
    // Bob closed the open pair; produce a fresh number from the smallest
    // partition that still has undeclared members.
    const auto g = generate();
    if (!g) {
      aborted_ = true;
      note_peak();
      return std::nullopt;
    }
    reply = *g;
    open_g_ = reply;
    open_partner_ = oracle_->partner(reply);
  } else {
    reply = oracle_->partner(bob_number);
  }
  absorb(reply);
  note_peak();
  return reply;
}

std::uint64_t AlicePartition::metered_bits() const {
  std::uint64_t bits = 2ull * number_bits_ + 1;  // open pair + abort flag
  for (const PartitionTracker& t : trackers_) {
    bits += t.metered_bits(number_bits_);
  }
  return bits;
}

void AlicePartition::note_peak(std::uint64_t transient_extra) {
  peak_bits_ = std::max(peak_bits_, metered_bits() + transient_extra);
}

num reflect(num x, std::uint32_t n_value) {
  if (x < 1 || x > 2 * n_value) throw OutOfRange("number outside [1, 2N]");
  return 2 * n_value + 1 - x;
}

num bob_mirror_move(num last_alice_number,
                    const std::function<num(num)>& matching) {
  return matching(last_alice_number);
}

MirrorBob::MirrorBob(std::uint32_t n_value)
    : MirrorBob(n_value, [n_value](num x) { return reflect(x, n_value); }) {}

MirrorBob::MirrorBob(std::uint32_t n_value, std::function<num(num)> matching)
    : n_value_(n_value), matching_(std::move(matching)) {}

void MirrorBob::observe_alice(num x) {
  if (x < 1 || x > 2 * n_value_) throw OutOfRange("number outside [1, 2N]");
  last_ = x;
  peak_bits_ = std::max<std::uint64_t>(peak_bits_, bits_for_number(n_value_));
}

num MirrorBob::move() {
  if (!last_) throw ProtocolError("nothing to mirror yet");
  // While the reply is computed the stored number and the reply coexist.
  peak_bits_ =
      std::max<std::uint64_t>(peak_bits_, 2ull * bits_for_number(n_value_));
  return bob_mirror_move(*last_, matching_);
}

std::uint64_t MirrorBob::metered_bits() const {
  return last_ ? bits_for_number(n_value_) : 0;
}

num bob_uniform_move(const GameState& state, Rng& rng) {
  const std::uint32_t total = state.universe();
  const std::uint32_t undeclared = total - state.declared_count();
  if (undeclared == 0) throw Exhausted("every number is declared");
  std::uniform_int_distribution<std::uint32_t> d(0, undeclared - 1);
  std::uint32_t rank = d(rng);
  for (num x = 1; x <= total; ++x) {
    if (!state.is_declared(x)) {
      if (rank == 0) return x;
      --rank;
    }
  }
  throw ProtocolError("undeclared count out of sync");
}

UndeclaredIndex::UndeclaredIndex(std::uint32_t n_value)
    : universe_(2 * n_value), remaining_(2 * n_value), tree_(universe_ + 1) {
  if (n_value < 1) throw InvalidConfig("N must be at least 1");
  // All positions start undeclared; node i covers i & -i positions.
  for (std::uint32_t i = 1; i <= universe_; ++i) tree_[i] = i & (~i + 1);
}

void UndeclaredIndex::mark_declared(num x) {
  if (x < 1 || x > universe_) throw OutOfRange("number outside [1, 2N]");
  for (std::uint32_t i = x; i <= universe_; i += i & (~i + 1)) tree_[i] -= 1;
  --remaining_;
}

num UndeclaredIndex::select(std::uint32_t rank) const {
  if (rank >= remaining_) throw OutOfRange("rank beyond undeclared count");
  std::uint32_t pos = 0;
  std::uint32_t want = rank + 1;
  for (std::uint32_t step = std::bit_floor(universe_); step > 0; step >>= 1) {
    const std::uint32_t next = pos + step;
    if (next <= universe_ && tree_[next] < want) {
      want -= tree_[next];
      pos = next;
    }
  }
  return pos + 1;
}

UniformBob::UniformBob(std::uint32_t n_value)
    : n_value_(n_value), index_(n_value) {}

void UniformBob::on_declared(num x) { index_.mark_declared(x); }

num UniformBob::move(Rng& rng) {
  const std::uint32_t undeclared = index_.undeclared_count();
  if (undeclared == 0) throw Exhausted("every number is declared");
  std::uniform_int_distribution<std::uint32_t> d(0, undeclared - 1);
  return index_.select(d(rng));
}

std::uint64_t UniformBob::peak_metered_bits() const {
  return bits_for_number(n_value_);  // the declaration value in flight
}

num bob_peeking_move(const MatchingList& oracle, const GameState& state,
                     num alice_open_number) {
  const std::uint32_t n_pairs = oracle.size();
  if (!is_pow2(n_pairs)) {
    throw InvalidConfig("the peeking control assumes N a power of two");
  }
  const std::uint32_t n_log =
      static_cast<std::uint32_t>(std::bit_width(n_pairs)) - 1;
  // Pairs of every partition before the last one; empty for N = 2.
  const std::uint32_t low_last = n_log >= 2 ? n_pairs / 2 : 0;
  const num partner_g = oracle.partner(alice_open_number);

  num high_pick = 0;
  for (num x = 1; x <= 2 * n_pairs; ++x) {
    if (state.is_declared(x)) continue;
    if (oracle.locate(x) <= low_last) {
      if (x != partner_g) return x;  // smallest low number keeping the pair open
    } else if (high_pick == 0) {
      high_pick = x;
    }
  }
  if (!state.is_declared(partner_g) && oracle.locate(partner_g) <= low_last) {
    return partner_g;  // the low block is down to the open partner
  }
  if (high_pick != 0) return high_pick;
  throw Exhausted("every number is declared");
}

bool is_known_bob(const std::string& name) {
  return name == kBobMirror || name == kBobUniform || name == kBobPeeking;
}

}  // namespace mirror
