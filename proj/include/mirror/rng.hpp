#pragma once

#include <cstdint>
#include <random>

namespace mirror {

using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele/Lea/Flood gamma and mixing constants).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Stretches one master seed into independent substreams: substream `index`
// is seeded with mix_seed(master, index). Trial results therefore depend
// only on (master, index), never on scheduling or worker count.
constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + 0x9E3779B97F4A7C15ull * (index + 1));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace mirror
