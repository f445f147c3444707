#pragma once

#include <cstddef>
#include <cstdint>

namespace gridres::rng {

inline constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 avalanche step. Used both as the generator update and to derive
// episode / substream seeds, so results are independent of scheduling order.
inline constexpr uint64_t mix64(uint64_t x) {
  x += kGamma;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Fixed substream tags. Each episode owns three independent streams
// (failure sampling, repair-time draws, flood increments); generators and
// fixtures use their own tags.
inline constexpr uint64_t kTagFailure = 0x8F1D73A2C96B5E41ull;
inline constexpr uint64_t kTagRepair = 0x41C64E6DA3BC0074ull;
inline constexpr uint64_t kTagFlood = 0x6A09E667F3BCC909ull;
inline constexpr uint64_t kTagSynth = 0xB5297A4D3C833EA5ull;
inline constexpr uint64_t kTagFixture = 0x1F83D9ABFB41BD6Bull;
inline constexpr uint64_t kTagObserved = 0x452821E638D01377ull;

inline constexpr uint64_t episode_seed(uint64_t base_seed, uint64_t episode_index) {
  return mix64(base_seed ^ episode_index);
}

inline constexpr uint64_t substream_seed(uint64_t seed, uint64_t tag) {
  return mix64(seed ^ tag);
}

// SplitMix64 uniform stream. Distributions are implemented directly instead
// of through <random> so sequences are bit-identical across platforms and
// standard-library versions.
class Stream {
 public:
  explicit Stream(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() { return mix64(state_ += kGamma); }

  // Uniform in [0,1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_unit(); }

  std::size_t uniform_index(std::size_t n) {
    const auto i = static_cast<std::size_t>(next_unit() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  uint64_t state_;
};

}  // namespace gridres::rng
