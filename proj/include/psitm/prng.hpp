#ifndef PSITM_PRNG_HPP
#define PSITM_PRNG_HPP

#include <cstdint>

namespace psitm {

/// 64-bit linear congruential generator with fixed published constants
/// (Knuth's MMIX multiplier/increment). Instance generation depends only on
/// the seed, never on platform randomness, so every run is replayable.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }

  /// Uniform-ish draw in [0, bound) using the high 32 state bits.
  std::uint64_t next_below(std::uint64_t bound) {
    return (next() >> 32) % bound;
  }

  bool next_bit() { return (next() >> 63) != 0; }

  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;
  static constexpr std::uint64_t kDefaultSeed = 1337;

 private:
  std::uint64_t state_;
};

}  // namespace psitm

#endif
