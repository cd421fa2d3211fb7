#pragma once

#include <cstdint>

namespace bohreq {

/// 64-bit linear congruential generator, state' = a * state + c (mod 2^64),
/// with Knuth's MMIX constants. Used wherever a command draws random values,
/// so that a printed seed reproduces the run on any platform.
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }

  /// Uniform in [0, 1) with 53 random bits (the high bits of the state).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) from the high 32 bits; bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return (next() >> 32) % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace bohreq
