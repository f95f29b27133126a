#pragma once

#include <cstdint>

namespace physarum {

/// SplitMix64 (Steele, Lea & Flood). The stream is fully specified by the
/// 64-bit state, so any implementation reproduces it bit-exactly:
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// The output finalizer on its own; used for seed derivation.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform integer in [lo, hi] by rejection on the top of the 64-bit range
  /// (no modulo bias). Requires lo <= hi.
  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == max()) return static_cast<std::int64_t>((*this)());
    const std::uint64_t range = span + 1;
    // Largest multiple of range that fits; draws at or above it are rejected.
    const std::uint64_t limit = max() - (max() % range + 1) % range;
    std::uint64_t x = (*this)();
    while (x > limit) x = (*this)();
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform_real() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Seed for the index-th member of a family keyed by `key`, derived from a
/// master seed: mix(mix(master + key) + index). Independent of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t key,
                                    std::uint64_t index) noexcept {
  return SplitMix64::mix(SplitMix64::mix(master + key) + index);
}

}  // namespace physarum
