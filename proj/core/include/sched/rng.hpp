#pragma once

#include <cstdint>

namespace sched::rng {

/// SplitMix64 finalizer. Bijective on 64-bit words, good avalanche.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based hash of (seed, stream, counter). Every draw in the library
/// comes from one of these, so any realization is random-access: querying
/// round k never requires generating rounds 0..k-1.
constexpr std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) noexcept {
  return mix(mix(mix(seed) ^ stream) ^ counter);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) noexcept {
  return mix(mix(master) ^ tag);
}

/// Map 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Uniform double in [0,1) from a counter-based draw.
constexpr double unit_at(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t counter) noexcept {
  return unit_double(hash3(seed, stream, counter));
}

/// Sequential generator for sampling loops (cost parameters, test inputs).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double unit() noexcept { return unit_double(next_u64()); }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [0, n-1]. n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept { return next_u64() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace sched::rng
