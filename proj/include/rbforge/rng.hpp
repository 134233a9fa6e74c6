#pragma once

#include <cstdint>

namespace rbforge {

/// splitmix64: tiny deterministic generator used for seeded sampling.
/// Output depends only on the seed, never on platform or thread count.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, n); n must be positive. The slight modulo
  /// bias is irrelevant here: samples only need to be deterministic.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Decorrelated stream for item `index` under a common seed, so that
  /// sample #i is the same no matter how work is split across workers.
  static SplitMix64 for_index(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return SplitMix64(mix.next());
  }

 private:
  std::uint64_t state_;
};

}  // namespace rbforge
