#pragma once

#include <cstdint>
#include <random>

namespace qbc {

/// Seeded generator for every stochastic step in the simulator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Distributions are derived here from raw 64-bit words rather than
/// through <random> distribution classes, whose algorithms vary between
/// standard library implementations, so a seed reproduces the same stream on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Fair coin from the top bit of one word.
  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (seed, stream): independent sub-seeds for the
/// separate random streams of one run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qbc
