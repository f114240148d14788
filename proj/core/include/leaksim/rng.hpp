#pragma once

#include <cstdint>
#include <random>

namespace leaksim {

/// Deterministic random stream. All randomness in an experiment flows from a
/// single 64-bit seed; concurrent tasks use streams derived via derive().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1), built from the top 53 bits of the generator so
  /// the mapping is identical across standard library implementations.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Stream seed for task `index` of a run seeded with `base` (splitmix64).
  static std::uint64_t derive(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace leaksim
