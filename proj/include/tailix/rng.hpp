#pragma once

#include <cstdint>
#include <random>

namespace tailix {

/// SplitMix64 finalizer. Constants are pinned; changing them changes every
/// simulated number.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of replicate `index` in an experiment seeded with `base_seed`.
constexpr std::uint64_t replicate_seed(std::uint64_t base_seed,
                                       std::uint64_t index) noexcept {
  return splitmix64(base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Uniform variates on the open interval (0, 1).
///
/// Engine is std::mt19937_64 seeded with splitmix64(seed); a draw maps the top
/// 53 bits b to (b + 0.5) * 2^-53, so 0 and 1 are never produced.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double operator()() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tailix
