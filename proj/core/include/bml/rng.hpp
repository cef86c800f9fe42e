#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string_view>

namespace bml {

/// splitmix64 finalizer. Stateless bijection on 64-bit words; used both to
/// seed the trajectory generator and as the per-trial seed derivation.
constexpr std::uint64_t split_mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for trial `trial_index` of sweep point `point_index`:
///   split_mix(split_mix(split_mix(base) + point_index) + trial_index)
/// Pure function of its arguments, so trials can run in any order.
constexpr std::uint64_t derive_trial_seed(std::uint64_t base, std::uint64_t point_index,
                                          std::uint64_t trial_index) {
  return split_mix(split_mix(split_mix(base) + point_index) + trial_index);
}

/// xoshiro256** seeded through splitmix64. All sampling goes through next()
/// and bounded(), never through std::uniform_* distributions, so streams are
/// identical across standard libraries.
class Rng {
 public:
  static constexpr std::string_view name = "xoshiro256** (seeded via splitmix64)";

  explicit constexpr Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x = split_mix(x);
      word = x;
    }
  }

  constexpr std::uint64_t next() {
    const std::uint64_t result = std::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  /// Uniform value in [0, n). Bitmask rejection: unbiased for every n.
  constexpr std::uint64_t bounded(std::uint64_t n) {
    if (n <= 1) return 0;
    const int bits = std::bit_width(n - 1);
    const std::uint64_t mask = (bits >= 64) ? ~0ULL : ((1ULL << bits) - 1);
    std::uint64_t v = next() & mask;
    while (v >= n) v = next() & mask;
    return v;
  }

  /// Fair coin from the top output bit.
  constexpr bool coin() { return (next() >> 63) != 0; }

 private:
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace bml
