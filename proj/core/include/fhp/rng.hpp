#pragma once

#include <cstdint>

// Counter-based randomness: every decision is a pure function of
// (seed, purpose, step, x, y), never of thread id, lane index or tile id,
// so all backends produce bit-identical simulations.

namespace fhp::rng {

enum class Purpose : std::uint64_t { Init = 0, Forcing = 1, Chirality = 2 };

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += kGoldenGamma;
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t node_random(std::uint64_t seed, Purpose purpose,
                                    std::uint64_t step, std::uint64_t x,
                                    std::uint64_t y) noexcept {
  std::uint64_t z = seed + kGoldenGamma * static_cast<std::uint64_t>(purpose);
  z = mix64(z);
  z = mix64(z + step);
  z = mix64(z + x);
  return mix64(z + y);
}

// True with probability p, judged on the upper 32 bits of `word`.
// p=1 maps to threshold 2^32 so acceptance is unconditional.
constexpr bool bernoulli(std::uint64_t word, double p) noexcept {
  const std::uint64_t threshold =
      p >= 1.0 ? (1ull << 32)
               : static_cast<std::uint64_t>(p * 4294967296.0);
  return (word >> 32) < threshold;
}

}  // namespace fhp::rng
