#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mixsynth {

// FNV-1a over the label bytes followed by the seed bytes. Used to derive
// independent per-module seeds from one top-level seed.
std::uint64_t derive_seed(std::string_view label, std::uint64_t seed);

// One step of SplitMix64.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic randomness helper. std::mt19937_64 output is fully specified
// by the standard, so streams are identical across platforms. We deliberately
// avoid std::uniform_real_distribution / std::normal_distribution, whose
// bit-level behaviour is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via polar Box-Muller.
  double normal();

  // Index in [0, n). Floor of uniform()*n; the modulo-free mapping keeps the
  // stream reproducible, the O(2^-53) bias is irrelevant at our sample sizes.
  std::size_t index(std::size_t n) {
    auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace mixsynth
