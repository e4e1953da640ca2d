#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace workcell {

/// All randomness in the engine flows through these helpers so that runs are
/// reproducible bit-for-bit from a 64-bit seed. std::uniform_* distributions
/// are implementation-defined and must not be used anywhere.
uint64_t splitmix64(uint64_t& state);

/// Derive an independent stream seed from a base seed and a purpose tag.
uint64_t derive_seed(uint64_t base, std::string_view tag, uint64_t index = 0);

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  int uniform_int(int lo, int hi);

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace workcell
