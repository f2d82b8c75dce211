#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hdx {

/// Seeded generator with platform-independent draws. The standard
/// distributions are implementation-defined, so bounded integers and
/// uniforms are derived from the raw 64-bit stream here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Per-stage seed: the stage name is hashed (FNV-1a) into the master stream.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace hdx
