#pragma once

#include <cstdint>
#include <random>

namespace repan {

/// Derives the seed of an independent substream from (seed, index) by a
/// SplitMix64 hash, so a stream's draws depend only on its counter and not
/// on any other stream having run first.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic generator with portable output mappings. The raw
/// mt19937_64 sequence is fully specified by the standard and every mapping
/// below is spelled out by hand, so a (seed, call sequence) pair produces
/// identical values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double next_unit_positive() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform on {0, ..., n-1}, unbiased by rejection.
  std::uint64_t next_below(std::uint64_t n);

  /// Standard normal via the Marsaglia polar method (second value cached).
  double next_gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace repan
