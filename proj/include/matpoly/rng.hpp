#pragma once

#include <cstdint>
#include <random>

namespace matpoly {

std::uint64_t splitmix64(std::uint64_t x);

/// Seeded generator with independent substreams keyed by (seed, stream).
/// Gaussian and uniform draws are computed here rather than through the
/// <random> distributions so that sequences agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace matpoly
