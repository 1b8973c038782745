#pragma once

#include <cstdint>

namespace mod1 {

/// Counter-based splitmix64 stream. Output i of a stream seeded with s is
/// mix64(s + (i+1) * 0x9E3779B97F4A7C15), so a stream is a pure function of
/// (seed, counter) and identical on every platform. Doubles take the top 53
/// bits; gaussians use Box-Muller on two uniforms. No global state anywhere.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double next_unit();
  /// Uniform on [lo, hi).
  double next_uniform(double lo, double hi);
  /// N(0, sigma^2).
  double next_gaussian(double sigma);

  /// Stateless finalizer used for per-trial seed derivation:
  /// derive(base, stream) = mix64(base ^ mix64(stream + 1)).
  static std::uint64_t derive(std::uint64_t base, std::uint64_t stream);
  static std::uint64_t mix64(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace mod1
