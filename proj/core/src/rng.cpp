#include "mod1/rng.hpp"

#include <cmath>

namespace mod1 {

std::uint64_t CounterRng::mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return mix64(seed_ + counter_ * 0x9E3779B97F4A7C15ull);
}

double CounterRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double CounterRng::next_gaussian(double sigma) {
  // Box-Muller; u1 nudged away from 0 so log() stays finite.
  double u1 = next_unit();
  double u2 = next_unit();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  constexpr double two_pi = 6.283185307179586476925286766559;
  return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

std::uint64_t CounterRng::derive(std::uint64_t base, std::uint64_t stream) {
  return mix64(base ^ mix64(stream + 1));
}

}  // namespace mod1
