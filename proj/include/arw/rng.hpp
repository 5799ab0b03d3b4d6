#pragma once

#include <cmath>
#include <cstdint>

namespace arw {

// Counter-based random numbers: the k-th variate of a stream is a pure
// function of (seed, k), so parallel consumers get identical values no
// matter how work is scheduled.
//
// The mixer is the SplitMix64 finalizer (Steele/Lea/Vigna); gaussians come
// from Box-Muller on two counter-indexed uniforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t index) const {
    std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  /// Standard normal variate; consumes uniforms 2*index and 2*index+1.
  double normal(std::uint64_t index) const {
    const double u1 = uniform(2 * index);
    const double u2 = uniform(2 * index + 1);
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Independent child stream, e.g. one per Monte Carlo trial.
  CounterRng derive(std::uint64_t stream) const {
    std::uint64_t z = bits(0xD1B54A32D192ED03ull ^ stream);
    return CounterRng(z);
  }

 private:
  std::uint64_t seed_;
};

}  // namespace arw
