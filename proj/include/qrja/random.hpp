#pragma once

// Counter-based generator: output k of stream (seed, path) is a pure function
// of (seed, path, k), so a batch of trials split across threads draws exactly
// the numbers a serial loop would. Mixing uses the SplitMix64 finalizer.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace qrja {

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed) noexcept : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  /// Independent child stream; split(i) of equal parents are equal.
  [[nodiscard]] CounterRng split(std::uint64_t stream) const noexcept {
    return CounterRng(key_, mix(key_ + 0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return mix(key_ ^ mix(counter_++ + 0x94d049bb133111ebULL)); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t limit = max() - max() % n;
    for (;;) {
      const std::uint64_t v = (*this)();
      if (v < limit) return v % n;
    }
  }

  /// Box-Muller; one normal per two uniforms, no cached state.
  double normal(double mean = 0.0, double sd = 1.0) noexcept {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool bernoulli(double prob) noexcept { return uniform01() < prob; }

  [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

 private:
  CounterRng(std::uint64_t, std::uint64_t key) noexcept : key_(key) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace qrja
