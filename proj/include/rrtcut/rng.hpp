#pragma once

#include <cstdint>
#include <cmath>
#include <span>
#include <stdexcept>

namespace rrtcut {

// Keyed counter-based generator (SplitMix64 core with a per-stream odd gamma,
// as in SplittableRandom). A stream is addressed by (seed, trial, tag); any
// stream can be constructed in O(1), so trials can run on any number of
// threads in any order and still consume exactly the same randomness.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag) {
    std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ull);
    h = mix(h ^ trial);
    h = mix(h ^ tag);
    state_ = h;
    gamma_ = mix(h + 0x9e3779b97f4a7c15ull) | 1ull;
  }

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix(state_);
  }

  // uniform on {0, 1, ..., bound-1}; unbiased (Lemire multiply-shift with rejection)
  std::uint64_t uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // uniform on (0, 1]: never returns 0, so logs and reciprocals are safe
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_unit() <= p; }

  double exponential() { return -std::log(next_unit()); }

  template <typename T>
  void shuffle(std::span<T> a) {
    for (std::size_t i = a.size(); i > 1; --i) {
      std::size_t j = uniform_below(i);
      std::swap(a[i - 1], a[j]);
    }
  }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace rrtcut
