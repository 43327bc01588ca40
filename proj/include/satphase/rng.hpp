// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random streams. Every stream is SplitMix64 (Steele, Lea and
// Flood, "Fast splittable pseudorandom number generators", OOPSLA 2014)
// started from a key derived from (seed, domain, index). The algorithm and the
// key derivation are frozen: changing either changes every generated instance.

#pragma once

#include <cstdint>
#include <limits>

namespace satphase {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 output function (the variant-13 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Key of the stream for draw `index` within `domain` under `seed`.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) noexcept {
  return mix64(mix64(seed ^ mix64(domain + kGoldenGamma)) + index * kGoldenGamma);
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : state_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  /// Uniform in [0, bound); bound > 0. Rejection keeps it unbiased.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace satphase
