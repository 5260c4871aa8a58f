// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace episodia {

/// splitmix64 stream (Steele/Lea/Vigna). Used for every sampling decision in
/// the pipeline so that selections can be reproduced in any language from
/// this description alone: the state advances by 0x9E3779B97F4A7C15 per draw
/// and the output is the two-round multiply/xorshift finalizer below.
/// Repetition r of an experiment uses the stream seeded with base_seed + r.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Rejection-samples the tail of the 64-bit
  /// range so the result is exactly uniform, not just nearly so.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t reject_below = (0 - n) % n;  // 2^64 mod n
    std::uint64_t x = next();
    while (x < reject_below) x = next();
    return x % n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace episodia
