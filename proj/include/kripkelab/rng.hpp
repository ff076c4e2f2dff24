#pragma once

#include <cstdint>
#include <random>

#include "kripkelab/combinatorics.hpp"

namespace kripkelab {

/// Deterministic pseudo-random stream (64-bit Mersenne Twister) identified by
/// a seed. Copies continue independently from the same position.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Stream number `index` below `seed`; distinct indices give unrelated
  /// streams, and none coincides with RngStream(seed) itself.
  static RngStream substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next();
  /// Uniform on [0, bound); bound > 0. Rejection keeps it exactly unbiased.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  bool coin();
  /// Uniform Count on [0, bound); bound > 0.
  Count below(const Count& bound);
  /// Uniform double on [0, 1).
  double unit();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace kripkelab
