#pragma once

#include <cstdint>
#include <random>

namespace dvs {

/// Seeded random source for generated corpora. The bit stream is
/// std::mt19937_64 (fully specified by the standard); bounded integers use
/// rejection sampling and reals take the top 53 bits, so the same seed gives
/// the same corpus on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi]; requires lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// Uniform real in [0, 1).
  double unit();

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dvs
