#pragma once

#include <cstdint>

// Counter-based randomness.  Every random decision in the library is a pure
// function of (seed, counter), so samples are reproducible independently of
// iteration order, chunking, or worker count.

namespace psl {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 output function (Steele, Lea, Flood 2014).
constexpr uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// index-th output of the splitmix64 stream seeded with `seed`.
constexpr uint64_t stream_at(uint64_t seed, uint64_t index) {
  return mix64(seed + (index + 1) * kGolden);
}

// Uniform double in [0, 1) from 53 high bits.
constexpr double unit_double(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Derived seed for one Monte Carlo trial.  Fixed mixing chain so that a
// parallel execution plan cannot change which stream a trial consumes:
//   trial_seed = mix64(mix64(mix64(master + golden) ^ n) ^ trial_index)
constexpr uint64_t trial_seed(uint64_t master_seed, uint64_t n, uint64_t trial_index) {
  return mix64(mix64(mix64(master_seed + kGolden) ^ n) ^ trial_index);
}

// Compensated (Kahan) accumulator for long floating-point sums.
struct kahan_sum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace psl
