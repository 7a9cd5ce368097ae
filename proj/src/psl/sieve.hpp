#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace psl {

// Additive prime-counting functions served by the sieve.
enum class arith_fn {
  omega,        // distinct prime factors
  big_omega,    // prime factors with multiplicity
  big_omega_2,  // prime factors != 2, with multiplicity
};

// Immutable per-integer tables of smallest prime factor, omega, Omega,
// Omega_2 and tau for n in [1, limit].  Construction is single-threaded;
// after construction the tables are safe to share across readers.
//
// Storage is 9 bytes per integer (u32 spf, three u8 counts, u16 tau), so
// the default 2 GiB budget supports limits up to ~2.3e8.
class sieve_tables {
public:
  // Throws capacity_error when 9*(limit+1) bytes exceed the memory budget.
  static sieve_tables build(uint64_t limit);

  uint64_t limit() const { return limit_; }

  uint32_t spf(uint64_t n) const { return spf_[check(n)]; }
  uint32_t omega(uint64_t n) const { return omega_[check(n)]; }
  uint32_t big_omega(uint64_t n) const { return big_omega_[check(n)]; }
  uint32_t big_omega_2(uint64_t n) const { return big_omega_2_[check(n)]; }
  uint32_t tau(uint64_t n) const { return tau_[check(n)]; }
  uint32_t value(arith_fn f, uint64_t n) const;

  // Positive divisors of n in ascending order; length equals tau(n).
  std::vector<uint64_t> divisors(uint64_t n) const;

  // sum_{n <= x} y^{f(n)} for f in {omega, Omega, Omega_2}.
  double weighted_power_sum(double y, uint64_t x, arith_fn which) const;

  // sum_{n <= x} tau(n^2), exact, via tau(n^2) = prod(2 e_i + 1) over the
  // prime exponents of n (no sieve to x^2 needed).
  uint64_t tau_square_sum(uint64_t x) const;

  // counts[k] = #{n <= x : f(n) = k}; entries sum to x.
  std::vector<uint64_t> factor_histogram(uint64_t x, arith_fn which) const;

  // sum of tau(n) over n <= N^2 with |omega(n) - 2 log log N| > eps log log N.
  // Requires N >= 16 (so log log N > 0) and N^2 <= limit.
  uint64_t tail_tau_sum(uint64_t n_model, double eps) const;

  // Binary container: 16-byte header (magic "PSLSIEVE", u32 version,
  // u32 limit) followed by the raw little-endian tables.
  void save(const std::string& path) const;
  static sieve_tables load(const std::string& path);

  // Raw views for whole-range scans (index n, entry 0 unused).
  std::span<const uint8_t> omega_raw() const { return omega_; }
  std::span<const uint8_t> big_omega_raw() const { return big_omega_; }
  std::span<const uint8_t> big_omega_2_raw() const { return big_omega_2_; }
  std::span<const uint16_t> tau_raw() const { return tau_; }
  std::span<const uint8_t> fn_raw(arith_fn f) const;

private:
  sieve_tables() = default;

  uint64_t check(uint64_t n) const;

  uint64_t limit_ = 0;
  std::vector<uint32_t> spf_;
  std::vector<uint8_t> omega_;
  std::vector<uint8_t> big_omega_;
  std::vector<uint8_t> big_omega_2_;
  std::vector<uint16_t> tau_;
};

}  // namespace psl
