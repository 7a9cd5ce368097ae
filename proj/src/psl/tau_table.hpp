#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <vector>

#include "psl/sieve.hpp"

namespace psl {

// Windowed divisor counts tau_N(n) = #{(j,k) in [N]^2 : jk = n} for all
// n <= N^2, stored as 16-bit counts.  Ordered-pair convention throughout:
// sum of counts is exactly N^2.  Equivalently tau_N(n) counts divisors d
// of n with d <= N and n <= d*N.
class tau_table {
public:
  // 2*N^2 bytes of counts; the default 2 GiB budget caps N at 32768.
  static tau_table build(uint32_t n_model);

  uint32_t n_model() const { return n_model_; }
  uint64_t size() const { return static_cast<uint64_t>(n_model_) * n_model_; }

  uint32_t count(uint64_t n) const;

  // sum tau_N(n) == N^2 exactly.
  uint64_t total() const;

  // sum tau_N(n)^2 == #{(a,b,c,d) in [N]^4 : ab = cd} (ordered quadruples).
  uint64_t second_moment() const;

  // sum tau_N(n)^power over n <= N^2 with lo <= f(n) <= hi; power in {1, 2}.
  // The sieve must cover N^2.
  uint64_t banded_moment(const sieve_tables& tables, arith_fn which, double lo,
                         double hi, int power) const;

  // Binary container sharing the sieve layout, magic "PSLTAUN".
  void save(const std::string& path) const;
  static tau_table load(const std::string& path);

  std::span<const uint16_t> counts() const { return counts_; }  // counts()[n-1]

private:
  tau_table() = default;

  uint32_t n_model_ = 0;
  std::vector<uint16_t> counts_;
};

// tau_N(n) without building the table: walks the divisors of n from the
// sieve's factorization.  Requires n <= N^2 and n <= tables.limit().
uint32_t tau_n_single(uint32_t n_model, uint64_t n, const sieve_tables& tables);

// Multiplication-table count M(x): distinct products m1*m2 with
// m1, m2 <= floor(sqrt(x)), counted on a presence bitmap of x bits.
uint64_t mult_table_count(uint64_t x);

// Diagnostic quantiles for the two heuristic shapes of tau_N:
//   primary:  tau_N(n) * log N / tau(n)
//   refined:  tau_N(n) / (2 tau(n) (1 - log n / (2 log N)))  for n < N^2
// computed over a seeded uniform sample of n <= N^2 with tau_N(n) > 0.
struct ratio_report {
  size_t primary_count = 0;
  double primary_q05 = 0, primary_q50 = 0, primary_q95 = 0;
  size_t refined_count = 0;
  double refined_q05 = 0, refined_q50 = 0, refined_q95 = 0;
};

double heuristic_primary_ratio(uint32_t tau_n, uint32_t tau, uint32_t n_model);
double heuristic_refined_ratio(uint32_t tau_n, uint32_t tau, uint64_t n, uint32_t n_model);

ratio_report heuristic_ratio_report(const tau_table& table, const sieve_tables& tables,
                                    size_t sample_size, uint64_t seed);

}  // namespace psl
