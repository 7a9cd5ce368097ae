#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psl/tau_table.hpp"

namespace psl {

// The random-set model: every i in [1, N] joins A independently with
// probability alpha.  The inclusion decision for index i is the pure
// function unit_double(stream_at(seed, i)) < alpha, so a sample is fully
// determined by (N, alpha, seed).
struct model_params {
  uint32_t n_max = 0;
  double alpha = 0.0;
  uint64_t seed = 0;
};

// Strictly ascending elements of the sampled set.
std::vector<uint32_t> sample_set(const model_params& params);

// Product-set statistics of a realized set.  r_AA(x) counts unordered
// pairs a <= b with ab = x, so sum_x r_AA(x) = (|A|^2+|A|)/2 ("trivial")
// and energy = sum_x r_AA(x)^2.
struct product_stats {
  uint64_t set_size = 0;
  uint64_t product_set_size = 0;
  uint64_t energy = 0;
  uint64_t trivial = 0;
  uint64_t nontrivial = 0;  // energy - trivial
  uint64_t deficiency = 0;  // trivial - product_set_size
};

product_stats compute_product_stats(std::span<const uint32_t> elements);

// |AA| only.  Reusable scratch avoids per-call allocation in trial loops;
// results are identical with or without it.
struct product_size_scratch {
  std::vector<uint64_t> bitmap;
  std::vector<uint64_t> products;
};

uint64_t product_set_size(std::span<const uint32_t> elements,
                          product_size_scratch* scratch = nullptr);

// |A/A| as distinct reduced fractions over ordered pairs.
uint64_t quotient_set_size(std::span<const uint32_t> elements);

// Exact E[|AA|] = sum_{n<=N^2} [1 - (1-a^2)^{t(n)} (1-a)^{s(n)}] where
// s(n) = 1 iff tau_N(n) is odd (the square representation) and
// t(n) = (tau_N(n) - s(n)) / 2.  Distinct unordered representations of n
// are element-disjoint, so the per-n factorization is exact.
double exact_expected_product_size(const tau_table& table, double alpha);

// The uncorrected main term sum_{n<=N^2} (1 - (1-a^2)^{tau_N(n)/2}); its
// gap to the exact value comes only from the <= N square terms.
double main_term_expected_product_size(const tau_table& table, double alpha);

// E[|AA|] by full subset enumeration (2^N subsets); N <= 20.
double brute_force_expected_product_size(uint32_t n_max, double alpha);

// E[(|A|^2+|A|)/2] = N^2 a^2 / 2 + N a - N a^2 / 2.
double expected_trivial(uint64_t n_max, double alpha);

// Main term of E[X_A]: sum_{n<=N^2} (a^2 tau_N(n)/2 - 1 + (1-a^2)^{tau_N(n)/2}).
double expected_deficiency_main_term(const tau_table& table, double alpha);

}  // namespace psl
