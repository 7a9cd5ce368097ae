#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psl {

inline constexpr double kLog4 = 1.3862943611198906;  // log 4
inline constexpr uint64_t kDefaultSeed = 0x5EED;

// How alpha is derived from N.
//   fixed(v):          alpha = v, v in [0, 1)
//   log_power(c):      alpha = (log N)^(-c), c > 0
//   theorem_scaled(K): alpha^2 = exp(K sqrt(log log N)) * (log N)^(1 - log 4)
// log_power and theorem_scaled require N > e^e and reject alpha >= 1.
struct alpha_schedule {
  enum class kind_t { fixed, log_power, theorem_scaled };

  kind_t kind = kind_t::fixed;
  double param = 0.0;

  static alpha_schedule fixed(double value);
  static alpha_schedule log_power(double exponent);
  static alpha_schedule theorem_scaled(double k_shift);

  double evaluate(double n) const;
};

// Theta = log(alpha^2 (log N)^{log 4 - 1}) / sqrt(log log N).
// Requires N > e^e and alpha in (0, 1).
double theta_statistic(double n, double alpha);

// Inverse schedule: alpha with theta_statistic(N, alpha) == K.  Throws
// std::domain_error when the produced alpha would reach 1 (large K at
// small N).
double theorem_alpha(double n, double k_shift);

struct markov_result {
  double raw = 0.0;      // 2 E[X_A] / (delta (N alpha)^2)
  double clamped = 0.0;  // raw clipped to [0, 1]
};

markov_result markov_bound(double expected_deficiency, double n, double alpha, double delta);

struct experiment_config {
  std::vector<uint32_t> n_values;  // each >= 16
  alpha_schedule schedule;
  uint32_t trials = 1;
  double delta = 0.1;  // in (0, 1)
  uint64_t master_seed = kDefaultSeed;
  bool compute_exact = false;
};

// One aggregate row per N.  Optionals are absent when undefined: theta for
// alpha = 0, mean_ratio when no trial had |A| >= 2, the exact columns when
// compute_exact is off (markov additionally needs alpha > 0).
struct summary_record {
  uint32_t n = 0;
  double alpha = 0.0;
  std::optional<double> theta;
  uint32_t trials = 0;
  double mean_set_size = 0.0;
  double mean_product_size = 0.0;
  double mean_deficiency = 0.0;
  double empirical_tail_prob = 0.0;  // fraction of trials with X_A >= delta (N alpha)^2 / 2
  std::optional<double> markov_raw;
  std::optional<double> markov_clamped;
  std::optional<double> exact_expectation;
  std::optional<double> mean_ratio;  // mean |AA| / ((|A|^2+|A|)/2) over trials with |A| >= 2
};

// Trial t for size N uses trial_seed(master_seed, N, t); trials may run
// concurrently, aggregation happens in trial order, so records are
// identical across reruns and worker counts.
std::vector<summary_record> run_trials(const experiment_config& config);

// One (N, alpha) cell.  Unlike run_trials this accepts any N >= 1; with
// compute_exact it builds the tau_N table for this N.
summary_record simulate_cell(uint32_t n, double alpha, uint32_t trials, double delta,
                             uint64_t master_seed, bool compute_exact);

// Fraction of trials with X_A >= 1 (to compare against alpha^4 N^2).
double equality_regime_frequency(uint32_t n_max, double alpha, uint32_t trials,
                                 uint64_t seed);

inline constexpr const char* kSummaryCsvHeader =
    "n,alpha,theta,trials,mean_set_size,mean_product_size,mean_deficiency,"
    "empirical_tail_prob,markov_bound_raw,exact_expectation,mean_ratio";

// Header plus one line per record, sorted by (n, alpha).
std::string summary_csv(std::span<const summary_record> records);

}  // namespace psl
