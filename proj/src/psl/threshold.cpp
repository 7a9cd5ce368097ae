#include "psl/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "psl/csvfmt.hpp"
#include "psl/parallel.hpp"
#include "psl/random_model.hpp"
#include "psl/rng.hpp"

namespace psl {
namespace {

const double kEE = std::exp(std::exp(1.0));  // e^e

void check_n_range(double n, const char* who) {
  if (!(n > kEE))
    throw std::domain_error(std::string(who) + ": N must exceed e^e so log log N > 0");
}

}  // namespace

alpha_schedule alpha_schedule::fixed(double value) {
  if (!(value >= 0.0 && value < 1.0))
    throw std::domain_error("alpha_schedule: fixed value must lie in [0, 1)");
  return {kind_t::fixed, value};
}

alpha_schedule alpha_schedule::log_power(double exponent) {
  if (!(exponent > 0.0))
    throw std::domain_error("alpha_schedule: log_power exponent must be > 0");
  return {kind_t::log_power, exponent};
}

alpha_schedule alpha_schedule::theorem_scaled(double k_shift) {
  return {kind_t::theorem_scaled, k_shift};
}

double alpha_schedule::evaluate(double n) const {
  switch (kind) {
    case kind_t::fixed:
      return param;
    case kind_t::log_power: {
      check_n_range(n, "alpha_schedule");
      double alpha = std::pow(std::log(n), -param);
      if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("alpha_schedule: log_power produced alpha outside (0, 1)");
      return alpha;
    }
    case kind_t::theorem_scaled:
      return theorem_alpha(n, param);
  }
  throw std::domain_error("alpha_schedule: bad kind");
}

double theta_statistic(double n, double alpha) {
  check_n_range(n, "theta_statistic");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("theta_statistic: alpha must lie in (0, 1)");
  double lln = std::log(std::log(n));
  return (2.0 * std::log(alpha) + (kLog4 - 1.0) * lln) / std::sqrt(lln);
}

double theorem_alpha(double n, double k_shift) {
  check_n_range(n, "theorem_alpha");
  double lln = std::log(std::log(n));
  double log_alpha = k_shift * std::sqrt(lln) / 2.0 + (1.0 - kLog4) / 2.0 * lln;
  double alpha = std::exp(log_alpha);
  if (!(alpha < 1.0))
    throw std::domain_error("theorem_alpha: alpha >= 1 (K too large for this N)");
  if (!(alpha > 0.0))
    throw std::domain_error("theorem_alpha: alpha underflowed to 0");
  return alpha;
}

markov_result markov_bound(double expected_deficiency, double n, double alpha, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("markov_bound: delta must be > 0");
  if (!(n * alpha > 0.0)) throw std::domain_error("markov_bound: N*alpha must be > 0");
  if (expected_deficiency < 0.0)
    throw std::domain_error("markov_bound: expected deficiency must be >= 0");
  double na = n * alpha;
  markov_result r;
  r.raw = 2.0 * expected_deficiency / (delta * na * na);
  r.clamped = std::min(std::max(r.raw, 0.0), 1.0);
  return r;
}

namespace {

struct trial_outcome {
  uint64_t set_size = 0;
  uint64_t product_size = 0;
  uint64_t trivial = 0;
  uint64_t deficiency = 0;
};

summary_record summarize_one(uint32_t n, double alpha, const experiment_config& cfg) {
  std::vector<trial_outcome> outcomes(cfg.trials);
  double tail_threshold =
      cfg.delta * (static_cast<double>(n) * alpha) * (static_cast<double>(n) * alpha) / 2.0;

  std::vector<product_size_scratch> scratch(worker_count());
  parallel_chunks(cfg.trials, 4, [&](uint64_t lo, uint64_t hi, unsigned worker) {
    for (uint64_t t = lo; t < hi; ++t) {
      model_params params{n, alpha, trial_seed(cfg.master_seed, n, t)};
      std::vector<uint32_t> elements = sample_set(params);
      uint64_t k = elements.size();
      trial_outcome& o = outcomes[t];
      o.set_size = k;
      o.trivial = (k * k + k) / 2;
      o.product_size = product_set_size(elements, &scratch[worker]);
      o.deficiency = o.trivial - o.product_size;
    }
  });

  summary_record rec;
  rec.n = n;
  rec.alpha = alpha;
  rec.trials = cfg.trials;

  kahan_sum sum_size, sum_product, sum_deficiency, sum_ratio;
  uint64_t tail_hits = 0, ratio_trials = 0;
  for (const trial_outcome& o : outcomes) {
    sum_size.add(static_cast<double>(o.set_size));
    sum_product.add(static_cast<double>(o.product_size));
    sum_deficiency.add(static_cast<double>(o.deficiency));
    // threshold 0 (alpha = 0) makes the tail event vacuous, not certain
    if (tail_threshold > 0.0 && static_cast<double>(o.deficiency) >= tail_threshold)
      ++tail_hits;
    if (o.set_size >= 2) {
      sum_ratio.add(static_cast<double>(o.product_size) / static_cast<double>(o.trivial));
      ++ratio_trials;
    }
  }
  double trials = static_cast<double>(cfg.trials);
  rec.mean_set_size = sum_size.value() / trials;
  rec.mean_product_size = sum_product.value() / trials;
  rec.mean_deficiency = sum_deficiency.value() / trials;
  rec.empirical_tail_prob = static_cast<double>(tail_hits) / trials;
  if (ratio_trials > 0)
    rec.mean_ratio = sum_ratio.value() / static_cast<double>(ratio_trials);
  if (alpha > 0.0 && alpha < 1.0 && static_cast<double>(n) > std::exp(std::exp(1.0)))
    rec.theta = theta_statistic(static_cast<double>(n), alpha);
  return rec;
}

void attach_exact_columns(summary_record& rec, const tau_table& table, double alpha,
                          double delta) {
  double exact = exact_expected_product_size(table, alpha);
  rec.exact_expectation = exact;
  if (alpha > 0.0) {
    double expected_deficiency = std::max(expected_trivial(rec.n, alpha) - exact, 0.0);
    markov_result mb = markov_bound(expected_deficiency, rec.n, alpha, delta);
    rec.markov_raw = mb.raw;
    rec.markov_clamped = mb.clamped;
  }
}

}  // namespace

std::vector<summary_record> run_trials(const experiment_config& config) {
  if (config.n_values.empty())
    throw std::domain_error("run_trials: n_values must not be empty");
  for (uint32_t n : config.n_values)
    if (n < 16) throw std::domain_error("run_trials: every N must be >= 16");
  if (config.trials < 1) throw std::domain_error("run_trials: trials must be >= 1");
  if (!(config.delta > 0.0 && config.delta < 1.0))
    throw std::domain_error("run_trials: delta must lie in (0, 1)");

  std::map<uint32_t, tau_table> table_cache;
  std::vector<summary_record> records;
  records.reserve(config.n_values.size());

  for (uint32_t n : config.n_values) {
    double alpha = config.schedule.evaluate(static_cast<double>(n));
    summary_record rec = summarize_one(n, alpha, config);
    if (config.compute_exact) {
      auto it = table_cache.find(n);
      if (it == table_cache.end())
        it = table_cache.emplace(n, tau_table::build(n)).first;
      attach_exact_columns(rec, it->second, alpha, config.delta);
    }
    records.push_back(std::move(rec));
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const summary_record& a, const summary_record& b) {
                     if (a.n != b.n) return a.n < b.n;
                     return a.alpha < b.alpha;
                   });
  return records;
}

summary_record simulate_cell(uint32_t n, double alpha, uint32_t trials, double delta,
                             uint64_t master_seed, bool compute_exact) {
  if (n < 1) throw std::domain_error("simulate_cell: N must be >= 1");
  if (trials < 1) throw std::domain_error("simulate_cell: trials must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("simulate_cell: delta must lie in (0, 1)");
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::domain_error("simulate_cell: alpha must lie in [0, 1)");

  experiment_config cfg;
  cfg.n_values = {n};
  cfg.schedule = alpha_schedule::fixed(alpha);
  cfg.trials = trials;
  cfg.delta = delta;
  cfg.master_seed = master_seed;

  summary_record rec = summarize_one(n, alpha, cfg);
  if (compute_exact) {
    tau_table table = tau_table::build(n);
    attach_exact_columns(rec, table, alpha, delta);
  }
  return rec;
}

double equality_regime_frequency(uint32_t n_max, double alpha, uint32_t trials,
                                 uint64_t seed) {
  if (trials < 1) throw std::domain_error("equality_regime_frequency: trials must be >= 1");

  std::vector<uint8_t> hit(trials, 0);
  std::vector<product_size_scratch> scratch(worker_count());
  parallel_chunks(trials, 8, [&](uint64_t lo, uint64_t hi, unsigned worker) {
    for (uint64_t t = lo; t < hi; ++t) {
      model_params params{n_max, alpha, trial_seed(seed, n_max, t)};
      std::vector<uint32_t> elements = sample_set(params);
      uint64_t k = elements.size();
      uint64_t trivial = (k * k + k) / 2;
      uint64_t aa = product_set_size(elements, &scratch[worker]);
      hit[t] = trivial - aa >= 1 ? 1 : 0;
    }
  });
  uint64_t hits = 0;
  for (uint8_t h : hit) hits += h;
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::string summary_csv(std::span<const summary_record> records) {
  std::string out = kSummaryCsvHeader;
  out += '\n';
  for (const summary_record& r : records) {
    out += format_int(r.n);
    out += ',';
    out += format_real(r.alpha);
    out += ',';
    out += format_opt(r.theta);
    out += ',';
    out += format_int(r.trials);
    out += ',';
    out += format_real(r.mean_set_size);
    out += ',';
    out += format_real(r.mean_product_size);
    out += ',';
    out += format_real(r.mean_deficiency);
    out += ',';
    out += format_real(r.empirical_tail_prob);
    out += ',';
    out += format_opt(r.markov_raw);
    out += ',';
    out += format_opt(r.exact_expectation);
    out += ',';
    out += format_opt(r.mean_ratio);
    out += '\n';
  }
  return out;
}

}  // namespace psl
