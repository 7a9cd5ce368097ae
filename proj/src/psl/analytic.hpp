#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psl/sieve.hpp"

namespace psl {

// Uniform carrier for one numeric inequality check.  `passed` is set only
// for checks with a configured ceiling or band; `ratio` is lhs/rhs when
// rhs > 0 and NaN otherwise.
struct bound_report {
  std::string name;
  std::vector<std::pair<std::string, double>> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::optional<bool> passed;
};

// Configured ceilings/bands standing in for the lemmas' implicit constants.
struct bound_limits {
  double tk_ceiling = 10.0;        // turan_kubilius: lhs * t^2 <= ceiling
  double dyadic_ceiling = 20.0;    // dyadic partial sum: ratio <= ceiling
  double norton_lo = 1e-2;         // norton: ratio band
  double norton_hi = 1e2;
  double ek_variance_lo = 0.5;     // erdos-kac: standardized variance band
  double ek_variance_hi = 1.5;
  double landau_regime_a = 3.0;    // landau: in-regime means k <= A log log N
};

// T_n(x) = sum_{k<=n} x^k/k!, ascending k, compensated accumulation,
// k capped at 5000.
double truncated_exp(double x, int n);

// exp(x) vs T_n(x): strict '>' for x > 0; for x < 0, '>' when n is odd and
// '<' when n is even.  Requires x != 0 and |x| <= 30.
bound_report taylor_inequality_check(double x, int n);

// lhs = sum_{h<=k<=m} x^k/k! over integer k;
// rhs = min(sqrt(x), x/(x-m)) * x^m / floor(m)!, with x/(x-m) read as +inf
// at m = x.  Requires 0 <= h < m <= x and m - h >= sqrt(x).
bound_report norton_ratio(double x, double h, double m, const bound_limits& limits = {});

// lhs = pi_k(N^2) = #{n <= N^2 : omega(n) = k};
// rhs = (N^2/log N) (log log N)^{k-1}/(k-1)!.  Report-only; the parameters
// carry an in_regime flag (k <= A log log N).
bound_report landau_ratio(const sieve_tables& tables, uint32_t n_model, uint32_t k,
                          const bound_limits& limits = {});

// Moments and CDF grid of (f(n) - log log x)/sqrt(log log x) over n <= x.
// mean/variance/skewness are the central sample moments of the
// standardized values; the CDF grid is at t in {-3,...,3} with the
// standard normal CDF alongside.
struct erdos_kac_summary {
  uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  std::array<double, 7> cdf_empirical{};
  std::array<double, 7> cdf_normal{};
};

inline constexpr std::array<double, 7> kErdosKacGrid = {-3, -2, -1, 0, 1, 2, 3};

erdos_kac_summary erdos_kac_report(const sieve_tables& tables, uint64_t x, arith_fn which);

// lhs = (1/x) #{n <= x : |omega(n) - log log x| > t sqrt(log log x)};
// rhs = 1/t^2; passed iff lhs * t^2 <= tk_ceiling.
bound_report turan_kubilius_tail(const sieve_tables& tables, uint64_t x, double t,
                                 const bound_limits& limits = {});

// lhs = sum_{2<=t<=N/2} 1/(2^{Omega(t)} t sqrt(log t) log(N/t));
// rhs = log log N / log N; passed iff ratio <= dyadic_ceiling.
// Requires N >= 12 and N/2 <= tables.limit().
bound_report dyadic_partial_sum(const sieve_tables& tables, uint64_t n,
                                const bound_limits& limits = {});

// eta(eps) = (1 + eps/2) log(1 + eps/2) - eps/2.
double tail_tau_eta(double eps);

// lhs = tail_tau_sum(N, eps); rhs = N^2 (log N)^{1-2 eta}.  Report-only.
bound_report tail_tau_bound_check(const sieve_tables& tables, uint32_t n_model, double eps);

// Named suites of checks on pinned grids: "taylor", "norton", "landau",
// "ek", "tk", "dyadic", "tailtau", "all".  `tables` may be null for the
// sieve-free suites (taylor, norton); sieve-backed checks are skipped when
// the limit cannot accommodate their grid points.
bool suite_needs_sieve(const std::string& suite);
std::vector<bound_report> run_bound_suite(const std::string& suite,
                                          const sieve_tables* tables, uint64_t limit,
                                          const bound_limits& limits = {});

// Serialization; field order: name, parameters, lhs, rhs, ratio, passed.
std::string reports_csv(std::span<const bound_report> reports);
std::string reports_json(std::span<const bound_report> reports);

// True iff every report with a configured ceiling passed.
bool all_gated_passed(std::span<const bound_report> reports);

}  // namespace psl
