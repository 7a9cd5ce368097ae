/*
 * pslab — product-set laboratory for random multiplicative models.
 *
 * C API over the C++ core.  All functions return a psl_status; results go
 * through out-parameters.  Objects are opaque handles released with their
 * _free function; buffers returned as char** / uint32_t** are owned by the
 * caller and released with psl_free().
 *
 * On failure psl_last_error() returns a thread-local message describing
 * the most recent error in the calling thread.
 *
 * Determinism contract: every random decision is a pure function of a
 * 64-bit seed and a counter (splitmix64 stream; element i of a sample is
 * included iff unit(stream_at(seed, i)) < alpha, and trial t at size N
 * uses trial_seed = mix64(mix64(mix64(master + 0x9E3779B97F4A7C15) ^ N) ^ t)).
 * Identical inputs give byte-identical outputs for any worker count.
 */

#ifndef PSL_PSL_H
#define PSL_PSL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Marks the exported surface; everything else in the shared library is
 * hidden. */
#ifndef PSL_API
#if defined(__GNUC__) && __GNUC__ >= 4
#define PSL_API __attribute__((visibility("default")))
#else
#define PSL_API
#endif
#endif

typedef enum psl_status {
  PSL_OK = 0,
  PSL_ERR_DOMAIN = 1,   /* argument outside the operation's domain */
  PSL_ERR_RANGE = 2,    /* index beyond a table's limit */
  PSL_ERR_CAPACITY = 3, /* memory budget exceeded */
  PSL_ERR_PARSE = 4,    /* malformed config document */
  PSL_ERR_IO = 5,       /* file read/write failure */
  PSL_ERR_INTERNAL = 6
} psl_status;

PSL_API const char* psl_version(void);
PSL_API const char* psl_status_name(psl_status status);

/* Thread-local message for the last failure in this thread ("" if none). */
PSL_API const char* psl_last_error(void);

/* Releases any buffer returned by the library. */
PSL_API void psl_free(void* ptr);

/* Memory budget (bytes) for table construction.  Default 2 GiB, or the
 * PSL_MEMORY_BUDGET_BYTES environment variable.  Setting 0 restores that
 * default. */
PSL_API uint64_t psl_memory_budget_bytes(void);
PSL_API void psl_set_memory_budget_bytes(uint64_t bytes);

/* ------------------------------------------------------------------ */
/* Arithmetic-function tables (smallest prime factor, omega, Omega,    */
/* Omega_2, tau for n in [1, limit]).                                  */

typedef struct psl_sieve psl_sieve;

/* Selector for the additive prime-counting functions. */
typedef enum psl_arith_fn {
  PSL_FN_OMEGA = 0,       /* distinct prime factors */
  PSL_FN_BIG_OMEGA = 1,   /* prime factors with multiplicity */
  PSL_FN_BIG_OMEGA_2 = 2  /* prime factors != 2, with multiplicity */
} psl_arith_fn;

PSL_API psl_status psl_sieve_build(uint64_t limit, psl_sieve** out);
PSL_API void psl_sieve_free(psl_sieve* sieve);
PSL_API uint64_t psl_sieve_limit(const psl_sieve* sieve);

PSL_API psl_status psl_sieve_spf(const psl_sieve* sieve, uint64_t n, uint32_t* out);
PSL_API psl_status psl_sieve_tau(const psl_sieve* sieve, uint64_t n, uint32_t* out);
PSL_API psl_status psl_sieve_fn(const psl_sieve* sieve, psl_arith_fn which, uint64_t n,
                        uint32_t* out);

/* Divisors of n in ascending order, length tau(n); free with psl_free. */
PSL_API psl_status psl_sieve_divisors(const psl_sieve* sieve, uint64_t n, uint64_t** divisors,
                              size_t* count);

/* sum_{n<=x} y^{f(n)} */
PSL_API psl_status psl_weighted_power_sum(const psl_sieve* sieve, double y, uint64_t x,
                                  psl_arith_fn which, double* out);

/* sum_{n<=x} tau(n^2), exact */
PSL_API psl_status psl_tau_square_sum(const psl_sieve* sieve, uint64_t x, uint64_t* out);

/* counts[k] = #{n<=x : f(n)=k}; free counts with psl_free */
PSL_API psl_status psl_factor_histogram(const psl_sieve* sieve, uint64_t x, psl_arith_fn which,
                                uint64_t** counts, size_t* bins);

/* sum of tau(n) over n <= N^2 with |omega(n) - 2 log log N| > eps log log N */
PSL_API psl_status psl_tail_tau_sum(const psl_sieve* sieve, uint32_t n_model, double eps,
                            uint64_t* out);

/* Binary container, magic "PSLSIEVE". */
PSL_API psl_status psl_sieve_save(const psl_sieve* sieve, const char* path);
PSL_API psl_status psl_sieve_load(const char* path, psl_sieve** out);

/* ------------------------------------------------------------------ */
/* Windowed divisor counts tau_N(n), n <= N^2 (ordered-pair counts).   */

typedef struct psl_tau_table psl_tau_table;

PSL_API psl_status psl_tau_table_build(uint32_t n_model, psl_tau_table** out);
PSL_API void psl_tau_table_free(psl_tau_table* table);
PSL_API uint32_t psl_tau_table_n(const psl_tau_table* table);

PSL_API psl_status psl_tau_table_count(const psl_tau_table* table, uint64_t n, uint32_t* out);
PSL_API uint64_t psl_tau_table_total(const psl_tau_table* table);
PSL_API uint64_t psl_tau_table_second_moment(const psl_tau_table* table);

/* sum tau_N(n)^power (power 1 or 2) over n <= N^2 with lo <= f(n) <= hi */
PSL_API psl_status psl_tau_table_banded_moment(const psl_tau_table* table, const psl_sieve* sieve,
                                       psl_arith_fn which, double lo, double hi, int power,
                                       uint64_t* out);

/* tau_N(n) from the sieve's factorization, without a table */
PSL_API psl_status psl_tau_n_single(uint32_t n_model, uint64_t n, const psl_sieve* sieve,
                            uint32_t* out);

/* Binary container, magic "PSLTAUN". */
PSL_API psl_status psl_tau_table_save(const psl_tau_table* table, const char* path);
PSL_API psl_status psl_tau_table_load(const char* path, psl_tau_table** out);

/* M(x): distinct products m1*m2 with m1, m2 <= floor(sqrt(x)) */
PSL_API psl_status psl_mult_table_count(uint64_t x, uint64_t* out);

/* Quantiles of the two heuristic tau_N shapes over a seeded sample. */
typedef struct psl_ratio_report {
  size_t primary_count;
  double primary_q05, primary_q50, primary_q95;
  size_t refined_count;
  double refined_q05, refined_q50, refined_q95;
} psl_ratio_report;

PSL_API psl_status psl_heuristic_ratio_report(const psl_tau_table* table, const psl_sieve* sieve,
                                      size_t sample_size, uint64_t seed,
                                      psl_ratio_report* out);

/* ------------------------------------------------------------------ */
/* Random model B(N, alpha).                                           */

/* Sampled elements, ascending; free with psl_free. */
PSL_API psl_status psl_sample_set(uint32_t n_max, double alpha, uint64_t seed,
                          uint32_t** elements, size_t* count);

typedef struct psl_product_stats {
  uint64_t set_size;
  uint64_t product_set_size; /* |AA| */
  uint64_t energy;           /* sum over x of r_AA(x)^2, unordered pairs */
  uint64_t trivial;          /* (|A|^2+|A|)/2 */
  uint64_t nontrivial;       /* energy - trivial */
  uint64_t deficiency;       /* trivial - |AA| */
} psl_product_stats;

PSL_API psl_status psl_product_stats_of(const uint32_t* elements, size_t count,
                                psl_product_stats* out);
PSL_API psl_status psl_quotient_set_size(const uint32_t* elements, size_t count, uint64_t* out);

/* E[|AA|]: exact (square-corrected), first-order main term, and 2^N
 * subset enumeration (N <= 20). */
PSL_API psl_status psl_exact_expected_product_size(const psl_tau_table* table, double alpha,
                                           double* out);
PSL_API psl_status psl_main_term_expected_product_size(const psl_tau_table* table, double alpha,
                                               double* out);
PSL_API psl_status psl_brute_force_expected_product_size(uint32_t n_max, double alpha, double* out);

/* E[(|A|^2+|A|)/2] = N^2 a^2/2 + N a - N a^2/2 */
PSL_API psl_status psl_expected_trivial(uint64_t n_max, double alpha, double* out);

/* Main term of E[X_A] = sum (a^2 tau_N/2 - 1 + (1-a^2)^{tau_N/2}) */
PSL_API psl_status psl_expected_deficiency_main_term(const psl_tau_table* table, double alpha,
                                             double* out);

/* ------------------------------------------------------------------ */
/* Threshold experiments.                                              */

/* Theta = log(alpha^2 (log N)^{log 4 - 1}) / sqrt(log log N) */
PSL_API psl_status psl_theta_statistic(double n, double alpha, double* out);

/* alpha with Theta(N, alpha) = K; PSL_ERR_DOMAIN when alpha would reach 1 */
PSL_API psl_status psl_theorem_alpha(double n, double k, double* out);

/* raw = 2 E[X_A] / (delta (N alpha)^2); clamped to [0, 1] for reporting */
PSL_API psl_status psl_markov_bound(double expected_deficiency, double n, double alpha,
                            double delta, double* raw, double* clamped);

/* Fraction of seeded trials with X_A >= 1. */
PSL_API psl_status psl_equality_regime_frequency(uint32_t n_max, double alpha, uint32_t trials,
                                         uint64_t seed, double* out);

/* One (N, alpha) cell: trials Monte Carlo rows rendered as summary CSV
 * (header + 1 row); always runs the exact pipeline for this N.  Free the
 * buffer with psl_free. */
PSL_API psl_status psl_simulate_csv(uint32_t n_max, double alpha, uint32_t trials, double delta,
                            uint64_t seed, char** csv);

/* Full sweep from a JSON config document (schema in the project README);
 * rows sorted by (n, alpha).  Free the buffer with psl_free. */
PSL_API psl_status psl_sweep_csv(const char* config_json, char** csv);

/* ------------------------------------------------------------------ */
/* Analytic bound suites.                                              */

typedef enum psl_report_format { PSL_FORMAT_CSV = 0, PSL_FORMAT_JSON = 1 } psl_report_format;

/* Runs a named suite ("taylor", "norton", "landau", "ek", "tk", "dyadic",
 * "tailtau", "all") at the given sieve limit.  all_passed receives 1 iff
 * every check with a configured ceiling passed.  Free the buffer with
 * psl_free. */
PSL_API psl_status psl_run_bound_suite(const char* suite, uint64_t limit, psl_report_format format,
                               char** report, int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PSL_PSL_H */
