#include "psl/psl.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "psl/analytic.hpp"
#include "psl/budget.hpp"
#include "psl/errors.hpp"
#include "psl/random_model.hpp"
#include "psl/rng.hpp"
#include "psl/sieve.hpp"
#include "psl/sweep.hpp"
#include "psl/tau_table.hpp"
#include "psl/threshold.hpp"

// Opaque handles are thin wrappers around the core types.
struct psl_sieve {
  psl::sieve_tables tables;
};
struct psl_tau_table {
  psl::tau_table table;
};

namespace {

thread_local std::string g_last_error;

template <class F>
psl_status wrap(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return PSL_OK;
  } catch (const psl::capacity_error& e) {
    g_last_error = e.what();
    return PSL_ERR_CAPACITY;
  } catch (const psl::parse_error& e) {
    g_last_error = e.what();
    return PSL_ERR_PARSE;
  } catch (const psl::io_error& e) {
    g_last_error = e.what();
    return PSL_ERR_IO;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return PSL_ERR_RANGE;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return PSL_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return PSL_ERR_DOMAIN;
  } catch (const std::bad_alloc&) {
    g_last_error = "allocation failed";
    return PSL_ERR_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PSL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PSL_ERR_INTERNAL;
  }
}

psl_status require(bool ok, const char* message) noexcept {
  if (ok) return PSL_OK;
  g_last_error = message;
  return PSL_ERR_DOMAIN;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

psl::arith_fn to_fn(psl_arith_fn which) {
  switch (which) {
    case PSL_FN_OMEGA: return psl::arith_fn::omega;
    case PSL_FN_BIG_OMEGA: return psl::arith_fn::big_omega;
    case PSL_FN_BIG_OMEGA_2: return psl::arith_fn::big_omega_2;
  }
  throw std::domain_error("bad psl_arith_fn value");
}

}  // namespace

extern "C" {

const char* psl_version(void) { return "0.1.0"; }

const char* psl_status_name(psl_status status) {
  switch (status) {
    case PSL_OK: return "ok";
    case PSL_ERR_DOMAIN: return "domain";
    case PSL_ERR_RANGE: return "range";
    case PSL_ERR_CAPACITY: return "capacity";
    case PSL_ERR_PARSE: return "parse";
    case PSL_ERR_IO: return "io";
    case PSL_ERR_INTERNAL: return "internal";
  }
  return "?";
}

const char* psl_last_error(void) { return g_last_error.c_str(); }

void psl_free(void* ptr) { std::free(ptr); }

uint64_t psl_memory_budget_bytes(void) { return psl::memory_budget_bytes(); }
void psl_set_memory_budget_bytes(uint64_t bytes) { psl::set_memory_budget_bytes(bytes); }

/* ---- sieve ---- */

psl_status psl_sieve_build(uint64_t limit, psl_sieve** out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = new psl_sieve{psl::sieve_tables::build(limit)}; });
}

void psl_sieve_free(psl_sieve* sieve) { delete sieve; }

uint64_t psl_sieve_limit(const psl_sieve* sieve) { return sieve ? sieve->tables.limit() : 0; }

psl_status psl_sieve_spf(const psl_sieve* sieve, uint64_t n, uint32_t* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = sieve->tables.spf(n); });
}

psl_status psl_sieve_tau(const psl_sieve* sieve, uint64_t n, uint32_t* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = sieve->tables.tau(n); });
}

psl_status psl_sieve_fn(const psl_sieve* sieve, psl_arith_fn which, uint64_t n,
                        uint32_t* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = sieve->tables.value(to_fn(which), n); });
}

psl_status psl_sieve_divisors(const psl_sieve* sieve, uint64_t n, uint64_t** divisors,
                              size_t* count) {
  if (psl_status s = require(sieve && divisors && count, "null argument")) return s;
  return wrap([&] {
    std::vector<uint64_t> d = sieve->tables.divisors(n);
    auto* buf = static_cast<uint64_t*>(std::malloc(d.size() * sizeof(uint64_t)));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, d.data(), d.size() * sizeof(uint64_t));
    *divisors = buf;
    *count = d.size();
  });
}

psl_status psl_weighted_power_sum(const psl_sieve* sieve, double y, uint64_t x,
                                  psl_arith_fn which, double* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = sieve->tables.weighted_power_sum(y, x, to_fn(which)); });
}

psl_status psl_tau_square_sum(const psl_sieve* sieve, uint64_t x, uint64_t* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = sieve->tables.tau_square_sum(x); });
}

psl_status psl_factor_histogram(const psl_sieve* sieve, uint64_t x, psl_arith_fn which,
                                uint64_t** counts, size_t* bins) {
  if (psl_status s = require(sieve && counts && bins, "null argument")) return s;
  return wrap([&] {
    std::vector<uint64_t> h = sieve->tables.factor_histogram(x, to_fn(which));
    auto* buf = static_cast<uint64_t*>(std::malloc(h.size() * sizeof(uint64_t)));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, h.data(), h.size() * sizeof(uint64_t));
    *counts = buf;
    *bins = h.size();
  });
}

psl_status psl_tail_tau_sum(const psl_sieve* sieve, uint32_t n_model, double eps,
                            uint64_t* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = sieve->tables.tail_tau_sum(n_model, eps); });
}

psl_status psl_sieve_save(const psl_sieve* sieve, const char* path) {
  if (psl_status s = require(sieve && path, "null argument")) return s;
  return wrap([&] { sieve->tables.save(path); });
}

psl_status psl_sieve_load(const char* path, psl_sieve** out) {
  if (psl_status s = require(path && out, "null argument")) return s;
  return wrap([&] { *out = new psl_sieve{psl::sieve_tables::load(path)}; });
}

/* ---- tau table ---- */

psl_status psl_tau_table_build(uint32_t n_model, psl_tau_table** out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = new psl_tau_table{psl::tau_table::build(n_model)}; });
}

void psl_tau_table_free(psl_tau_table* table) { delete table; }

uint32_t psl_tau_table_n(const psl_tau_table* table) {
  return table ? table->table.n_model() : 0;
}

psl_status psl_tau_table_count(const psl_tau_table* table, uint64_t n, uint32_t* out) {
  if (psl_status s = require(table && out, "null argument")) return s;
  return wrap([&] { *out = table->table.count(n); });
}

uint64_t psl_tau_table_total(const psl_tau_table* table) {
  return table ? table->table.total() : 0;
}

uint64_t psl_tau_table_second_moment(const psl_tau_table* table) {
  return table ? table->table.second_moment() : 0;
}

psl_status psl_tau_table_banded_moment(const psl_tau_table* table, const psl_sieve* sieve,
                                       psl_arith_fn which, double lo, double hi, int power,
                                       uint64_t* out) {
  if (psl_status s = require(table && sieve && out, "null argument")) return s;
  return wrap(
      [&] { *out = table->table.banded_moment(sieve->tables, to_fn(which), lo, hi, power); });
}

psl_status psl_tau_n_single(uint32_t n_model, uint64_t n, const psl_sieve* sieve,
                            uint32_t* out) {
  if (psl_status s = require(sieve && out, "null argument")) return s;
  return wrap([&] { *out = psl::tau_n_single(n_model, n, sieve->tables); });
}

psl_status psl_tau_table_save(const psl_tau_table* table, const char* path) {
  if (psl_status s = require(table && path, "null argument")) return s;
  return wrap([&] { table->table.save(path); });
}

psl_status psl_tau_table_load(const char* path, psl_tau_table** out) {
  if (psl_status s = require(path && out, "null argument")) return s;
  return wrap([&] { *out = new psl_tau_table{psl::tau_table::load(path)}; });
}

psl_status psl_mult_table_count(uint64_t x, uint64_t* out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = psl::mult_table_count(x); });
}

psl_status psl_heuristic_ratio_report(const psl_tau_table* table, const psl_sieve* sieve,
                                      size_t sample_size, uint64_t seed,
                                      psl_ratio_report* out) {
  if (psl_status s = require(table && sieve && out, "null argument")) return s;
  return wrap([&] {
    psl::ratio_report r =
        psl::heuristic_ratio_report(table->table, sieve->tables, sample_size, seed);
    *out = psl_ratio_report{r.primary_count, r.primary_q05, r.primary_q50, r.primary_q95,
                            r.refined_count, r.refined_q05, r.refined_q50, r.refined_q95};
  });
}

/* ---- random model ---- */

psl_status psl_sample_set(uint32_t n_max, double alpha, uint64_t seed, uint32_t** elements,
                          size_t* count) {
  if (psl_status s = require(elements && count, "null argument")) return s;
  return wrap([&] {
    std::vector<uint32_t> e = psl::sample_set({n_max, alpha, seed});
    auto* buf = static_cast<uint32_t*>(std::malloc(e.size() * sizeof(uint32_t)));
    if (!buf && !e.empty()) throw std::bad_alloc();
    if (!e.empty()) std::memcpy(buf, e.data(), e.size() * sizeof(uint32_t));
    *elements = buf;
    *count = e.size();
  });
}

psl_status psl_product_stats_of(const uint32_t* elements, size_t count,
                                psl_product_stats* out) {
  if (psl_status s = require(out && (elements || count == 0), "null argument")) return s;
  return wrap([&] {
    psl::product_stats st = psl::compute_product_stats({elements, count});
    *out = psl_product_stats{st.set_size, st.product_set_size, st.energy,
                             st.trivial,  st.nontrivial,       st.deficiency};
  });
}

psl_status psl_quotient_set_size(const uint32_t* elements, size_t count, uint64_t* out) {
  if (psl_status s = require(out && (elements || count == 0), "null argument")) return s;
  return wrap([&] { *out = psl::quotient_set_size({elements, count}); });
}

psl_status psl_exact_expected_product_size(const psl_tau_table* table, double alpha,
                                           double* out) {
  if (psl_status s = require(table && out, "null argument")) return s;
  return wrap([&] { *out = psl::exact_expected_product_size(table->table, alpha); });
}

psl_status psl_main_term_expected_product_size(const psl_tau_table* table, double alpha,
                                               double* out) {
  if (psl_status s = require(table && out, "null argument")) return s;
  return wrap([&] { *out = psl::main_term_expected_product_size(table->table, alpha); });
}

psl_status psl_brute_force_expected_product_size(uint32_t n_max, double alpha, double* out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = psl::brute_force_expected_product_size(n_max, alpha); });
}

psl_status psl_expected_trivial(uint64_t n_max, double alpha, double* out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = psl::expected_trivial(n_max, alpha); });
}

psl_status psl_expected_deficiency_main_term(const psl_tau_table* table, double alpha,
                                             double* out) {
  if (psl_status s = require(table && out, "null argument")) return s;
  return wrap([&] { *out = psl::expected_deficiency_main_term(table->table, alpha); });
}

/* ---- threshold lab ---- */

psl_status psl_theta_statistic(double n, double alpha, double* out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = psl::theta_statistic(n, alpha); });
}

psl_status psl_theorem_alpha(double n, double k, double* out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = psl::theorem_alpha(n, k); });
}

psl_status psl_markov_bound(double expected_deficiency, double n, double alpha, double delta,
                            double* raw, double* clamped) {
  if (psl_status s = require(raw && clamped, "null argument")) return s;
  return wrap([&] {
    psl::markov_result r = psl::markov_bound(expected_deficiency, n, alpha, delta);
    *raw = r.raw;
    *clamped = r.clamped;
  });
}

psl_status psl_equality_regime_frequency(uint32_t n_max, double alpha, uint32_t trials,
                                         uint64_t seed, double* out) {
  if (psl_status s = require(out != nullptr, "out must not be null")) return s;
  return wrap([&] { *out = psl::equality_regime_frequency(n_max, alpha, trials, seed); });
}

psl_status psl_simulate_csv(uint32_t n_max, double alpha, uint32_t trials, double delta,
                            uint64_t seed, char** csv) {
  if (psl_status s = require(csv != nullptr, "csv must not be null")) return s;
  return wrap([&] {
    psl::summary_record rec =
        psl::simulate_cell(n_max, alpha, trials, delta, seed, /*compute_exact=*/true);
    *csv = dup_string(psl::summary_csv({&rec, 1}));
  });
}

psl_status psl_sweep_csv(const char* config_json, char** csv) {
  if (psl_status s = require(config_json && csv, "null argument")) return s;
  return wrap([&] { *csv = dup_string(psl::run_sweep_csv(config_json)); });
}

/* ---- bound suites ---- */

psl_status psl_run_bound_suite(const char* suite, uint64_t limit, psl_report_format format,
                               char** report, int* all_passed) {
  if (psl_status s = require(suite && report && all_passed, "null argument")) return s;
  return wrap([&] {
    std::string name = suite;
    std::unique_ptr<psl::sieve_tables> tables;
    if (psl::suite_needs_sieve(name)) {
      if (limit < 16) throw std::domain_error("bound suite: limit must be >= 16");
      tables = std::make_unique<psl::sieve_tables>(psl::sieve_tables::build(limit));
    }
    std::vector<psl::bound_report> rows =
        psl::run_bound_suite(name, tables.get(), limit, psl::bound_limits{});
    *all_passed = psl::all_gated_passed(rows) ? 1 : 0;
    std::string text =
        format == PSL_FORMAT_JSON ? psl::reports_json(rows) : psl::reports_csv(rows);
    *report = dup_string(text);
  });
}

} /* extern "C" */
