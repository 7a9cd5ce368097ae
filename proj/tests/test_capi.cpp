// Black-box exercise of the shared-library surface: only psl/psl.h.
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "psl/psl.h"

TEST_CASE("version and status names") {
  CHECK(psl_version() != nullptr);
  CHECK(std::string(psl_status_name(PSL_OK)) == "ok");
  CHECK(std::string(psl_status_name(PSL_ERR_CAPACITY)) == "capacity");
}

TEST_CASE("sieve handle lifecycle and queries") {
  psl_sieve* sieve = nullptr;
  REQUIRE(psl_sieve_build(1000, &sieve) == PSL_OK);
  REQUIRE(sieve != nullptr);
  CHECK(psl_sieve_limit(sieve) == 1000);

  uint32_t v = 0;
  CHECK(psl_sieve_tau(sieve, 12, &v) == PSL_OK);
  CHECK(v == 6);
  CHECK(psl_sieve_fn(sieve, PSL_FN_OMEGA, 12, &v) == PSL_OK);
  CHECK(v == 2);
  CHECK(psl_sieve_fn(sieve, PSL_FN_BIG_OMEGA, 12, &v) == PSL_OK);
  CHECK(v == 3);
  CHECK(psl_sieve_fn(sieve, PSL_FN_BIG_OMEGA_2, 12, &v) == PSL_OK);
  CHECK(v == 1);
  CHECK(psl_sieve_spf(sieve, 91, &v) == PSL_OK);
  CHECK(v == 7);

  SUBCASE("range error with message") {
    CHECK(psl_sieve_tau(sieve, 1001, &v) == PSL_ERR_RANGE);
    CHECK(std::strlen(psl_last_error()) > 0);
  }
  SUBCASE("divisors buffer") {
    uint64_t* divs = nullptr;
    size_t count = 0;
    REQUIRE(psl_sieve_divisors(sieve, 12, &divs, &count) == PSL_OK);
    REQUIRE(count == 6);
    CHECK(divs[0] == 1);
    CHECK(divs[5] == 12);
    psl_free(divs);
  }
  SUBCASE("weighted power sum and histogram") {
    double s = 0.0;
    CHECK(psl_weighted_power_sum(sieve, 2.0, 10, PSL_FN_BIG_OMEGA, &s) == PSL_OK);
    CHECK(s == doctest::Approx(33.0));
    uint64_t* counts = nullptr;
    size_t bins = 0;
    REQUIRE(psl_factor_histogram(sieve, 10, PSL_FN_OMEGA, &counts, &bins) == PSL_OK);
    REQUIRE(bins >= 2);
    CHECK(counts[1] == 7);
    psl_free(counts);
  }
  SUBCASE("tau square sum") {
    uint64_t s = 0;
    CHECK(psl_tau_square_sum(sieve, 10, &s) == PSL_OK);
    CHECK(s == 48);
  }
  SUBCASE("tail tau sum") {
    uint64_t s = 0;
    CHECK(psl_tail_tau_sum(sieve, 16, 0.5, &s) == PSL_OK);
    CHECK(s > 0);
    CHECK(psl_tail_tau_sum(sieve, 4, 0.5, &s) == PSL_ERR_DOMAIN);
  }
  SUBCASE("save and load") {
    CHECK(psl_sieve_save(sieve, "capi_sieve.psl") == PSL_OK);
    psl_sieve* back = nullptr;
    REQUIRE(psl_sieve_load("capi_sieve.psl", &back) == PSL_OK);
    CHECK(psl_sieve_limit(back) == 1000);
    psl_sieve_free(back);
    std::remove("capi_sieve.psl");
    CHECK(psl_sieve_load("missing_file.psl", &back) == PSL_ERR_IO);
  }
  psl_sieve_free(sieve);
}

TEST_CASE("capacity error carries both byte counts") {
  uint64_t saved = psl_memory_budget_bytes();
  psl_set_memory_budget_bytes(512);
  psl_sieve* sieve = nullptr;
  CHECK(psl_sieve_build(100000, &sieve) == PSL_ERR_CAPACITY);
  std::string msg = psl_last_error();
  CHECK(msg.find(std::to_string(9 * 100001ull)) != std::string::npos);
  CHECK(msg.find("512") != std::string::npos);
  psl_set_memory_budget_bytes(saved);
  CHECK(psl_memory_budget_bytes() == saved);
}

TEST_CASE("tau table and expectations") {
  psl_tau_table* table = nullptr;
  REQUIRE(psl_tau_table_build(2, &table) == PSL_OK);
  CHECK(psl_tau_table_n(table) == 2);
  CHECK(psl_tau_table_total(table) == 4);
  CHECK(psl_tau_table_second_moment(table) == 6);
  uint32_t c = 0;
  CHECK(psl_tau_table_count(table, 2, &c) == PSL_OK);
  CHECK(c == 2);

  double v = 0.0;
  CHECK(psl_exact_expected_product_size(table, 0.5, &v) == PSL_OK);
  CHECK(v == 1.25);
  CHECK(psl_exact_expected_product_size(table, 1.5, &v) == PSL_ERR_DOMAIN);
  CHECK(psl_brute_force_expected_product_size(2, 0.5, &v) == PSL_OK);
  CHECK(v == doctest::Approx(1.25));
  CHECK(psl_brute_force_expected_product_size(25, 0.5, &v) == PSL_ERR_DOMAIN);
  CHECK(psl_expected_trivial(2, 0.5, &v) == PSL_OK);
  CHECK(v == doctest::Approx(1.25));
  CHECK(psl_expected_deficiency_main_term(table, 0.0, &v) == PSL_OK);
  CHECK(v == 0.0);

  SUBCASE("banded moment through the C surface") {
    psl_sieve* sieve = nullptr;
    REQUIRE(psl_sieve_build(16, &sieve) == PSL_OK);
    uint64_t banded = 0;
    CHECK(psl_tau_table_banded_moment(table, sieve, PSL_FN_BIG_OMEGA, 0, 99, 1, &banded) ==
          PSL_OK);
    CHECK(banded == 4);
    psl_sieve_free(sieve);
  }
  SUBCASE("single tau_N") {
    psl_sieve* sieve = nullptr;
    REQUIRE(psl_sieve_build(30, &sieve) == PSL_OK);
    uint32_t single = 0;
    CHECK(psl_tau_n_single(5, 25, sieve, &single) == PSL_OK);
    CHECK(single == 1);
    psl_sieve_free(sieve);
  }
  SUBCASE("table round trip") {
    CHECK(psl_tau_table_save(table, "capi_tau.psl") == PSL_OK);
    psl_tau_table* back = nullptr;
    REQUIRE(psl_tau_table_load("capi_tau.psl", &back) == PSL_OK);
    CHECK(psl_tau_table_total(back) == 4);
    psl_tau_table_free(back);
    std::remove("capi_tau.psl");
  }
  SUBCASE("heuristic ratio report") {
    psl_sieve* sieve = nullptr;
    psl_tau_table* t60 = nullptr;
    REQUIRE(psl_sieve_build(3600, &sieve) == PSL_OK);
    REQUIRE(psl_tau_table_build(60, &t60) == PSL_OK);
    psl_ratio_report a, b;
    REQUIRE(psl_heuristic_ratio_report(t60, sieve, 200, 7, &a) == PSL_OK);
    REQUIRE(psl_heuristic_ratio_report(t60, sieve, 200, 7, &b) == PSL_OK);
    CHECK(a.primary_count > 0);
    CHECK(a.primary_q50 == b.primary_q50);
    CHECK(a.refined_q05 <= a.refined_q95);
    psl_tau_table_free(t60);
    psl_sieve_free(sieve);
  }
  psl_tau_table_free(table);
}

TEST_CASE("random model surface") {
  uint32_t* elems = nullptr;
  size_t count = 0;
  REQUIRE(psl_sample_set(500, 0.2, 42, &elems, &count) == PSL_OK);
  CHECK(count > 50);
  psl_product_stats st;
  REQUIRE(psl_product_stats_of(elems, count, &st) == PSL_OK);
  CHECK(st.set_size == count);
  CHECK(st.trivial == (count * count + count) / 2);
  CHECK(st.energy >= st.trivial);
  psl_free(elems);

  uint32_t fixture[] = {1, 2, 3, 4, 6};
  REQUIRE(psl_product_stats_of(fixture, 5, &st) == PSL_OK);
  CHECK(st.product_set_size == 12);
  CHECK(st.energy == 21);
  CHECK(st.trivial == 15);
  CHECK(st.nontrivial == 6);
  CHECK(st.deficiency == 3);

  uint64_t q = 0;
  uint32_t trio[] = {1, 2, 4};
  CHECK(psl_quotient_set_size(trio, 3, &q) == PSL_OK);
  CHECK(q == 5);
}

TEST_CASE("threshold surface") {
  double v = 0.0;
  CHECK(psl_theorem_alpha(1e6, -5.0, &v) == PSL_OK);
  double theta = 0.0;
  CHECK(psl_theta_statistic(1e6, v, &theta) == PSL_OK);
  CHECK(theta == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(psl_theorem_alpha(100.0, 9.0, &v) == PSL_ERR_DOMAIN);

  double raw = 0.0, clamped = 0.0;
  CHECK(psl_markov_bound(3.0, 100, 0.1, 0.5, &raw, &clamped) == PSL_OK);
  CHECK(raw == doctest::Approx(2.0 * 3.0 / (0.5 * 100.0)));
  CHECK(clamped <= 1.0);

  double freq = 0.0;
  CHECK(psl_equality_regime_frequency(100, 0.0, 10, 1, &freq) == PSL_OK);
  CHECK(freq == 0.0);
}

TEST_CASE("simulate and sweep buffers") {
  char* csv = nullptr;
  REQUIRE(psl_simulate_csv(100, 0.05, 5, 0.1, 42, &csv) == PSL_OK);
  std::string text = csv;
  psl_free(csv);
  CHECK(text.rfind("n,alpha,theta,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);

  char* csv2 = nullptr;
  REQUIRE(psl_simulate_csv(100, 0.05, 5, 0.1, 42, &csv2) == PSL_OK);
  CHECK(text == csv2);
  psl_free(csv2);

  SUBCASE("small N simulate works") {
    char* tiny = nullptr;
    REQUIRE(psl_simulate_csv(2, 0.5, 3, 0.1, 1, &tiny) == PSL_OK);
    CHECK(std::string(tiny).find("\n2,0.5,") != std::string::npos);
    psl_free(tiny);
  }
  SUBCASE("sweep error paths") {
    char* out = nullptr;
    CHECK(psl_sweep_csv("{}", &out) == PSL_ERR_PARSE);
    CHECK(std::string(psl_last_error()).find("n_values") != std::string::npos);
  }
  SUBCASE("sweep happy path") {
    char* out = nullptr;
    const char* cfg =
        "{\"n_values\":[100],\"schedule\":{\"kind\":\"fixed\",\"value\":0.05},"
        "\"trials\":4,\"delta\":0.1}";
    REQUIRE(psl_sweep_csv(cfg, &out) == PSL_OK);
    std::string rows = out;
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 2);
    psl_free(out);
  }
}

TEST_CASE("bound suite buffers") {
  char* report = nullptr;
  int all_passed = -1;
  REQUIRE(psl_run_bound_suite("taylor", 0, PSL_FORMAT_CSV, &report, &all_passed) == PSL_OK);
  CHECK(all_passed == 1);
  CHECK(std::string(report).rfind("name,parameters,", 0) == 0);
  psl_free(report);

  REQUIRE(psl_run_bound_suite("taylor", 0, PSL_FORMAT_JSON, &report, &all_passed) == PSL_OK);
  CHECK(std::string(report).find("\"name\": \"taylor\"") != std::string::npos);
  psl_free(report);

  CHECK(psl_run_bound_suite("bogus", 0, PSL_FORMAT_CSV, &report, &all_passed) ==
        PSL_ERR_DOMAIN);
}
