#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "psl/analytic.hpp"
#include "psl/sieve.hpp"
#include "support/oracles.hpp"

using psl::arith_fn;
using psl::bound_report;
using psl::sieve_tables;

TEST_CASE("truncated exp") {
  CHECK(psl::truncated_exp(3.7, 0) == 1.0);
  CHECK(psl::truncated_exp(-123.0, 0) == 1.0);
  CHECK(psl::truncated_exp(1.0, 2) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(psl::truncated_exp(-1.0, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  SUBCASE("converges to exp") {
    // 1e-12 relative: at x = 10 one ulp of exp(x) is already 3.6e-12.
    for (double x = -10.0; x <= 10.0; x += 2.5)
      CHECK(std::abs(psl::truncated_exp(x, 50) - std::exp(x)) <=
            1e-12 * std::max(1.0, std::exp(x)));
  }
  CHECK_THROWS_AS(psl::truncated_exp(1.0, -1), std::domain_error);
}

TEST_CASE("taylor inequality") {
  SUBCASE("positive x") {
    auto r = psl::taylor_inequality_check(1.0, 5);
    CHECK(r.passed.has_value());
    CHECK(*r.passed);
    CHECK(r.lhs > r.rhs);
  }
  SUBCASE("negative x, even n: exp below the truncation") {
    auto r = psl::taylor_inequality_check(-0.5, 2);
    CHECK(*r.passed);
    CHECK(r.lhs < r.rhs);
  }
  SUBCASE("negative x, odd n: exp above the truncation") {
    auto r = psl::taylor_inequality_check(-0.5, 3);
    CHECK(*r.passed);
    CHECK(r.lhs > r.rhs);
  }
  SUBCASE("200-point grid all pass") {
    auto rows = psl::run_bound_suite("taylor", nullptr, 0);
    CHECK(rows.size() == 200);
    for (const auto& r : rows) {
      REQUIRE(r.passed.has_value());
      REQUIRE(*r.passed);
    }
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(psl::taylor_inequality_check(0.0, 3), std::domain_error);
    CHECK_THROWS_AS(psl::taylor_inequality_check(31.0, 3), std::domain_error);
  }
}

TEST_CASE("norton ratio") {
  SUBCASE("x=4, h=0, m=2: lhs = 1 + 4 + 8") {
    auto r = psl::norton_ratio(4.0, 0.0, 2.0);
    CHECK(r.lhs == doctest::Approx(13.0).epsilon(1e-14));
  }
  SUBCASE("x=16, h=4, m=16 uses the sqrt cap") {
    auto r = psl::norton_ratio(16.0, 4.0, 16.0);
    double direct = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 16; ++k) term *= 16.0 / k;  // 16^16/16!
    for (int k = 4; k <= 16; ++k) {
      double t = 1.0;
      for (int j = 1; j <= k; ++j) t *= 16.0 / j;
      direct += t;
    }
    CHECK(r.lhs == doctest::Approx(direct).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(4.0 * term).epsilon(1e-12));
    CHECK(*r.passed);
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(psl::norton_ratio(4.0, 2.0, 2.0), std::domain_error);  // h = m
    CHECK_THROWS_AS(psl::norton_ratio(4.0, 1.0, 2.0), std::domain_error);  // m-h < sqrt x
    CHECK_THROWS_AS(psl::norton_ratio(4.0, 0.0, 5.0), std::domain_error);  // m > x
  }
  SUBCASE("suite band") {
    auto rows = psl::run_bound_suite("norton", nullptr, 0);
    CHECK(rows.size() >= 9);
    for (const auto& r : rows) {
      REQUIRE(r.passed.has_value());
      CHECK(*r.passed);
      CHECK(r.ratio >= 1e-2);
      CHECK(r.ratio <= 1e2);
    }
  }
}

TEST_CASE("landau ratio") {
  sieve_tables t = sieve_tables::build(256 * 256);
  SUBCASE("pi_1(256) counts prime powers") {
    uint64_t expected = 0;
    for (uint64_t n = 2; n <= 256; ++n)
      if (oracle::omega(n) == 1) ++expected;
    auto r = psl::landau_ratio(t, 16, 1);
    CHECK(r.lhs == doctest::Approx(static_cast<double>(expected)));
  }
  SUBCASE("out-of-regime flag") {
    auto r = psl::landau_ratio(t, 16, 6);
    bool found = false;
    for (auto& [k, v] : r.parameters)
      if (k == "in_regime") {
        found = true;
        CHECK(v == 0.0);
      }
    CHECK(found);
    CHECK(!r.passed.has_value());
  }
  SUBCASE("grid ratios finite") {
    for (uint32_t n : {16u, 64u, 256u})
      for (uint32_t k = 1; k <= 6; ++k) {
        auto r = psl::landau_ratio(t, n, k);
        CHECK(std::isfinite(r.ratio));
      }
  }
  CHECK_THROWS_AS(psl::landau_ratio(t, 16, 0), std::domain_error);
  CHECK_THROWS_AS(psl::landau_ratio(t, 300, 1), std::out_of_range);
}

TEST_CASE("erdos-kac report") {
  sieve_tables t = sieve_tables::build(100000);
  SUBCASE("guards") {
    CHECK_THROWS_AS(psl::erdos_kac_report(t, 10, arith_fn::omega), std::domain_error);
    CHECK_THROWS_AS(psl::erdos_kac_report(t, 200000, arith_fn::omega), std::out_of_range);
  }
  for (arith_fn f : {arith_fn::omega, arith_fn::big_omega, arith_fn::big_omega_2}) {
    auto rep = psl::erdos_kac_report(t, 100000, f);
    CHECK(rep.count == 100000);
    CHECK(rep.variance > 0.0);
    for (size_t i = 0; i + 1 < rep.cdf_empirical.size(); ++i)
      CHECK(rep.cdf_empirical[i] <= rep.cdf_empirical[i + 1]);
    CHECK(rep.cdf_empirical.back() <= 1.0);
    CHECK(rep.cdf_normal[3] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("histogram completeness") {
    // max omega at 10^5 is 6, which standardizes below 3, so the CDF grid
    // captures the full mass.
    auto rep = psl::erdos_kac_report(t, 100000, arith_fn::omega);
    CHECK(rep.cdf_empirical.back() == 1.0);
  }
  SUBCASE("gaussian tail reference at t = 2") {
    double q2 = 0.5 * std::erfc(2.0 / std::sqrt(2.0));
    double bound = std::exp(-2.0) / (2.0 * std::sqrt(2.0 * std::acos(-1.0)));
    CHECK(q2 <= bound);
  }
}

TEST_CASE("turan-kubilius tail") {
  sieve_tables t = sieve_tables::build(1000000);
  SUBCASE("beyond the max deviation the tail is empty") {
    auto r = psl::turan_kubilius_tail(t, 1000000, 50.0);
    CHECK(r.lhs == 0.0);
    CHECK(*r.passed);
  }
  SUBCASE("ceiling at x = 10^4 and 10^6") {
    for (uint64_t x : {10000ull, 1000000ull})
      for (double tt : {1.0, 2.0, 4.0, 8.0}) {
        auto r = psl::turan_kubilius_tail(t, x, tt);
        CHECK(r.lhs * tt * tt <= 10.0);
        CHECK(*r.passed);
      }
  }
  SUBCASE("nonincreasing in t") {
    double prev = 2.0;
    for (double tt : {1.0, 1.5, 2.0, 3.0, 5.0}) {
      auto r = psl::turan_kubilius_tail(t, 1000000, tt);
      CHECK(r.lhs <= prev);
      prev = r.lhs;
    }
  }
}

TEST_CASE("dyadic partial sum") {
  sieve_tables t = sieve_tables::build(60000);
  SUBCASE("N = 12 direct five-term sum") {
    double expected = 0.0;
    for (uint64_t v = 2; v <= 6; ++v)
      expected += 1.0 / (std::pow(2.0, oracle::big_omega(v)) * v *
                         std::sqrt(std::log(static_cast<double>(v))) *
                         std::log(12.0 / static_cast<double>(v)));
    auto r = psl::dyadic_partial_sum(t, 12);
    CHECK(r.lhs == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.lhs > 0.0);
  }
  SUBCASE("positive and gated") {
    for (uint64_t n : {12ull, 100ull, 10000ull, 120000ull}) {
      auto r = psl::dyadic_partial_sum(t, n);
      CHECK(r.lhs > 0.0);
      CHECK(*r.passed);
    }
  }
  CHECK_THROWS_AS(psl::dyadic_partial_sum(t, 11), std::domain_error);
  CHECK_THROWS_AS(psl::dyadic_partial_sum(t, 200000), std::out_of_range);
}

TEST_CASE("tail tau bound") {
  SUBCASE("eta formula") {
    CHECK(psl::tail_tau_eta(1.0) == doctest::Approx(0.10819766).epsilon(1e-7));
    CHECK(psl::tail_tau_eta(0.01) < 1e-4);
    CHECK(psl::tail_tau_eta(0.01) > 0.0);
  }
  SUBCASE("N = 256 report") {
    sieve_tables t = sieve_tables::build(256 * 256);
    auto r = psl::tail_tau_bound_check(t, 256, 0.5);
    CHECK(r.lhs == static_cast<double>(t.tail_tau_sum(256, 0.5)));
    double eta = psl::tail_tau_eta(0.5);
    CHECK(r.rhs ==
          doctest::Approx(65536.0 * std::pow(std::log(256.0), 1.0 - 2.0 * eta)).epsilon(1e-12));
    CHECK(!r.passed.has_value());
  }
}

TEST_CASE("suite plumbing") {
  CHECK_THROWS_AS(psl::run_bound_suite("bogus", nullptr, 0), std::domain_error);
  CHECK_THROWS_AS(psl::run_bound_suite("ek", nullptr, 100000), std::domain_error);
  CHECK(!psl::suite_needs_sieve("taylor"));
  CHECK(psl::suite_needs_sieve("ek"));

  sieve_tables t = sieve_tables::build(20000);
  auto rows = psl::run_bound_suite("all", &t, 20000);
  CHECK(rows.size() > 220);

  SUBCASE("serialization shapes") {
    std::string csv = psl::reports_csv(rows);
    CHECK(csv.rfind("name,parameters,lhs,rhs,ratio,passed\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rows.size()) + 1);
    std::string json = psl::reports_json(rows);
    CHECK(json.find("\"name\"") != std::string::npos);
    CHECK(json.find("\"ratio\"") != std::string::npos);
  }
  SUBCASE("gating") {
    psl::bound_report ok;
    ok.passed = true;
    psl::bound_report bad;
    bad.passed = false;
    psl::bound_report ungated;
    std::vector<psl::bound_report> v{ok, ungated};
    CHECK(psl::all_gated_passed(v));
    v.push_back(bad);
    CHECK(!psl::all_gated_passed(v));
  }
}
