#include "psl/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "psl/csvfmt.hpp"
#include "psl/rng.hpp"

namespace psl {
namespace {

constexpr int kTermCap = 5000;

double safe_ratio(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return std::numeric_limits<double>::quiet_NaN();
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

}  // namespace

double truncated_exp(double x, int n) {
  if (n < 0) throw std::domain_error("truncated_exp: n must be >= 0");
  int terms = std::min(n, kTermCap);
  kahan_sum acc;
  double term = 1.0;
  acc.add(term);
  for (int k = 1; k <= terms; ++k) {
    term *= x / k;
    acc.add(term);
  }
  return acc.value();
}

bound_report taylor_inequality_check(double x, int n) {
  if (x == 0.0) throw std::domain_error("taylor_inequality_check: x must be nonzero");
  if (!(std::abs(x) <= 30.0))
    throw std::domain_error("taylor_inequality_check: |x| must be <= 30");
  if (n < 0) throw std::domain_error("taylor_inequality_check: n must be >= 0");

  double e = std::exp(x);
  double t = truncated_exp(x, n);
  bool expect_greater = x > 0.0 || (n % 2 == 1);
  bool ok = expect_greater ? e > t : e < t;

  bound_report rep;
  rep.name = "taylor";
  rep.parameters = {{"x", x}, {"n", static_cast<double>(n)}};
  rep.lhs = e;
  rep.rhs = t;
  rep.ratio = safe_ratio(e, t);
  rep.passed = ok;
  return rep;
}

bound_report norton_ratio(double x, double h, double m, const bound_limits& limits) {
  if (!(h >= 0.0 && h < m && m <= x))
    throw std::domain_error("norton_ratio: need 0 <= h < m <= x");
  if (!(m - h >= std::sqrt(x)))
    throw std::domain_error("norton_ratio: need m - h >= sqrt(x)");

  int k_lo = static_cast<int>(std::ceil(h));
  int k_hi = static_cast<int>(std::floor(m));
  k_hi = std::min(k_hi, kTermCap);

  kahan_sum acc;
  double term = 1.0;  // x^0/0!
  for (int k = 0; k <= k_hi; ++k) {
    if (k > 0) term *= x / k;
    if (k >= k_lo) acc.add(term);
  }
  double lhs = acc.value();

  double cap = m == x ? std::sqrt(x) : std::min(std::sqrt(x), x / (x - m));
  double floor_m = std::floor(m);
  double rhs = cap * std::exp(m * std::log(x) - std::lgamma(floor_m + 1.0));

  bound_report rep;
  rep.name = "norton";
  rep.parameters = {{"x", x}, {"h", h}, {"m", m}};
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.ratio = safe_ratio(lhs, rhs);
  rep.passed = rep.ratio >= limits.norton_lo && rep.ratio <= limits.norton_hi;
  return rep;
}

bound_report landau_ratio(const sieve_tables& tables, uint32_t n_model, uint32_t k,
                          const bound_limits& limits) {
  if (n_model < 16) throw std::domain_error("landau_ratio: N must be >= 16");
  if (k < 1) throw std::domain_error("landau_ratio: k must be >= 1");
  uint64_t n2 = static_cast<uint64_t>(n_model) * n_model;
  if (tables.limit() < n2) throw std::out_of_range("landau_ratio: sieve limit below N^2");

  std::span<const uint8_t> omega = tables.omega_raw();
  uint64_t pi_k = 0;
  for (uint64_t n = 1; n <= n2; ++n)
    if (omega[n] == k) ++pi_k;

  double log_n = std::log(static_cast<double>(n_model));
  double lln = std::log(log_n);
  double rhs = static_cast<double>(n2) / log_n *
               std::exp((k - 1) * std::log(lln) - std::lgamma(static_cast<double>(k)));

  bound_report rep;
  rep.name = "landau";
  rep.parameters = {{"n", static_cast<double>(n_model)},
                    {"k", static_cast<double>(k)},
                    {"in_regime", k <= limits.landau_regime_a * lln ? 1.0 : 0.0}};
  rep.lhs = static_cast<double>(pi_k);
  rep.rhs = rhs;
  rep.ratio = safe_ratio(rep.lhs, rhs);
  return rep;
}

erdos_kac_summary erdos_kac_report(const sieve_tables& tables, uint64_t x, arith_fn which) {
  if (x < 16) throw std::domain_error("erdos_kac_report: x must be >= 16");
  if (x > tables.limit()) throw std::out_of_range("erdos_kac_report: x above sieve limit");

  std::span<const uint8_t> f = tables.fn_raw(which);
  std::array<uint64_t, 256> hist{};
  for (uint64_t n = 1; n <= x; ++n) ++hist[f[n]];

  double llx = std::log(std::log(static_cast<double>(x)));
  double scale = std::sqrt(llx);

  erdos_kac_summary rep;
  rep.count = x;
  double inv_x = 1.0 / static_cast<double>(x);

  double mean = 0.0;
  for (size_t k = 0; k < hist.size(); ++k) {
    if (!hist[k]) continue;
    double z = (static_cast<double>(k) - llx) / scale;
    mean += z * (static_cast<double>(hist[k]) * inv_x);
  }
  double m2 = 0.0, m3 = 0.0;
  for (size_t k = 0; k < hist.size(); ++k) {
    if (!hist[k]) continue;
    double z = (static_cast<double>(k) - llx) / scale - mean;
    double w = static_cast<double>(hist[k]) * inv_x;
    m2 += z * z * w;
    m3 += z * z * z * w;
  }
  rep.mean = mean;
  rep.variance = m2;
  rep.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;

  for (size_t gi = 0; gi < kErdosKacGrid.size(); ++gi) {
    double t = kErdosKacGrid[gi];
    uint64_t below = 0;
    for (size_t k = 0; k < hist.size(); ++k) {
      if (!hist[k]) continue;
      double z = (static_cast<double>(k) - llx) / scale;
      if (z <= t) below += hist[k];
    }
    rep.cdf_empirical[gi] = static_cast<double>(below) * inv_x;
    rep.cdf_normal[gi] = normal_cdf(t);
  }
  return rep;
}

bound_report turan_kubilius_tail(const sieve_tables& tables, uint64_t x, double t,
                                 const bound_limits& limits) {
  if (x < 16) throw std::domain_error("turan_kubilius_tail: x must be >= 16");
  if (x > tables.limit()) throw std::out_of_range("turan_kubilius_tail: x above sieve limit");
  if (!(t >= 1.0)) throw std::domain_error("turan_kubilius_tail: t must be >= 1");

  std::span<const uint8_t> omega = tables.omega_raw();
  double llx = std::log(std::log(static_cast<double>(x)));
  double band = t * std::sqrt(llx);
  uint64_t outside = 0;
  for (uint64_t n = 1; n <= x; ++n)
    if (std::abs(static_cast<double>(omega[n]) - llx) > band) ++outside;

  bound_report rep;
  rep.name = "turan_kubilius";
  rep.parameters = {{"x", static_cast<double>(x)}, {"t", t}};
  rep.lhs = static_cast<double>(outside) / static_cast<double>(x);
  rep.rhs = 1.0 / (t * t);
  rep.ratio = safe_ratio(rep.lhs, rep.rhs);
  rep.passed = rep.lhs * t * t <= limits.tk_ceiling;
  return rep;
}

bound_report dyadic_partial_sum(const sieve_tables& tables, uint64_t n,
                                const bound_limits& limits) {
  if (n < 12) throw std::domain_error("dyadic_partial_sum: N must be >= 12");
  uint64_t half = n / 2;
  if (half > tables.limit())
    throw std::out_of_range("dyadic_partial_sum: sieve limit below N/2");

  std::span<const uint8_t> big_omega = tables.big_omega_raw();
  double inv2[64];
  inv2[0] = 1.0;
  for (int k = 1; k < 64; ++k) inv2[k] = inv2[k - 1] * 0.5;

  double n_real = static_cast<double>(n);
  kahan_sum acc;
  for (uint64_t t = 2; t <= half; ++t) {
    double td = static_cast<double>(t);
    acc.add(inv2[big_omega[t]] / (td * std::sqrt(std::log(td)) * std::log(n_real / td)));
  }

  bound_report rep;
  rep.name = "dyadic_partial_sum";
  rep.parameters = {{"n", n_real}};
  rep.lhs = acc.value();
  rep.rhs = std::log(std::log(n_real)) / std::log(n_real);
  rep.ratio = safe_ratio(rep.lhs, rep.rhs);
  rep.passed = rep.ratio <= limits.dyadic_ceiling;
  return rep;
}

double tail_tau_eta(double eps) {
  double half = eps / 2.0;
  return (1.0 + half) * std::log1p(half) - half;
}

bound_report tail_tau_bound_check(const sieve_tables& tables, uint32_t n_model, double eps) {
  uint64_t lhs = tables.tail_tau_sum(n_model, eps);
  double eta = tail_tau_eta(eps);
  double log_n = std::log(static_cast<double>(n_model));
  double rhs = static_cast<double>(n_model) * static_cast<double>(n_model) *
               std::pow(log_n, 1.0 - 2.0 * eta);

  bound_report rep;
  rep.name = "tail_tau";
  rep.parameters = {{"n", static_cast<double>(n_model)}, {"eps", eps}, {"eta", eta}};
  rep.lhs = static_cast<double>(lhs);
  rep.rhs = rhs;
  rep.ratio = safe_ratio(rep.lhs, rhs);
  return rep;
}

namespace {

void append_taylor_suite(std::vector<bound_report>& out) {
  // 20 x-values by 10 truncation orders.
  for (int xi = 0; xi < 20; ++xi) {
    double x = -9.5 + xi;
    if (xi >= 10) x = 0.5 + (xi - 10);
    for (int n = 0; n <= 9; ++n) out.push_back(taylor_inequality_check(x, n));
  }
}

void append_norton_suite(std::vector<bound_report>& out, const bound_limits& limits) {
  for (double x : {16.0, 64.0, 100.0}) {
    double r = std::sqrt(x);
    for (double m : {r, x / 2.0, 3.0 * x / 4.0, x}) {
      for (int hi = 0; hi < 2; ++hi) {
        double h = hi == 0 ? 0.0 : m - r;
        if (hi == 1 && h == 0.0) continue;  // duplicate of the h = 0 row
        if (!(h >= 0.0 && h < m && m <= x && m - h >= r)) continue;
        out.push_back(norton_ratio(x, h, m, limits));
      }
    }
  }
}

void append_landau_suite(std::vector<bound_report>& out, const sieve_tables& tables,
                         uint64_t limit, const bound_limits& limits) {
  for (uint32_t n : {16u, 64u, 256u}) {
    if (static_cast<uint64_t>(n) * n > limit) continue;
    for (uint32_t k = 1; k <= 6; ++k) out.push_back(landau_ratio(tables, n, k, limits));
  }
}

const char* fn_name(arith_fn f) {
  switch (f) {
    case arith_fn::omega: return "omega";
    case arith_fn::big_omega: return "big_omega";
    case arith_fn::big_omega_2: return "big_omega_2";
  }
  return "?";
}

void append_ek_suite(std::vector<bound_report>& out, const sieve_tables& tables,
                     uint64_t limit, const bound_limits& limits) {
  uint64_t x = std::min<uint64_t>(limit, tables.limit());
  if (x < 16) return;
  for (arith_fn f : {arith_fn::omega, arith_fn::big_omega, arith_fn::big_omega_2}) {
    erdos_kac_summary ek = erdos_kac_report(tables, x, f);
    std::string tag = fn_name(f);

    bound_report mean;
    mean.name = "ek_mean_" + tag;
    mean.parameters = {{"x", static_cast<double>(x)}};
    mean.lhs = ek.mean;
    mean.rhs = 0.0;
    mean.ratio = std::numeric_limits<double>::quiet_NaN();
    out.push_back(mean);

    bound_report var;
    var.name = "ek_variance_" + tag;
    var.parameters = {{"x", static_cast<double>(x)}};
    var.lhs = ek.variance;
    var.rhs = 1.0;
    var.ratio = ek.variance;
    var.passed = ek.variance >= limits.ek_variance_lo && ek.variance <= limits.ek_variance_hi;
    out.push_back(var);

    bound_report skew;
    skew.name = "ek_skewness_" + tag;
    skew.parameters = {{"x", static_cast<double>(x)}};
    skew.lhs = ek.skewness;
    skew.rhs = 0.0;
    skew.ratio = std::numeric_limits<double>::quiet_NaN();
    out.push_back(skew);

    uint32_t violations = 0;
    for (size_t i = 0; i + 1 < ek.cdf_empirical.size(); ++i)
      if (ek.cdf_empirical[i] > ek.cdf_empirical[i + 1]) ++violations;
    bound_report mono;
    mono.name = "ek_cdf_monotone_" + tag;
    mono.parameters = {{"x", static_cast<double>(x)}};
    mono.lhs = violations;
    mono.rhs = 0.0;
    mono.ratio = std::numeric_limits<double>::quiet_NaN();
    mono.passed = violations == 0;
    out.push_back(mono);

    for (size_t i = 0; i < kErdosKacGrid.size(); ++i) {
      bound_report cdf;
      cdf.name = "ek_cdf_" + tag;
      cdf.parameters = {{"x", static_cast<double>(x)}, {"t", kErdosKacGrid[i]}};
      cdf.lhs = ek.cdf_empirical[i];
      cdf.rhs = ek.cdf_normal[i];
      cdf.ratio = safe_ratio(cdf.lhs, cdf.rhs);
      out.push_back(cdf);
    }
  }

  // Gaussian tail reference: Q(2) <= e^{-2} / (2 sqrt(2 pi)).
  bound_report tail;
  tail.name = "ek_gauss_tail_ref";
  tail.parameters = {{"t", 2.0}};
  tail.lhs = 1.0 - normal_cdf(2.0);
  tail.rhs = std::exp(-2.0) / (2.0 * std::sqrt(2.0 * std::acos(-1.0)));
  tail.ratio = safe_ratio(tail.lhs, tail.rhs);
  tail.passed = tail.lhs <= tail.rhs;
  out.push_back(tail);
}

void append_tk_suite(std::vector<bound_report>& out, const sieve_tables& tables,
                     uint64_t limit, const bound_limits& limits) {
  for (uint64_t x : {10000ull, 1000000ull}) {
    if (x > limit || x > tables.limit()) continue;
    for (double t : {1.0, 2.0, 4.0, 8.0})
      out.push_back(turan_kubilius_tail(tables, x, t, limits));
  }
}

void append_dyadic_suite(std::vector<bound_report>& out, const sieve_tables& tables,
                         uint64_t limit, const bound_limits& limits) {
  for (uint64_t n : {1000ull, 100000ull, 10000000ull}) {
    if (n / 2 > limit || n / 2 > tables.limit()) continue;
    out.push_back(dyadic_partial_sum(tables, n, limits));
  }
}

void append_tailtau_suite(std::vector<bound_report>& out, const sieve_tables& tables,
                          uint64_t limit) {
  for (uint32_t n : {16u, 64u, 256u}) {
    if (static_cast<uint64_t>(n) * n > limit || static_cast<uint64_t>(n) * n > tables.limit())
      continue;
    for (double eps : {0.25, 0.5, 0.75}) out.push_back(tail_tau_bound_check(tables, n, eps));
  }
}

}  // namespace

bool suite_needs_sieve(const std::string& suite) {
  return suite == "landau" || suite == "ek" || suite == "tk" || suite == "dyadic" ||
         suite == "tailtau" || suite == "all";
}

std::vector<bound_report> run_bound_suite(const std::string& suite,
                                          const sieve_tables* tables, uint64_t limit,
                                          const bound_limits& limits) {
  std::vector<bound_report> out;
  bool known = false;

  auto want = [&](const char* name) {
    bool match = suite == name || suite == "all";
    known = known || suite == name;
    return match;
  };
  auto need_tables = [&]() -> const sieve_tables& {
    if (!tables) throw std::domain_error("bound suite '" + suite + "' needs sieve tables");
    return *tables;
  };

  if (want("taylor")) append_taylor_suite(out);
  if (want("norton")) append_norton_suite(out, limits);
  if (want("landau")) append_landau_suite(out, need_tables(), limit, limits);
  if (want("ek")) append_ek_suite(out, need_tables(), limit, limits);
  if (want("tk")) append_tk_suite(out, need_tables(), limit, limits);
  if (want("dyadic")) append_dyadic_suite(out, need_tables(), limit, limits);
  if (want("tailtau")) append_tailtau_suite(out, need_tables(), limit);

  if (!known && suite != "all")
    throw std::domain_error("unknown bound suite '" + suite + "'");
  return out;
}

std::string reports_csv(std::span<const bound_report> reports) {
  std::string out = "name,parameters,lhs,rhs,ratio,passed\n";
  for (const bound_report& r : reports) {
    out += r.name;
    out += ',';
    for (size_t i = 0; i < r.parameters.size(); ++i) {
      if (i) out += ';';
      out += r.parameters[i].first;
      out += '=';
      out += format_real(r.parameters[i].second);
    }
    out += ',';
    out += format_real(r.lhs);
    out += ',';
    out += format_real(r.rhs);
    out += ',';
    out += format_real(r.ratio);
    out += ',';
    if (r.passed) out += *r.passed ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::string reports_json(std::span<const bound_report> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const bound_report& r : reports) {
    nlohmann::ordered_json obj;
    obj["name"] = r.name;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    obj["parameters"] = params;
    obj["lhs"] = r.lhs;
    obj["rhs"] = r.rhs;
    obj["ratio"] = std::isnan(r.ratio) ? nlohmann::ordered_json() : nlohmann::ordered_json(r.ratio);
    obj["passed"] = r.passed ? nlohmann::ordered_json(*r.passed) : nlohmann::ordered_json();
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

bool all_gated_passed(std::span<const bound_report> reports) {
  for (const bound_report& r : reports)
    if (r.passed && !*r.passed) return false;
  return true;
}

}  // namespace psl
