#include "psl/tau_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "psl/budget.hpp"
#include "psl/errors.hpp"
#include "psl/parallel.hpp"
#include "psl/rng.hpp"

namespace psl {
namespace {

constexpr char kTauMagic[8] = {'P', 'S', 'L', 'T', 'A', 'U', 'N', '\0'};
constexpr uint32_t kTauVersion = 1;

}  // namespace

tau_table tau_table::build(uint32_t n_model) {
  if (n_model < 1) throw std::domain_error("tau_table: N must be >= 1");
  uint64_t n2 = static_cast<uint64_t>(n_model) * n_model;
  charge_budget(2 * n2, "tau_N table");

  tau_table t;
  t.n_model_ = n_model;
  t.counts_.assign(n2, 0);

  // Partition the product range [1, N^2] into chunks; each chunk owns a
  // disjoint slice of counts_, so workers never write the same entry.
  const uint64_t chunk = 1ull << 22;
  uint16_t* counts = t.counts_.data();
  const uint64_t n64 = n_model;
  parallel_chunks(n2, chunk, [counts, n64](uint64_t lo0, uint64_t hi0, unsigned) {
    uint64_t lo = lo0 + 1, hi = hi0;  // products in [lo, hi]
    for (uint64_t j = 1; j <= n64 && j <= hi; ++j) {
      uint64_t k0 = (lo + j - 1) / j;
      if (k0 < 1) k0 = 1;
      uint64_t k1 = hi / j;
      if (k1 > n64) k1 = n64;
      for (uint64_t n = j * k0; k0 <= k1; ++k0, n += j) ++counts[n - 1];
    }
  });
  return t;
}

uint32_t tau_table::count(uint64_t n) const {
  if (n < 1 || n > size())
    throw std::out_of_range("tau_table: n = " + std::to_string(n) + " outside [1, N^2]");
  return counts_[n - 1];
}

uint64_t tau_table::total() const {
  uint64_t s = 0;
  for (uint16_t c : counts_) s += c;
  return s;
}

uint64_t tau_table::second_moment() const {
  uint64_t s = 0;
  for (uint16_t c : counts_) s += static_cast<uint64_t>(c) * c;
  return s;
}

uint64_t tau_table::banded_moment(const sieve_tables& tables, arith_fn which, double lo,
                                  double hi, int power) const {
  if (power != 1 && power != 2) throw std::domain_error("banded_moment: power must be 1 or 2");
  uint64_t n2 = size();
  if (tables.limit() < n2)
    throw std::out_of_range("banded_moment: sieve limit below N^2");
  if (lo > hi) return 0;

  std::span<const uint8_t> f = tables.fn_raw(which);
  uint64_t s = 0;
  for (uint64_t n = 1; n <= n2; ++n) {
    double v = f[n];
    if (v < lo || v > hi) continue;
    uint64_t c = counts_[n - 1];
    s += power == 1 ? c : c * c;
  }
  return s;
}

void tau_table::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("tau_table: cannot open " + path + " for writing");
  out.write(kTauMagic, 8);
  uint32_t version = kTauVersion;
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&n_model_), 4);
  out.write(reinterpret_cast<const char*>(counts_.data()),
            static_cast<std::streamsize>(counts_.size() * 2));
  if (!out) throw io_error("tau_table: write to " + path + " failed");
}

tau_table tau_table::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("tau_table: cannot open " + path);
  char magic[8];
  uint32_t version = 0, n_model = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&n_model), 4);
  if (!in || std::memcmp(magic, kTauMagic, 8) != 0)
    throw io_error("tau_table: " + path + " is not a PSLTAUN container");
  if (version != kTauVersion)
    throw io_error("tau_table: unsupported container version " + std::to_string(version));
  if (n_model < 1) throw io_error("tau_table: corrupt header in " + path);
  uint64_t n2 = static_cast<uint64_t>(n_model) * n_model;
  charge_budget(2 * n2, "tau_N table");

  tau_table t;
  t.n_model_ = n_model;
  t.counts_.resize(n2);
  in.read(reinterpret_cast<char*>(t.counts_.data()),
          static_cast<std::streamsize>(n2 * 2));
  if (!in) throw io_error("tau_table: " + path + " is truncated");
  return t;
}

uint32_t tau_n_single(uint32_t n_model, uint64_t n, const sieve_tables& tables) {
  if (n_model < 1) throw std::domain_error("tau_n_single: N must be >= 1");
  uint64_t n2 = static_cast<uint64_t>(n_model) * n_model;
  if (n < 1 || n > n2)
    throw std::out_of_range("tau_n_single: n outside [1, N^2]");
  uint32_t cnt = 0;
  for (uint64_t d : tables.divisors(n)) {
    if (d <= n_model && n <= d * n_model) ++cnt;
  }
  return cnt;
}

uint64_t mult_table_count(uint64_t x) {
  if (x < 1) throw std::domain_error("mult_table_count: x must be >= 1");
  uint64_t s = static_cast<uint64_t>(std::sqrt(static_cast<double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;

  uint64_t max_product = s * s;
  uint64_t words = max_product / 64 + 1;
  charge_budget(words * 8, "multiplication-table bitmap");

  std::vector<uint64_t> bits(words, 0);
  for (uint64_t a = 1; a <= s; ++a)
    for (uint64_t b = a; b <= s; ++b) {
      uint64_t p = a * b;
      bits[p >> 6] |= 1ull << (p & 63);
    }
  uint64_t count = 0;
  for (uint64_t w : bits) count += static_cast<uint64_t>(std::popcount(w));
  return count;
}

double heuristic_primary_ratio(uint32_t tau_n, uint32_t tau, uint32_t n_model) {
  return tau_n * std::log(static_cast<double>(n_model)) / tau;
}

double heuristic_refined_ratio(uint32_t tau_n, uint32_t tau, uint64_t n, uint32_t n_model) {
  double log_n_model = std::log(static_cast<double>(n_model));
  double den = 2.0 * tau * (1.0 - std::log(static_cast<double>(n)) / (2.0 * log_n_model));
  return tau_n / den;
}

namespace {

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  auto idx = static_cast<size_t>(std::llround(p * static_cast<double>(sorted.size() - 1)));
  return sorted[idx];
}

}  // namespace

ratio_report heuristic_ratio_report(const tau_table& table, const sieve_tables& tables,
                                    size_t sample_size, uint64_t seed) {
  uint64_t n2 = table.size();
  if (tables.limit() < n2)
    throw std::out_of_range("heuristic_ratio_report: sieve limit below N^2");
  uint32_t n_model = table.n_model();
  if (n_model < 2)
    throw std::domain_error("heuristic_ratio_report: N must be >= 2 (log N > 0)");

  ratio_report rep;
  if (sample_size == 0) return rep;

  std::vector<double> primary, refined;
  primary.reserve(sample_size);
  for (size_t i = 0; i < sample_size; ++i) {
    uint64_t n = 1 + stream_at(seed, i) % n2;
    uint32_t c = table.count(n);
    if (c == 0) continue;
    uint32_t tau = tables.tau(n);
    primary.push_back(heuristic_primary_ratio(c, tau, n_model));
    if (n < n2) {
      double r = heuristic_refined_ratio(c, tau, n, n_model);
      if (r > 0.0 && std::isfinite(r)) refined.push_back(r);
    }
  }
  std::sort(primary.begin(), primary.end());
  std::sort(refined.begin(), refined.end());
  rep.primary_count = primary.size();
  rep.primary_q05 = quantile(primary, 0.05);
  rep.primary_q50 = quantile(primary, 0.50);
  rep.primary_q95 = quantile(primary, 0.95);
  rep.refined_count = refined.size();
  rep.refined_q05 = quantile(refined, 0.05);
  rep.refined_q50 = quantile(refined, 0.50);
  rep.refined_q95 = quantile(refined, 0.95);
  return rep;
}

}  // namespace psl
