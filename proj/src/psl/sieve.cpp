#include "psl/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "psl/budget.hpp"
#include "psl/errors.hpp"
#include "psl/rng.hpp"

namespace psl {
namespace {

constexpr char kSieveMagic[8] = {'P', 'S', 'L', 'S', 'I', 'E', 'V', 'E'};
constexpr uint32_t kSieveVersion = 1;

uint64_t sieve_bytes(uint64_t limit) {
  return (limit + 1) * (4 + 1 + 1 + 1 + 2);
}

}  // namespace

uint64_t sieve_tables::check(uint64_t n) const {
  if (n < 1 || n > limit_)
    throw std::out_of_range("sieve_tables: n = " + std::to_string(n) +
                            " outside [1, " + std::to_string(limit_) + "]");
  return n;
}

sieve_tables sieve_tables::build(uint64_t limit) {
  if (limit < 1) throw std::domain_error("sieve_tables: limit must be >= 1");
  if (limit > 0xFFFFFFFFull)
    throw std::domain_error("sieve_tables: limit must fit in 32 bits");
  charge_budget(sieve_bytes(limit), "sieve tables");

  sieve_tables t;
  t.limit_ = limit;
  t.spf_.assign(limit + 1, 0);
  t.omega_.assign(limit + 1, 0);
  t.big_omega_.assign(limit + 1, 0);
  t.big_omega_2_.assign(limit + 1, 0);
  t.tau_.assign(limit + 1, 0);

  t.spf_[1] = 1;
  t.tau_[1] = 1;
  if (limit == 1) return t;

  // Smallest prime factor: mark composites from each prime's square, first
  // writer wins (i.e. the smallest prime).
  for (uint64_t i = 2; i <= limit; ++i) {
    if (t.spf_[i] == 0) {
      t.spf_[i] = static_cast<uint32_t>(i);
      if (i <= limit / i)
        for (uint64_t j = i * i; j <= limit; j += i)
          if (t.spf_[j] == 0) t.spf_[j] = static_cast<uint32_t>(i);
    }
  }

  // Multiplicative bookkeeping: strip the smallest prime p from n to reach
  // r = n / p^a with spf(r) > p, then extend the values of r.
  for (uint64_t n = 2; n <= limit; ++n) {
    uint32_t p = t.spf_[n];
    uint64_t r = n / p;
    uint32_t a = 1;
    while (r % p == 0) {
      r /= p;
      ++a;
    }
    t.omega_[n] = static_cast<uint8_t>(t.omega_[r] + 1);
    t.big_omega_[n] = static_cast<uint8_t>(t.big_omega_[r] + a);
    t.big_omega_2_[n] = static_cast<uint8_t>(t.big_omega_2_[r] + (p == 2 ? 0 : a));
    t.tau_[n] = static_cast<uint16_t>(t.tau_[r] * (a + 1));
  }
  return t;
}

uint32_t sieve_tables::value(arith_fn f, uint64_t n) const {
  switch (f) {
    case arith_fn::omega: return omega(n);
    case arith_fn::big_omega: return big_omega(n);
    case arith_fn::big_omega_2: return big_omega_2(n);
  }
  throw std::domain_error("sieve_tables: bad arith_fn");
}

std::span<const uint8_t> sieve_tables::fn_raw(arith_fn f) const {
  switch (f) {
    case arith_fn::omega: return omega_;
    case arith_fn::big_omega: return big_omega_;
    case arith_fn::big_omega_2: return big_omega_2_;
  }
  throw std::domain_error("sieve_tables: bad arith_fn");
}

std::vector<uint64_t> sieve_tables::divisors(uint64_t n) const {
  check(n);
  std::vector<uint64_t> divs{1};
  uint64_t m = n;
  while (m > 1) {
    uint32_t p = spf_[m];
    uint32_t a = 0;
    while (m % p == 0) {
      m /= p;
      ++a;
    }
    size_t base = divs.size();
    uint64_t pk = 1;
    for (uint32_t e = 1; e <= a; ++e) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

double sieve_tables::weighted_power_sum(double y, uint64_t x, arith_fn which) const {
  if (!(y > 0.0)) throw std::domain_error("weighted_power_sum: y must be > 0");
  if (x < 1) throw std::domain_error("weighted_power_sum: x must be >= 1");
  check(x);

  std::span<const uint8_t> f = fn_raw(which);
  // f(n) <= 255 by storage; precompute y^k.
  double pw[256];
  pw[0] = 1.0;
  for (int k = 1; k < 256; ++k) pw[k] = pw[k - 1] * y;

  kahan_sum acc;
  for (uint64_t n = 1; n <= x; ++n) acc.add(pw[f[n]]);
  return acc.value();
}

uint64_t sieve_tables::tau_square_sum(uint64_t x) const {
  if (x < 1) throw std::domain_error("tau_square_sum: x must be >= 1");
  check(x);
  uint64_t total = 0;
  for (uint64_t n = 1; n <= x; ++n) {
    uint64_t m = n;
    uint64_t t = 1;
    while (m > 1) {
      uint32_t p = spf_[m];
      uint32_t a = 0;
      while (m % p == 0) {
        m /= p;
        ++a;
      }
      t *= 2 * a + 1;
    }
    total += t;
  }
  return total;
}

std::vector<uint64_t> sieve_tables::factor_histogram(uint64_t x, arith_fn which) const {
  if (x < 1) throw std::domain_error("factor_histogram: x must be >= 1");
  check(x);
  std::span<const uint8_t> f = fn_raw(which);
  uint8_t max_k = 0;
  for (uint64_t n = 1; n <= x; ++n) max_k = std::max(max_k, f[n]);
  std::vector<uint64_t> hist(static_cast<size_t>(max_k) + 1, 0);
  for (uint64_t n = 1; n <= x; ++n) ++hist[f[n]];
  return hist;
}

uint64_t sieve_tables::tail_tau_sum(uint64_t n_model, double eps) const {
  if (n_model < 16)
    throw std::domain_error("tail_tau_sum: N must be >= 16 (log log N > 0)");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("tail_tau_sum: eps must lie in (0, 1)");
  uint64_t n2 = n_model * n_model;
  check(n2);

  double lln = std::log(std::log(static_cast<double>(n_model)));
  double center = 2.0 * lln;
  double band = eps * lln;
  uint64_t total = 0;
  for (uint64_t n = 1; n <= n2; ++n) {
    if (std::abs(static_cast<double>(omega_[n]) - center) > band) total += tau_[n];
  }
  return total;
}

void sieve_tables::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("sieve_tables: cannot open " + path + " for writing");
  out.write(kSieveMagic, 8);
  uint32_t version = kSieveVersion;
  uint32_t limit32 = static_cast<uint32_t>(limit_);
  out.write(reinterpret_cast<const char*>(&version), 4);
  out.write(reinterpret_cast<const char*>(&limit32), 4);
  auto dump = [&](const void* p, size_t bytes) {
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(bytes));
  };
  dump(spf_.data(), spf_.size() * 4);
  dump(omega_.data(), omega_.size());
  dump(big_omega_.data(), big_omega_.size());
  dump(big_omega_2_.data(), big_omega_2_.size());
  dump(tau_.data(), tau_.size() * 2);
  if (!out) throw io_error("sieve_tables: write to " + path + " failed");
}

sieve_tables sieve_tables::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("sieve_tables: cannot open " + path);
  char magic[8];
  uint32_t version = 0, limit32 = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&limit32), 4);
  if (!in || std::memcmp(magic, kSieveMagic, 8) != 0)
    throw io_error("sieve_tables: " + path + " is not a PSLSIEVE container");
  if (version != kSieveVersion)
    throw io_error("sieve_tables: unsupported container version " + std::to_string(version));
  if (limit32 < 1) throw io_error("sieve_tables: corrupt header in " + path);
  charge_budget(sieve_bytes(limit32), "sieve tables");

  sieve_tables t;
  t.limit_ = limit32;
  t.spf_.resize(limit32 + 1);
  t.omega_.resize(limit32 + 1);
  t.big_omega_.resize(limit32 + 1);
  t.big_omega_2_.resize(limit32 + 1);
  t.tau_.resize(limit32 + 1);
  auto slurp = [&](void* p, size_t bytes) {
    in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(bytes));
  };
  slurp(t.spf_.data(), t.spf_.size() * 4);
  slurp(t.omega_.data(), t.omega_.size());
  slurp(t.big_omega_.data(), t.big_omega_.size());
  slurp(t.big_omega_2_.data(), t.big_omega_2_.size());
  slurp(t.tau_.data(), t.tau_.size() * 2);
  if (!in) throw io_error("sieve_tables: " + path + " is truncated");
  return t;
}

}  // namespace psl
