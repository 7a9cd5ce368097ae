#include "psl/random_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "psl/rng.hpp"

namespace psl {
namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::domain_error("alpha must lie in [0, 1)");
}

}  // namespace

std::vector<uint32_t> sample_set(const model_params& params) {
  check_alpha(params.alpha);
  if (params.n_max < 1) throw std::domain_error("sample_set: N must be >= 1");

  std::vector<uint32_t> out;
  out.reserve(static_cast<size_t>(params.alpha * params.n_max * 1.05) + 16);
  for (uint32_t i = 1; i <= params.n_max; ++i) {
    if (unit_double(stream_at(params.seed, i)) < params.alpha) out.push_back(i);
  }
  return out;
}

product_stats compute_product_stats(std::span<const uint32_t> elements) {
  product_stats st;
  uint64_t k = elements.size();
  st.set_size = k;
  st.trivial = (k * k + k) / 2;
  if (k == 0) return st;

  std::vector<uint64_t> products;
  products.reserve(st.trivial);
  for (size_t i = 0; i < elements.size(); ++i) {
    uint64_t a = elements[i];
    for (size_t j = i; j < elements.size(); ++j) products.push_back(a * elements[j]);
  }
  std::sort(products.begin(), products.end());

  uint64_t distinct = 0, energy = 0;
  for (size_t i = 0; i < products.size();) {
    size_t j = i;
    while (j < products.size() && products[j] == products[i]) ++j;
    uint64_t r = j - i;
    ++distinct;
    energy += r * r;
    i = j;
  }
  st.product_set_size = distinct;
  st.energy = energy;
  st.nontrivial = energy - st.trivial;
  st.deficiency = st.trivial - distinct;
  return st;
}

uint64_t product_set_size(std::span<const uint32_t> elements, product_size_scratch* scratch) {
  uint64_t k = elements.size();
  if (k <= 1) return k;

  uint64_t max_product = static_cast<uint64_t>(elements.back()) * elements.back();
  uint64_t pairs = (k * k + k) / 2;
  uint64_t words = max_product / 64 + 1;

  // Presence bitmap when the memset cost stays comparable to the pair
  // enumeration; sorted vector otherwise.
  constexpr uint64_t kMaxBitmapWords = (128ull << 20) / 8;
  bool use_bitmap = words <= kMaxBitmapWords && words <= 16 * pairs;

  product_size_scratch local;
  product_size_scratch& s = scratch ? *scratch : local;

  if (use_bitmap) {
    if (s.bitmap.size() < words) s.bitmap.resize(words);
    std::fill(s.bitmap.begin(), s.bitmap.begin() + static_cast<ptrdiff_t>(words), 0);
    for (size_t i = 0; i < elements.size(); ++i) {
      uint64_t a = elements[i];
      for (size_t j = i; j < elements.size(); ++j) {
        uint64_t p = a * elements[j];
        s.bitmap[p >> 6] |= 1ull << (p & 63);
      }
    }
    uint64_t count = 0;
    for (uint64_t w = 0; w < words; ++w)
      count += static_cast<uint64_t>(std::popcount(s.bitmap[w]));
    return count;
  }

  s.products.clear();
  s.products.reserve(pairs);
  for (size_t i = 0; i < elements.size(); ++i) {
    uint64_t a = elements[i];
    for (size_t j = i; j < elements.size(); ++j) s.products.push_back(a * elements[j]);
  }
  std::sort(s.products.begin(), s.products.end());
  return static_cast<uint64_t>(
      std::unique(s.products.begin(), s.products.end()) - s.products.begin());
}

uint64_t quotient_set_size(std::span<const uint32_t> elements) {
  if (elements.empty()) return 0;
  std::unordered_set<uint64_t> keys;
  keys.reserve(elements.size() * elements.size());
  for (uint32_t a : elements)
    for (uint32_t b : elements) {
      uint32_t g = std::gcd(a, b);
      keys.insert((static_cast<uint64_t>(a / g) << 32) | (b / g));
    }
  return keys.size();
}

double exact_expected_product_size(const tau_table& table, double alpha) {
  check_alpha(alpha);
  if (alpha == 0.0) return 0.0;

  std::span<const uint16_t> counts = table.counts();
  uint16_t max_c = 0;
  for (uint16_t c : counts) max_c = std::max(max_c, c);

  const double q_pair = 1.0 - alpha * alpha;
  const double q_single = 1.0 - alpha;
  std::vector<double> pw(static_cast<size_t>(max_c) / 2 + 2);
  pw[0] = 1.0;
  for (size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * q_pair;

  kahan_sum acc;
  for (uint16_t c : counts) {
    if (c == 0) continue;
    uint32_t sq = c & 1u;
    double miss = pw[(c - sq) >> 1] * (sq ? q_single : 1.0);
    acc.add(1.0 - miss);
  }
  return acc.value();
}

double main_term_expected_product_size(const tau_table& table, double alpha) {
  check_alpha(alpha);
  if (alpha == 0.0) return 0.0;

  std::span<const uint16_t> counts = table.counts();
  uint16_t max_c = 0;
  for (uint16_t c : counts) max_c = std::max(max_c, c);

  const double half_pow = std::sqrt(1.0 - alpha * alpha);  // (1-a^2)^{1/2}
  std::vector<double> pw(static_cast<size_t>(max_c) + 1);
  pw[0] = 1.0;
  for (size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * half_pow;

  kahan_sum acc;
  for (uint16_t c : counts) {
    if (c == 0) continue;
    acc.add(1.0 - pw[c]);
  }
  return acc.value();
}

double brute_force_expected_product_size(uint32_t n_max, double alpha) {
  check_alpha(alpha);
  if (n_max < 1 || n_max > 20)
    throw std::domain_error("brute_force_expected_product_size: N must be in [1, 20]");

  // Group subsets by size: the inclusion probability depends only on |S|.
  std::vector<double> size_weighted_total(n_max + 1, 0.0);
  std::vector<uint32_t> elems;
  std::vector<uint64_t> prods;
  for (uint32_t mask = 0; mask < (1u << n_max); ++mask) {
    elems.clear();
    for (uint32_t i = 0; i < n_max; ++i)
      if (mask & (1u << i)) elems.push_back(i + 1);
    prods.clear();
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t j = i; j < elems.size(); ++j)
        prods.push_back(static_cast<uint64_t>(elems[i]) * elems[j]);
    std::sort(prods.begin(), prods.end());
    auto distinct = std::unique(prods.begin(), prods.end()) - prods.begin();
    size_weighted_total[elems.size()] += static_cast<double>(distinct);
  }

  double expectation = 0.0;
  for (uint32_t k = 0; k <= n_max; ++k) {
    double w = std::pow(alpha, k) * std::pow(1.0 - alpha, n_max - k);
    expectation += w * size_weighted_total[k];
  }
  return expectation;
}

double expected_trivial(uint64_t n_max, double alpha) {
  check_alpha(alpha);
  double n = static_cast<double>(n_max);
  return n * n * alpha * alpha / 2.0 + n * alpha - n * alpha * alpha / 2.0;
}

double expected_deficiency_main_term(const tau_table& table, double alpha) {
  check_alpha(alpha);
  if (alpha == 0.0) return 0.0;

  std::span<const uint16_t> counts = table.counts();
  uint16_t max_c = 0;
  for (uint16_t c : counts) max_c = std::max(max_c, c);

  const double a2 = alpha * alpha;
  const double half_pow = std::sqrt(1.0 - a2);
  std::vector<double> pw(static_cast<size_t>(max_c) + 1);
  pw[0] = 1.0;
  for (size_t i = 1; i < pw.size(); ++i) pw[i] = pw[i - 1] * half_pow;

  kahan_sum acc;
  for (uint16_t c : counts) {
    if (c == 0) continue;  // the summand vanishes
    acc.add(a2 * c / 2.0 - 1.0 + pw[c]);
  }
  return acc.value();
}

}  // namespace psl
