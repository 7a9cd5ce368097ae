#include "psl/budget.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "psl/errors.hpp"

namespace psl {
namespace {

uint64_t env_or_default() {
  if (const char* env = std::getenv("PSL_MEMORY_BUDGET_BYTES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<uint64_t>(v);
  }
  return kDefaultMemoryBudgetBytes;
}

std::atomic<uint64_t> g_override{0};

}  // namespace

uint64_t memory_budget_bytes() {
  uint64_t v = g_override.load(std::memory_order_relaxed);
  return v != 0 ? v : env_or_default();
}

void set_memory_budget_bytes(uint64_t bytes) {
  g_override.store(bytes, std::memory_order_relaxed);
}

void charge_budget(uint64_t required, const char* what) {
  uint64_t allowed = memory_budget_bytes();
  if (required > allowed) throw capacity_error(what, required, allowed);
}

}  // namespace psl
