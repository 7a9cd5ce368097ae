#pragma once

#include <cstdint>

namespace psl {

inline constexpr uint64_t kDefaultMemoryBudgetBytes = 2ull << 30;  // 2 GiB

// Current memory budget.  Defaults to 2 GiB, overridden by the
// PSL_MEMORY_BUDGET_BYTES environment variable, overridden in turn by
// set_memory_budget_bytes.
uint64_t memory_budget_bytes();

// Override the budget at runtime; 0 restores the env/default value.
void set_memory_budget_bytes(uint64_t bytes);

// Throws capacity_error naming `what` unless `required` fits the budget.
void charge_budget(uint64_t required, const char* what);

}  // namespace psl
