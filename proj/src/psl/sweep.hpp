#pragma once

#include <string>

#include "psl/threshold.hpp"

namespace psl {

// Parses a sweep config document.  Schema (unknown keys rejected):
// {
//   "n_values": [int >= 16, ...],        required, non-empty
//   "schedule": {"kind": "fixed",          "value": real in [0,1)}
//             | {"kind": "log_power",      "exponent": real > 0}
//             | {"kind": "theorem_scaled", "K": real},             required
//   "trials": int >= 1,                  required
//   "delta": real in (0, 1),             required
//   "master_seed": uint64,               optional, default 0x5EED
//   "compute_exact": bool                optional, default false
// }
// Throws parse_error naming the offending field.
experiment_config parse_experiment_config(const std::string& json_text);

// Parse, run, and render the summary CSV.
std::string run_sweep_csv(const std::string& json_text);

}  // namespace psl
