#include "psl/sweep.hpp"

#include <json.hpp>

#include "psl/errors.hpp"

namespace psl {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw parse_error("config: " + msg); }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed)
      if (it.key() == key) ok = true;
    if (!ok) fail(std::string("unknown key \"") + it.key() + "\" in " + where);
  }
}

alpha_schedule parse_schedule(const json& s) {
  if (!s.is_object()) fail("schedule must be an object");
  if (!s.contains("kind") || !s.at("kind").is_string()) fail("schedule.kind must be a string");
  std::string kind = s.at("kind").get<std::string>();

  if (kind == "fixed") {
    reject_unknown(s, {"kind", "value"}, "schedule");
    if (!s.contains("value") || !s.at("value").is_number())
      fail("schedule.value must be a number");
    double v = s.at("value").get<double>();
    if (!(v >= 0.0 && v < 1.0)) fail("schedule.value must lie in [0, 1)");
    return alpha_schedule::fixed(v);
  }
  if (kind == "log_power") {
    reject_unknown(s, {"kind", "exponent"}, "schedule");
    if (!s.contains("exponent") || !s.at("exponent").is_number())
      fail("schedule.exponent must be a number");
    double c = s.at("exponent").get<double>();
    if (!(c > 0.0)) fail("schedule.exponent must be > 0");
    return alpha_schedule::log_power(c);
  }
  if (kind == "theorem_scaled") {
    reject_unknown(s, {"kind", "K"}, "schedule");
    if (!s.contains("K") || !s.at("K").is_number()) fail("schedule.K must be a number");
    return alpha_schedule::theorem_scaled(s.at("K").get<double>());
  }
  fail("schedule.kind must be one of \"fixed\", \"log_power\", \"theorem_scaled\"");
}

}  // namespace

experiment_config parse_experiment_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  reject_unknown(doc,
                 {"n_values", "schedule", "trials", "delta", "master_seed", "compute_exact"},
                 "config");

  experiment_config cfg;

  if (!doc.contains("n_values") || !doc.at("n_values").is_array())
    fail("n_values must be an array");
  if (doc.at("n_values").empty()) fail("n_values must not be empty");
  for (const json& v : doc.at("n_values")) {
    if (!v.is_number_unsigned() && !v.is_number_integer()) fail("n_values entries must be integers");
    int64_t n = v.get<int64_t>();
    if (n < 16) fail("n_values entries must be >= 16");
    if (n > 0xFFFFFFFFll) fail("n_values entries must fit in 32 bits");
    cfg.n_values.push_back(static_cast<uint32_t>(n));
  }

  if (!doc.contains("schedule")) fail("schedule is required");
  cfg.schedule = parse_schedule(doc.at("schedule"));

  if (!doc.contains("trials") || !doc.at("trials").is_number_integer())
    fail("trials must be an integer");
  int64_t trials = doc.at("trials").get<int64_t>();
  if (trials < 1) fail("trials must be >= 1");
  cfg.trials = static_cast<uint32_t>(trials);

  if (!doc.contains("delta") || !doc.at("delta").is_number()) fail("delta must be a number");
  cfg.delta = doc.at("delta").get<double>();
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) fail("delta must lie in (0, 1)");

  if (doc.contains("master_seed")) {
    if (!doc.at("master_seed").is_number_unsigned() && !doc.at("master_seed").is_number_integer())
      fail("master_seed must be an unsigned integer");
    cfg.master_seed = doc.at("master_seed").get<uint64_t>();
  }
  if (doc.contains("compute_exact")) {
    if (!doc.at("compute_exact").is_boolean()) fail("compute_exact must be a boolean");
    cfg.compute_exact = doc.at("compute_exact").get<bool>();
  }
  return cfg;
}

std::string run_sweep_csv(const std::string& json_text) {
  experiment_config cfg = parse_experiment_config(json_text);
  std::vector<summary_record> records = run_trials(cfg);
  return summary_csv(records);
}

}  // namespace psl
