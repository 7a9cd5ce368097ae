// psl — command-line front door for the product-set laboratory.
// Talks to the shared library strictly through the C API.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "psl/psl.h"

namespace {

constexpr uint64_t kDefaultSeed = 0x5EED;  // documented default for bare runs

enum exit_code : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitCapacity = 3,
  kExitBoundsFailed = 4,
};

int exit_for(psl_status status) {
  switch (status) {
    case PSL_OK: return kExitOk;
    case PSL_ERR_DOMAIN:
    case PSL_ERR_PARSE:
    case PSL_ERR_RANGE: return kExitUsage;
    case PSL_ERR_CAPACITY: return kExitCapacity;
    default: return kExitFailure;
  }
}

int report_error(psl_status status) {
  std::cerr << "psl: error (" << psl_status_name(status) << "): " << psl_last_error()
            << "\n";
  return exit_for(status);
}

// Empty path means stdout.
int emit(const std::string& path, const char* text) {
  if (path.empty()) {
    std::fwrite(text, 1, std::strlen(text), stdout);
    return kExitOk;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text, static_cast<std::streamsize>(std::strlen(text)));
  if (!out) {
    std::cerr << "psl: cannot write " << path << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

std::string format_real(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

int cmd_simulate(uint32_t n, double alpha, uint32_t trials, double delta, uint64_t seed,
                 const std::string& out_path) {
  char* csv = nullptr;
  psl_status st = psl_simulate_csv(n, alpha, trials, delta, seed, &csv);
  if (st != PSL_OK) return report_error(st);
  int rc = emit(out_path, csv);
  psl_free(csv);
  return rc;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "psl: cannot read config file " << config_path << "\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string config = buf.str();

  char* csv = nullptr;
  psl_status st = psl_sweep_csv(config.c_str(), &csv);
  if (st != PSL_OK) return report_error(st);
  int rc = emit(out_path, csv);
  psl_free(csv);
  return rc;
}

int cmd_expectation(uint32_t n, double alpha, const std::string& mode) {
  double value = 0.0;
  psl_status st;
  if (mode == "brute") {
    st = psl_brute_force_expected_product_size(n, alpha, &value);
  } else {
    psl_tau_table* table = nullptr;
    st = psl_tau_table_build(n, &table);
    if (st == PSL_OK) {
      st = mode == "exact" ? psl_exact_expected_product_size(table, alpha, &value)
                           : psl_main_term_expected_product_size(table, alpha, &value);
      psl_tau_table_free(table);
    }
  }
  if (st != PSL_OK) return report_error(st);
  std::printf("%s\n", format_real(value).c_str());
  return kExitOk;
}

int cmd_bounds(const std::string& suite, uint64_t limit, const std::string& format,
               const std::string& out_path) {
  char* report = nullptr;
  int all_passed = 0;
  psl_status st = psl_run_bound_suite(
      suite.c_str(), limit, format == "json" ? PSL_FORMAT_JSON : PSL_FORMAT_CSV, &report,
      &all_passed);
  if (st != PSL_OK) return report_error(st);
  int rc = emit(out_path, report);
  psl_free(report);
  if (rc != kExitOk) return rc;
  return all_passed ? kExitOk : kExitBoundsFailed;
}

int cmd_mult_table(uint64_t x) {
  uint64_t m = 0;
  psl_status st = psl_mult_table_count(x, &m);
  if (st != PSL_OK) return report_error(st);

  const double delta = 0.086071;  // 1 - (1 + log log 2)/log 2
  double xd = static_cast<double>(x);
  double reference = std::numeric_limits<double>::quiet_NaN();
  if (x >= 3) {
    double lx = std::log(xd), llx = std::log(lx);
    if (llx > 0.0) reference = xd / (std::pow(lx, delta) * std::pow(llx, 1.5));
  }
  std::printf("x = %" PRIu64 "\n", x);
  std::printf("M(x) = %" PRIu64 "\n", m);
  std::printf("M(x)/x = %s\n", format_real(static_cast<double>(m) / xd).c_str());
  std::printf("reference x/((log x)^delta (log log x)^(3/2)) = %s\n",
              format_real(reference).c_str());
  std::printf("delta = %s\n", format_real(delta).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"product-set laboratory for the random model B(N, alpha)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", psl_version());

  // simulate
  uint32_t sim_n = 0;
  double sim_alpha = 0.0, sim_delta = 0.1;
  uint32_t sim_trials = 100;
  uint64_t sim_seed = kDefaultSeed;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trials at one (N, alpha)");
  simulate->add_option("--n", sim_n, "model size N")->required();
  simulate->add_option("--alpha", sim_alpha, "inclusion probability, in [0,1)")
      ->required()
      ->check(CLI::Range(0.0, 1.0 - 1e-15));
  simulate->add_option("--trials", sim_trials, "number of trials (default 100)");
  simulate->add_option("--delta", sim_delta, "tail threshold factor (default 0.1)");
  simulate->add_option("--seed", sim_seed, "master seed (default 0x5EED)");
  simulate->add_option("--out", sim_out, "output CSV path (default stdout)");

  // sweep
  std::string sweep_config, sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run a JSON-configured (N, alpha) sweep");
  sweep->add_option("--config", sweep_config, "sweep config JSON file")->required();
  sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");

  // expectation
  uint32_t exp_n = 0;
  double exp_alpha = 0.0;
  std::string exp_mode;
  auto* expectation = app.add_subcommand("expectation", "E[|AA|] by three routes");
  expectation->add_option("--n", exp_n, "model size N")->required();
  expectation->add_option("--alpha", exp_alpha, "inclusion probability, in [0,1)")
      ->required()
      ->check(CLI::Range(0.0, 1.0 - 1e-15));
  expectation->add_option("--mode", exp_mode, "exact | brute | main-term")
      ->required()
      ->check(CLI::IsMember({"exact", "brute", "main-term"}));

  // bounds
  std::string bounds_suite = "all", bounds_format = "csv", bounds_out;
  uint64_t bounds_limit = 1000000;
  auto* bounds = app.add_subcommand("bounds", "numeric checks of the auxiliary lemmas");
  bounds->add_option("--suite", bounds_suite,
                     "taylor | norton | landau | ek | tk | dyadic | tailtau | all");
  bounds->add_option("--limit", bounds_limit, "sieve limit for the table-backed checks");
  bounds->add_option("--format", bounds_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--out", bounds_out, "output path (default stdout)");

  // mult-table
  uint64_t mult_x = 0;
  auto* mult = app.add_subcommand("mult-table", "multiplication-table count M(x)");
  mult->add_option("--x", mult_x, "table bound x")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (simulate->parsed())
    return cmd_simulate(sim_n, sim_alpha, sim_trials, sim_delta, sim_seed, sim_out);
  if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
  if (expectation->parsed()) return cmd_expectation(exp_n, exp_alpha, exp_mode);
  if (bounds->parsed()) return cmd_bounds(bounds_suite, bounds_limit, bounds_format, bounds_out);
  if (mult->parsed()) return cmd_mult_table(mult_x);
  return kExitUsage;
}
