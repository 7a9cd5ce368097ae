// End-to-end checks of the psl binary: exit codes, golden CSV header,
// output determinism.  Usage: cli_check --cli <path-to-psl>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>

#include "support/subprocess.hpp"

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what, const std::string& detail = "") {
  if (ok) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::printf("FAIL %s%s%s\n", what.c_str(), detail.empty() ? "" : ": ",
                detail.c_str());
    ++g_failures;
  }
}

constexpr const char* kHeader =
    "n,alpha,theta,trials,mean_set_size,mean_product_size,mean_deficiency,"
    "empirical_tail_prob,markov_bound_raw,exact_expectation,mean_ratio";

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--cli") == 0) cli = argv[i + 1];
  if (cli.empty()) {
    std::fprintf(stderr, "usage: cli_check --cli <path>\n");
    return 2;
  }
  const std::string psl = subprocess::quote(cli);

  // flag validation -> exit 2
  auto bad_alpha = subprocess::run(psl + " simulate --n 100 --alpha 1.5");
  expect(bad_alpha.exit_code == 2, "alpha out of range exits 2",
         "got " + std::to_string(bad_alpha.exit_code));

  auto bad_sub = subprocess::run(psl + " frobnicate");
  expect(bad_sub.exit_code == 2, "unknown subcommand exits 2");

  auto bad_suite = subprocess::run(psl + " bounds --suite nope --limit 1000");
  expect(bad_suite.exit_code == 2, "unknown bounds suite exits 2");

  auto brute_guard = subprocess::run(psl + " expectation --n 25 --alpha 0.5 --mode brute");
  expect(brute_guard.exit_code == 2, "brute mode beyond N=20 exits 2");

  auto missing_cfg = subprocess::run(psl + " sweep --config does_not_exist.json");
  expect(missing_cfg.exit_code == 2, "missing sweep config exits 2");

  // capacity -> exit 3
  auto capacity = subprocess::run("PSL_MEMORY_BUDGET_BYTES=1000 " + psl +
                                  " expectation --n 4096 --alpha 0.1 --mode exact");
  expect(capacity.exit_code == 3, "budget overflow exits 3",
         "got " + std::to_string(capacity.exit_code));

  // expectation values
  auto exact = subprocess::run(psl + " expectation --n 2 --alpha 0.5 --mode exact");
  expect(exact.exit_code == 0 && exact.output == "1.25\n", "exact expectation prints 1.25",
         exact.output);
  auto brute = subprocess::run(psl + " expectation --n 2 --alpha 0.5 --mode brute");
  expect(brute.exit_code == 0 && brute.output == "1.25\n", "brute expectation prints 1.25",
         brute.output);
  auto main_term = subprocess::run(psl + " expectation --n 2 --alpha 0.5 --mode main-term");
  expect(main_term.exit_code == 0 && main_term.output.rfind("0.517", 0) == 0,
         "main-term expectation is the uncorrected sum", main_term.output);

  // mult-table fixtures
  auto mult = subprocess::run(psl + " mult-table --x 100");
  expect(mult.exit_code == 0 && mult.output.find("M(x) = 42") != std::string::npos,
         "M(100) = 42", mult.output);
  expect(mult.output.find("delta = 0.086071") != std::string::npos, "delta constant printed");
  auto mult4 = subprocess::run(psl + " mult-table --x 4");
  expect(mult4.output.find("M(x) = 3") != std::string::npos, "M(4) = 3");

  // canonical end-to-end run
  auto canonical = subprocess::run(
      psl + " simulate --n 2000 --alpha 0.01 --trials 200 --delta 0.1 --seed 42 --out cli_r.csv");
  std::string canonical_csv = subprocess::read_file("cli_r.csv");
  expect(canonical.exit_code == 0 && std::count(canonical_csv.begin(), canonical_csv.end(),
                                                '\n') == 2,
         "simulate at N=2000 exits 0 with one data row");
  std::remove("cli_r.csv");

  // simulate: golden header, row count, determinism
  std::string cmd = psl + " simulate --n 300 --alpha 0.02 --trials 20 --delta 0.1 --seed 42";
  auto sim1 = subprocess::run(cmd + " --out cli_sim1.csv");
  auto sim2 = subprocess::run(cmd + " --out cli_sim2.csv");
  expect(sim1.exit_code == 0 && sim2.exit_code == 0, "simulate exits 0");
  std::string s1 = subprocess::read_file("cli_sim1.csv");
  std::string s2 = subprocess::read_file("cli_sim2.csv");
  expect(!s1.empty() && s1 == s2, "simulate output is byte-identical across runs");
  expect(s1.rfind(kHeader, 0) == 0, "summary CSV header is pinned", s1.substr(0, 80));
  expect(std::count(s1.begin(), s1.end(), '\n') == 2, "simulate emits one data row");

  // default seed: bare runs reproduce
  auto bare1 = subprocess::run(psl + " simulate --n 200 --alpha 0.05 --trials 5");
  auto bare2 = subprocess::run(psl + " simulate --n 200 --alpha 0.05 --trials 5");
  expect(bare1.exit_code == 0 && bare1.output == bare2.output,
         "default seed makes bare runs reproducible");

  // sweep: schema violation names the field; happy path sorted and stable
  subprocess::write_file("cli_bad.json", R"({"n_values":[100],"bogus":1})");
  auto bad_cfg = subprocess::run(psl + " sweep --config cli_bad.json");
  expect(bad_cfg.exit_code == 2 && bad_cfg.output.find("bogus") != std::string::npos,
         "schema violation exits 2 naming the field", bad_cfg.output);

  subprocess::write_file(
      "cli_empty.json",
      R"({"n_values":[],"schedule":{"kind":"fixed","value":0.1},"trials":5,"delta":0.1})");
  auto empty_cfg = subprocess::run(psl + " sweep --config cli_empty.json");
  expect(empty_cfg.exit_code == 2, "empty n_values exits 2");
  std::remove("cli_empty.json");

  subprocess::write_file(
      "cli_sweep.json",
      R"({"n_values":[200,100],"schedule":{"kind":"fixed","value":0.03},)"
      R"("trials":10,"delta":0.1,"master_seed":9,"compute_exact":true})");
  auto sw1 = subprocess::run(psl + " sweep --config cli_sweep.json --out cli_sweep1.csv");
  auto sw2 = subprocess::run("PSL_THREADS=3 " + psl +
                             " sweep --config cli_sweep.json --out cli_sweep2.csv");
  expect(sw1.exit_code == 0 && sw2.exit_code == 0, "sweep exits 0");
  std::string w1 = subprocess::read_file("cli_sweep1.csv");
  std::string w2 = subprocess::read_file("cli_sweep2.csv");
  expect(!w1.empty() && w1 == w2, "sweep output independent of worker count");
  expect(w1.find("\n100,") != std::string::npos &&
             w1.find("\n100,") < w1.find("\n200,"),
         "sweep rows sorted by n");

  // bounds: taylor passes (exit 0); full suite emits >= 6 suites
  auto taylor = subprocess::run(psl + " bounds --suite taylor");
  expect(taylor.exit_code == 0, "taylor suite exits 0",
         "got " + std::to_string(taylor.exit_code));

  auto all = subprocess::run(psl + " bounds --suite all --limit 1000000 --out cli_bounds.csv");
  std::string bounds_csv = subprocess::read_file("cli_bounds.csv");
  int suites = 0;
  for (const char* tag : {"taylor,", "norton,", "landau,", "ek_", "turan_kubilius,",
                          "dyadic_partial_sum,", "tail_tau,"})
    if (bounds_csv.find(tag) != std::string::npos) ++suites;
  expect(suites >= 6, "full bound report covers >= 6 suites",
         std::to_string(suites) + " suites");
  expect(all.exit_code == 0 || all.exit_code == 4, "bounds exit code is 0 or 4");

  auto json_rep = subprocess::run(psl + " bounds --suite norton --format json");
  expect(json_rep.exit_code == 0 && json_rep.output.find("\"name\"") != std::string::npos,
         "json report format");

  for (const char* f : {"cli_sim1.csv", "cli_sim2.csv", "cli_bad.json", "cli_sweep.json",
                        "cli_sweep1.csv", "cli_sweep2.csv", "cli_bounds.csv"})
    std::remove(f);

  if (g_failures) {
    std::printf("%d failure(s)\n", g_failures);
    return 1;
  }
  std::printf("all cli checks passed\n");
  return 0;
}
