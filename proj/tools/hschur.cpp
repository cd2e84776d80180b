// hschur: batch runner for the Heisenberg-group Schur orthogonality experiments.
//
//   hschur run <config> [--jobs N] [--out DIR] [--seed S]
//   hschur oracle <config> [--jobs N] [--out DIR] [--seed S]
//   hschur list-experiments
//
// Exit codes: 0 all pass, 1 some verdict failed, 2 invalid config, 3 resource cap.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "hschur/error.hpp"
#include "hschur/kernels.hpp"
#include "hschur/suite.hpp"

namespace {

using namespace hschur;

struct KindDoc {
  ExperimentKind kind;
  const char* params;
  const char* statement;
  const char* tag;
};

const KindDoc kDocs[] = {
    {ExperimentKind::SchurDiag, "t, f1..f4",
     "(1/mu(B(r^2))) int_F <pi_t(g)f1,f2> conj(<pi_t(g)f3,f4>) -> mod(t)^-n <f1,f3> conj(<f2,f4>)",
     "[schur-orthogonality:diagonal]"},
    {ExperimentKind::SchurCrossTT, "t1 != t2, f1..f4",
     "same integral with pi_t1 against pi_t2 -> 0", "[schur-orthogonality:distinct-central-characters]"},
    {ExperimentKind::SchurCrossPiRho, "t, z, x, f1, f2",
     "(1/(mu(B(r)^n) mu(B(r^2)))) int_F <pi_t(g)f1,f2> conj(rho_{z,x}(g)) -> 0",
     "[schur-orthogonality:infinite-vs-one-dimensional]"},
    {ExperimentKind::SchurOnedim, "z1, x1, z2, x2",
     "(1/mu(F)) int_F rho_{z1,x1}(g) conj(rho_{z2,x2}(g)) -> 1 if equal parameters, else 0",
     "[schur-orthogonality:one-dimensional]"},
    {ExperimentKind::BraidingPairing, "t, phi1, phi2 on K^{2n}",
     "(1/mu(B(r^2))) int_F <(pi_t(g^-1) x pi_t(g)) phi1, phi2> -> mod(t)^-n <F phi1, phi2>, F the flip",
     "[braiding-limit]"},
    {ExperimentKind::CtempConditionII, "t, f1, f2, k",
     "sup over |g1|,|g2| <= k of the normalized integral of |<pi_t(g)f1,f2>|^2 over g2^-1 F g1 symmetric-difference F -> 0",
     "[c-temperedness:condition-ii]"},
};

int list_experiments() {
  for (const auto& d : kDocs) {
    std::cout << to_string(d.kind) << "\n  params:    " << d.params << "\n  verifies:  " << d.statement
              << "\n  reference: " << d.tag << "\n";
  }
  return 0;
}

int exit_code_for(const Error& e) { return e.kind() == ErrorKind::OracleTooLarge ? 3 : 2; }

void print_run(const std::vector<ExperimentReport>& reports) {
  for (const auto& r : reports) {
    std::printf("%-4s %-28s %-20s %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.kind.c_str(), r.verdict.c_str());
  }
}

void print_oracle(const std::vector<OracleReport>& reports) {
  for (const auto& r : reports) {
    double worst = 0;
    for (const auto& x : r.records) worst = std::max(worst, x.abs_diff);
    std::printf("%-4s %-28s %-20s max |fast - oracle| = %.3g (tolerance %.3g)\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.kind.c_str(), worst, r.tolerance);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heisenberg group Schur orthogonality and braiding verifier"};
  app.require_subcommand(1);
  int jobs = 1;
  std::string out_dir, config;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config, "suite configuration (JSON)")->required();
    sub->add_option("--jobs,-j", jobs, "experiments run in parallel")->check(CLI::PositiveNumber);
    sub->add_option("--out,-o", out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", seed, "seed for random test functions (overrides the config)");
  };
  auto* run = app.add_subcommand("run", "run every experiment and write report.json, report.csv and plots");
  add_common(run);
  auto* oracle = app.add_subcommand("oracle", "compare fast paths with the brute-force oracle");
  add_common(oracle);
  app.add_subcommand("list-experiments", "print the experiment kinds and what each verifies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (app.got_subcommand("list-experiments")) return list_experiments();

  SuiteConfig cfg;
  try {
    cfg = load_suite(config, seed);
  } catch (const Error& e) {
    std::cerr << "hschur: " << e.what() << "\n";
    return exit_code_for(e);
  }
  const std::filesystem::path dir = out_dir.empty() ? cfg.out_dir : std::filesystem::path(out_dir);
  if (jobs > 1) kernels::set_threads(1);  // parallelism moves to the experiment level

  try {
    if (app.got_subcommand("run")) {
      const auto reports = run_suite(cfg, jobs);
      write_run_outputs(dir, cfg, reports);
      print_run(reports);
      for (const auto& r : reports) {
        if (!r.pass) return 1;
      }
      return 0;
    }
    const auto reports = oracle_suite(cfg, jobs);
    write_oracle_outputs(dir, cfg, reports);
    print_oracle(reports);
    for (const auto& r : reports) {
      if (!r.pass) return 1;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "hschur: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "hschur: " << e.what() << "\n";
    return 1;
  }
}
