#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pwenv/harness/checks.hpp"

using namespace pwenv::harness;

namespace {

struct Overrides {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (!o.out.empty()) cfg.out = o.out;
  if (o.seed) cfg.seed = *o.seed;
  if (o.tol) cfg.quad.rel_tolerance = *o.tol;
  cfg.validate();
  return cfg;
}

void summarize(const VerificationReport& rep) {
  std::fprintf(stderr, "%-16s rows %4zu  pass %4zu  low-confidence %3zu  fail %3zu  report-only %4zu\n", rep.suite.c_str(),
               rep.rows.size(), rep.count(Status::pass), rep.count(Status::low_confidence), rep.count(Status::fail),
               rep.count(Status::report_only));
}

int emit(const ExperimentConfig& cfg, const std::vector<VerificationReport>& reps) {
  bool failed = false;
  for (const auto& r : reps) {
    write_report(cfg.out, r);
    summarize(r);
    failed = failed || r.failed();
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Paley-Wiener spaces E^p and their Banach envelopes"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config, "TOML or JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "report directory");
  app.add_option("--seed", o.seed, "seed for random pairs and families");
  app.add_option("--tol", o.tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);

  auto* norms = app.add_subcommand("norms", "quasi-norm table of the catalog");
  auto* verify = app.add_subcommand("verify", "inequalities and identities");
  auto* sweep = app.add_subcommand("sweep", "counterexample sweep over eps and smoothness");
  auto* equivalence = app.add_subcommand("equivalence", "Minkowski norm against the integral norm");
  auto* report = app.add_subcommand("report", "all suites");
  for (auto* sub : {norms, verify, sweep, equivalence, report}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg = resolve(o);
    if (norms->parsed()) return emit(cfg, {run_norms(cfg)});
    if (verify->parsed()) return emit(cfg, {run_verify(cfg)});
    if (sweep->parsed()) return emit(cfg, {run_counterexample_sweep(cfg)});
    if (equivalence->parsed()) return emit(cfg, {run_equivalence_study(cfg)});
    return emit(cfg, {run_norms(cfg), run_verify(cfg), run_counterexample_sweep(cfg), run_equivalence_study(cfg)});
  } catch (const pwenv::Error& e) {
    std::cerr << "error (" << pwenv::to_string(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
