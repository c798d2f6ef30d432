// Command-line front end: run, sweep, rates, check.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/report.hpp"

using namespace relaxlab;

namespace {

struct Options {
  std::string config;
  std::string out_dir;
  int threads = 1;
  bool assert_rates = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps;
  std::string csv;
};

ExperimentConfig load(const Options& o) {
  ExperimentConfig cfg = parse_config(o.config);
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.seed) cfg.family.seed = *o.seed;
  cfg.validate();
  return cfg;
}

void print_metrics(const ErrorRow& row) {
  std::printf("eps = %.6g  T = %.6g  m = %d\n", row.eps, row.T, row.m);
  for (const auto& m : row.metrics) {
    std::printf("  %-22s %.6e  (tail %.2e)\n", m.name.c_str(), m.value, m.tail_estimate);
  }
}

// Prints the fits and returns false when a band is violated.
bool print_fits(const std::vector<NamedFit>& fits, const std::vector<RateBand>& bands) {
  bool ok = true;
  std::printf("%-22s %9s %11s %9s  band\n", "metric", "slope", "intercept", "resid");
  for (const auto& f : fits) {
    std::printf("%-22s %9.4f %11.4f %9.2e", f.metric.c_str(), f.fit.slope, f.fit.intercept,
                f.fit.residual);
    for (const auto& b : bands) {
      if (b.metric != f.metric) continue;
      const bool in = b.contains(f.fit.slope);
      ok = ok && in;
      std::printf("  [%s, %s] %s", b.lo ? std::to_string(*b.lo).c_str() : "-inf",
                  b.hi ? std::to_string(*b.hi).c_str() : "inf", in ? "ok" : "OUT");
    }
    std::printf("\n");
  }
  for (const auto& b : bands) {
    bool found = false;
    for (const auto& f : fits) found = found || f.metric == b.metric;
    if (!found) {
      std::printf("%-22s no fit available\n", b.metric.c_str());
      ok = false;
    }
  }
  return ok;
}

int cmd_run(const Options& o) {
  const ExperimentConfig cfg = load(o);
  if (!o.eps && cfg.eps.empty()) throw InsufficientPoints("no eps given");
  const double eps = o.eps ? *o.eps : cfg.eps.front();
  RunDiagnostics diag;
  const ErrorRow row = run_single(cfg, eps, &diag);
  print_metrics(row);
  std::printf("steps %ld, dt in [%.3e, %.3e], mass drift %.2e, %.1f s\n", diag.steps,
              diag.min_dt, diag.max_dt, diag.mass_drift, diag.wall_seconds);
  return 0;
}

int cmd_sweep(const Options& o) {
  const ExperimentConfig cfg = load(o);
  const RunReport report = run_experiment(cfg);
  const std::filesystem::path dir(cfg.out_dir);
  const std::string base = (dir / cfg.prefix).string();
  emit_csv(report, base + ".csv");
  emit_json(report, base + ".json");
  emit_plotscript(report, base + "_plot.py");
  for (const auto& row : report.table.rows) print_metrics(row);
  const bool ok = print_fits(report.fits, rate_bands(cfg));
  std::printf("wrote %s.{csv,json} and %s_plot.py (%.1f s)\n", base.c_str(), base.c_str(),
              report.wall_seconds);
  if (o.assert_rates && !ok) {
    std::printf("rate assertion failed\n");
    return 2;
  }
  return 0;
}

int cmd_rates(const Options& o) {
  const ErrorTable table = read_csv(o.csv);
  std::vector<RateBand> bands;
  if (!o.config.empty()) bands = rate_bands(load(o));
  if (o.assert_rates && bands.empty()) {
    throw ValidationError("--assert-rates needs --config to select the bands");
  }
  const bool ok = print_fits(fit_all(table), bands);
  return o.assert_rates && !ok ? 2 : 0;
}

int cmd_check() {
  int failed = 0;
  for (const auto& r : self_check()) {
    std::printf("%s  %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relaxation-limit experiments for damped Euler and Euler-Maxwell"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "OpenMP threads (1 = serial reference)")
      ->check(CLI::PositiveNumber);

  auto* run = app.add_subcommand("run", "Run one configuration at a single eps");
  run->add_option("--config", o.config, "Configuration file")->required();
  run->add_option("--eps", o.eps, "eps value (default: first ladder entry)");
  run->add_option("--seed", o.seed, "Seed of random data families");

  auto* sweep = app.add_subcommand("sweep", "Run the eps ladder and fit rates");
  sweep->add_option("--config", o.config, "Configuration file")->required();
  sweep->add_option("--out-dir", o.out_dir, "Output directory (overrides out_dir)");
  sweep->add_option("--seed", o.seed, "Seed of random data families");
  sweep->add_flag("--assert-rates", o.assert_rates, "Exit 2 when a rate band fails");

  auto* rates = app.add_subcommand("rates", "Fit rates from an existing CSV");
  rates->add_option("csv", o.csv, "CSV written by sweep")->required()->check(CLI::ExistingFile);
  rates->add_option("--config", o.config, "Configuration selecting the rate bands");
  rates->add_flag("--assert-rates", o.assert_rates, "Exit 2 when a rate band fails");

  auto* check = app.add_subcommand("check", "Run the invariant self-test suite");

  CLI11_PARSE(app, argc, argv);
  kernels::set_threads(o.threads);
  try {
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o);
    if (*rates) return cmd_rates(o);
    if (*check) return cmd_check();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
