#pragma once

// Experiment orchestration and report emission.

#include <optional>
#include <string>
#include <vector>

#include "relaxlab/config.hpp"
#include "relaxlab/harness.hpp"

namespace relaxlab {

/// Per-run diagnostics gathered alongside the error metrics.
struct RunDiagnostics {
  double eps = 0.0;
  long steps = 0;
  double min_dt = 0.0;
  double max_dt = 0.0;
  double mass_drift = 0.0;        ///< max |mean(rho) - mean(rho0)| of the relaxation run
  double limit_mass_drift = 0.0;  ///< same for the limit solve
  double max_energy_ratio = 0.0;  ///< max ||rho-1||_{H^m}^2 over the guard's initial energy
  double max_gauss_residual = 0.0;
  double max_div_b = 0.0;
  double max_step_constraint_change = 0.0;
  std::string guard_status = "ok";
  double wall_seconds = 0.0;

  bool operator==(const RunDiagnostics&) const = default;
};

struct NamedFit {
  std::string metric;
  RateFit fit;
};

/// Acceptance interval of a fitted slope; an absent bound is unbounded.
struct RateBand {
  std::string metric;
  std::optional<double> lo;
  std::optional<double> hi;

  bool contains(double slope) const;
};

struct RunReport {
  ExperimentConfig config;
  ErrorTable table;
  std::vector<NamedFit> fits;
  std::vector<RunDiagnostics> diagnostics;
  double wall_seconds = 0.0;
};

/// Scenario of the configuration: "ill_prepared", "well_prepared" or "em".
std::string scenario(const ExperimentConfig& cfg);

/// Rate bands checked by --assert-rates.
std::vector<RateBand> rate_bands(const ExperimentConfig& cfg);

/// One relaxation run, its limit and the error row.
ErrorRow run_single(const ExperimentConfig& cfg, double eps, RunDiagnostics* diag = nullptr);

/// Full ladder sweep plus rate fits. Throws InsufficientPoints for fewer than
/// 3 ladder values before any solver runs.
RunReport run_experiment(const ExperimentConfig& cfg);

/// Fits every metric of the table.
std::vector<NamedFit> fit_all(const ErrorTable& table);

/// Columns eps,metric_name,value,T,tail_estimate; %.17g numbers.
std::string csv_text(const ErrorTable& table);
void emit_csv(const RunReport& report, const std::string& path);
/// Reads a CSV written by emit_csv. Throws ParseError or IoError.
ErrorTable read_csv(const std::string& path);
ErrorTable parse_csv_text(const std::string& text);

std::string json_text(const RunReport& report);
void emit_json(const RunReport& report, const std::string& path);
RunReport parse_json_text(const std::string& text);

/// Standalone matplotlib script with the data embedded.
void emit_plotscript(const RunReport& report, const std::string& path);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant self-test suite used by the `check` subcommand.
std::vector<CheckResult> self_check();

}  // namespace relaxlab
