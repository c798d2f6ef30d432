#pragma once

// Error metrics between relaxation runs and their limits, epsilon sweeps and
// convergence-rate fits.

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relaxlab/euler.hpp"
#include "relaxlab/euler_maxwell.hpp"
#include "relaxlab/limit.hpp"

namespace relaxlab {

/// q_I(t) = exp(-t / eps^2) q0.
struct InitialLayer {
  VectorField q0;
  double eps = 1.0;

  /// Throws NegativeTime for t < 0.
  VectorField at(double t) const;
};

struct StreamFunctionSeries {
  std::vector<double> times;
  std::vector<VectorField> N;
  /// ||div N - (rho_eps - rho_star)||_{L^2} per sample.
  std::vector<double> div_residual;

  double max_residual() const;
};

/// N(t) = N0 - int_0^t (q_eps - q_star), N0 = -Lambda^{-2} grad(rho0_eps - rho0_star),
/// accumulated with the trapezoid rule at the sample cadence.
StreamFunctionSeries stream_function(const EulerTrajectory& euler, const LimitBundle& limit,
                                     const ScalarField& rho0_eps,
                                     const ScalarField& rho0_star);

struct MetricValue {
  std::string name;
  double value = 0.0;
  /// Extrapolated contribution of [T, inf) for time integrals; 0 for sups.
  double tail_estimate = 0.0;
};

struct ErrorRow {
  double eps = 0.0;
  int m = 0;
  double T = 0.0;
  std::vector<MetricValue> metrics;

  /// Throws ValidationError for an unknown name.
  const MetricValue& metric(std::string_view name) const;
};

struct ErrorTable {
  std::vector<ErrorRow> rows;  ///< eps descending

  std::vector<std::string> metric_names() const;
};

/// Metrics of the ill-prepared limit at index m - 1. `decay_rate` is the
/// slowest linear decay rate used for the tail estimates.
ErrorRow error_report_thm11(const EulerTrajectory& euler, const LimitBundle& limit,
                            const InitialLayer& layer, int m, double decay_rate);

/// Metrics of the first-order expansion at index m - 2. Throws
/// NotWellPrepared when the initial residuals exceed eps^2 and eps.
ErrorRow error_report_thm12(const EulerTrajectory& euler, const LimitBundle& limit,
                            const CorrectorBundle& corrector, double eps, int m,
                            double decay_rate);

/// Euler-Maxwell metrics. `corrector` may be null; when present the
/// expansion metric of B is added.
ErrorRow error_report_em(const EMTrajectory& em, const EMLimitBundle& limit,
                         const EMCorrectorBundle* corrector, const InitialLayer& layer,
                         const Vec3& b_e, int m, double decay_rate);

/// Sample layout: `layer_count` points spaced eps^2 / layer_density, then a
/// geometric run (factor 1.5) up to the uniform spacing T / uniform_count,
/// then uniform spacing up to T.
struct SampleSchedule {
  double layer_density = 8.0;
  int layer_count = 64;
  int uniform_count = 50;

  bool operator==(const SampleSchedule&) const = default;
};

std::vector<double> sample_times(double eps, double T, const SampleSchedule& schedule);

/// Sorted union; times within 1e-12 (relative) of each other are merged.
std::vector<double> merge_times(std::span<const double> a, std::span<const double> b);

/// Position of every entry of `subset` inside `all`. Throws AlignmentError.
std::vector<std::size_t> locate_times(std::span<const double> all,
                                      std::span<const double> subset);

/// Runs `run_one` for every eps of the ladder (concurrently when threads
/// allow) and returns rows in ladder order. Errors are rethrown with the
/// eps value prepended. Throws InsufficientPoints for fewer than 3 values.
ErrorTable eps_sweep(std::span<const double> ladder,
                     const std::function<ErrorRow(double)>& run_one);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// RMS deviation of log(error) from the fitted line.
  double residual = 0.0;
};

/// Least-squares line through (log eps, log value). Needs >= 3 rows with
/// positive values.
RateFit fit_rate(const ErrorTable& table, std::string_view metric);
RateFit fit_rate(std::span<const double> eps, std::span<const double> values);

}  // namespace relaxlab
