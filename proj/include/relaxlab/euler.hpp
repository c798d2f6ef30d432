#pragma once

// Diffusively rescaled compressible Euler system in (rho, q) variables:
//   d_t rho + div q = 0
//   eps^2 (d_t q + div(q x q / rho)) + grad p(rho) = -q
// advanced with an IMEX Runge-Kutta scheme whose implicit part is the
// pointwise relaxation -(q + grad p)/eps^2.

#include <span>
#include <vector>

#include "relaxlab/imex.hpp"
#include "relaxlab/initial_data.hpp"
#include "relaxlab/pressure.hpp"
#include "relaxlab/stepping.hpp"

namespace relaxlab {

/// Densities at or below this value are treated as vacuum.
inline constexpr double kRhoMin = 0.1;

struct EulerState {
  ScalarField rho;
  VectorField q;
};

struct RelaxParams {
  double eps = 1.0;
  double T = 1.0;
  /// Fixed step cap; 0 selects the CFL policy below.
  double dt = 0.0;
  /// Safety factor of the transport and diffusive limits.
  double cfl = 0.25;
  Scheme scheme = Scheme::imex1;
  /// While t < 20 eps^2, steps are capped at eps^2 / layer_substeps
  /// (0 disables the cap).
  double layer_substeps = 0.0;
  /// Sobolev index of the blow-up guard.
  int m = 3;
  /// The guard trips when ||rho - 1||_{H^m}^2 exceeds this multiple of the
  /// initial energy.
  double guard_factor = 10.0;

  void validate() const;
};

/// ||rho0 - 1||_{H^m}^2 + eps^2 ||q0/rho0||_{H^m}^2.
double initial_energy(const EulerState& state, double eps, int m);

/// Non-stiff tendencies (-div q, -div(q x q / rho)), dealiased.
EulerState euler_rhs_nonstiff(const EulerState& state);

/// One IMEX step. Throws VacuumError when a stage density drops to kRhoMin.
EulerState imex_step(const EulerState& state, double dt, double eps,
                     const PressureLaw& law, Scheme scheme = Scheme::imex1);

/// Largest step allowed by the transport, diffusive and layer limits.
double euler_max_dt(const EulerState& state, double t, const RelaxParams& p,
                    const PressureLaw& law);

struct EulerDiagnostics {
  std::vector<double> mass;    ///< mean(rho) per sample
  std::vector<double> energy;  ///< ||rho - 1||_{H^m}^2 per sample
  double initial_energy = 0.0;
  StepStats steps;
};

struct EulerTrajectory {
  std::vector<double> times;
  std::vector<EulerState> states;
  EulerDiagnostics diag;
};

/// Integrates to every requested sample time (sorted, >= 0). Solver errors
/// are rethrown with the offending time prepended; the blow-up guard raises
/// CFLViolation.
EulerTrajectory solve_euler(const EulerState& init, const RelaxParams& params,
                            const PressureLaw& law,
                            std::span<const double> sample_times);

/// Builds (rho0^eps, q0^eps) for the family at this eps.
EulerState make_euler_initial(const InitialDataFamily& family, const Grid& grid,
                              const PressureLaw& law, double eps);

}  // namespace relaxlab
