#pragma once

// Diffusively rescaled Euler-Maxwell system on the 3-D torus:
//   d_t rho + div q = 0
//   eps^2 (d_t q + div(q x q / rho)) + grad p = -rho E - eps q x B - q
//   eps d_t E - curl B = eps q,   eps d_t B + curl E = 0
//   div E = 1 - rho,   div B = 0
// together with the drift-diffusion limit and its first-order corrector.

#include <array>
#include <span>
#include <vector>

#include "relaxlab/imex.hpp"
#include "relaxlab/initial_data.hpp"
#include "relaxlab/limit.hpp"
#include "relaxlab/pressure.hpp"
#include "relaxlab/stepping.hpp"

namespace relaxlab {

using Vec3 = std::array<double, 3>;

struct EMState {
  ScalarField rho;
  VectorField q;
  VectorField E;
  VectorField B;
};

struct EMParams {
  double eps = 1.0;
  Vec3 b_e{0.0, 0.0, 1.0};
  double T = 1.0;
  /// Fixed step cap; 0 selects the CFL policy.
  double dt = 0.0;
  double cfl = 0.25;
  /// Steps never exceed max_dt_eps2 * eps^2.
  double max_dt_eps2 = 0.2;
  Scheme scheme = Scheme::imex1;
  /// While t < 20 eps^2, steps are capped at eps^2 / layer_substeps.
  double layer_substeps = 0.0;
  int m = 3;
  double guard_factor = 10.0;
  /// em_step raises ConstraintDrift above this Gauss-law residual.
  double drift_tolerance = 1e-6;

  void validate() const;
};

/// q0 = rho0 u0, E0 = Lambda^{-2} grad rho0, B0 = b_e. Throws MeanNotOne.
EMState make_em_initial(const ScalarField& rho0, const VectorField& u0, const Vec3& b_e);

/// Family-driven data. Ill-prepared: u0 = v0/eps; well-prepared:
/// q0 = -grad p(rho0) - rho0 E0.
EMState make_em_initial(const InitialDataFamily& family, const Grid& grid,
                        const PressureLaw& law, double eps, const Vec3& b_e);

/// Lambda^{-2} grad (rho - mean rho), computed without the mean check.
VectorField electric_field(const ScalarField& rho);

/// Pointwise solution of alpha q + beta q x B = r.
VectorField solve_lorentz(double alpha, double beta, const VectorField& r,
                          const VectorField& B);

/// Exact evolution of d_t E = curl B / eps, d_t B = -curl E / eps over dt.
/// The nonzero-mode longitudinal part of B is dropped.
std::pair<VectorField, VectorField> maxwell_rotation(const VectorField& E,
                                                     const VectorField& B,
                                                     double dt, double eps);

/// Fluid block: IMEX update of (rho, q) with the Lorentz relaxation implicit
/// and E advanced by +q with the same explicit weights as rho. B is frozen.
EMState em_fluid_step(const EMState& s, double dt, double eps,
                      const PressureLaw& law, Scheme scheme);

/// Strang step: rotation(dt/2), fluid(dt), rotation(dt/2). Throws
/// ConstraintDrift when the Gauss-law residual exceeds the tolerance.
EMState em_step(const EMState& s, double dt, const EMParams& params,
                const PressureLaw& law);

/// ||div E - (1 - rho)||_{L^2}
double gauss_residual(const EMState& s);
/// ||div B||_{L^2}
double div_b_norm(const EMState& s);

/// ||rho-1||^2 + eps^2 ||u||^2 + ||E||^2 + ||B - b_e||^2 in H^m.
double em_initial_energy(const EMState& s, double eps, int m, const Vec3& b_e);

double em_max_dt(const EMState& s, double t, const EMParams& p, const PressureLaw& law);

struct EMDiagnostics {
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> gauss_residual;
  std::vector<double> div_b;
  /// Largest per-step change of ||div E + rho - 1||_{L^2}.
  double max_step_constraint_change = 0.0;
  double initial_energy = 0.0;
  StepStats steps;
};

struct EMTrajectory {
  std::vector<double> times;
  std::vector<EMState> states;
  EMDiagnostics diag;
};

EMTrajectory solve_em(const EMState& init, const EMParams& params,
                      const PressureLaw& law, std::span<const double> sample_times);

struct EMLimitBundle {
  std::vector<double> times;
  std::vector<ScalarField> rho;
  std::vector<ScalarField> phi;  ///< Lambda^{-2}(rho - 1)
  std::vector<VectorField> E;    ///< grad phi
  std::vector<VectorField> q;    ///< -grad p(rho) - rho E
  StepStats steps;
};

/// Drift-diffusion limit d_t rho = div(grad p(rho) + rho grad phi).
/// Throws MeanNotOne unless mean(rho0) = 1.
EMLimitBundle solve_drift_diffusion(const ScalarField& rho0,
                                    std::span<const double> sample_times,
                                    const LimitParams& params,
                                    const PressureLaw& law);

struct EMCorrectorBundle {
  std::vector<double> times;
  std::vector<ScalarField> rho1;
  std::vector<VectorField> E1;  ///< Lambda^{-2} grad rho1
  std::vector<VectorField> B1;  ///< -Lambda^{-2} curl q*
  std::vector<VectorField> q1;
  StepStats steps;
};

/// First-order corrector with rho1(0) = 0, driven by div(q* x b_e).
EMCorrectorBundle solve_em_corrector(const DensityHistory& rho_star, const Vec3& b_e,
                                     std::span<const double> sample_times,
                                     const LimitParams& params,
                                     const PressureLaw& law);

/// Limit fields (E*, q*) of a density snapshot.
std::pair<VectorField, VectorField> em_limit_fields(const ScalarField& rho,
                                                    const PressureLaw& law);

/// B1 = -Lambda^{-2} curl q.
VectorField corrector_magnetic(const VectorField& q_star);

}  // namespace relaxlab
