#pragma once

// Porous-medium limit d_t rho* = Laplace p(rho*), Darcy flux
// q* = -grad p(rho*), and the first-order corrector
// d_t rho1 = Laplace(p'(rho*) rho1), q1 = -grad(p'(rho*) rho1).

#include <span>
#include <vector>

#include "relaxlab/imex.hpp"
#include "relaxlab/pressure.hpp"
#include "relaxlab/stepping.hpp"

namespace relaxlab {

/// Step policy of the semi-implicit parabolic solvers. The linearization
/// at rho = 1 is implicit, the remainder explicit.
struct LimitParams {
  /// Fixed step cap; 0 selects cfl * dx^2 / (d p'(max rho)).
  double dt = 0.0;
  double cfl = 0.25;
  Scheme scheme = Scheme::imex1;
};

/// -grad p(rho).
VectorField darcy_flux(const ScalarField& rho, const PressureLaw& law);

struct LimitBundle {
  std::vector<double> times;
  std::vector<ScalarField> rho;
  std::vector<VectorField> q;
  StepStats steps;
};

LimitBundle solve_porous_medium(const ScalarField& rho0,
                                std::span<const double> sample_times,
                                const LimitParams& params,
                                const PressureLaw& law);

/// Density samples with piecewise-linear interpolation in time.
class DensityHistory {
 public:
  DensityHistory(std::vector<double> times, std::vector<ScalarField> rho);

  const std::vector<double>& times() const { return times_; }
  const std::vector<ScalarField>& samples() const { return rho_; }
  double max_spacing() const;
  /// Throws AlignmentError outside [times.front(), times.back()].
  ScalarField at(double t) const;

 private:
  std::vector<double> times_;
  std::vector<ScalarField> rho_;
};

struct CorrectorBundle {
  std::vector<double> times;
  std::vector<ScalarField> rho1;
  std::vector<VectorField> q1;
  StepStats steps;
};

/// Solves the linear corrector on top of the interpolated limit density.
/// Throws SamplingTooCoarse when the history spacing exceeds 10 corrector
/// steps.
CorrectorBundle solve_corrector(const DensityHistory& rho_star,
                                const ScalarField& rho1_0,
                                std::span<const double> sample_times,
                                const LimitParams& params,
                                const PressureLaw& law);

/// (rho* + eps rho1, q* + eps q1) per sample.
struct Expansion {
  std::vector<ScalarField> rho;
  std::vector<VectorField> q;
};

/// Throws AlignmentError unless both bundles share their sample times.
Expansion expand(const LimitBundle& limit, const CorrectorBundle& corr, double eps);

/// Step cap shared by the parabolic solvers.
double parabolic_max_dt(const Grid& g, double rho_max, const LimitParams& p,
                        const PressureLaw& law);

}  // namespace relaxlab
