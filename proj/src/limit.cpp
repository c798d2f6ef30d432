#include "relaxlab/limit.hpp"

#include <algorithm>
#include <cmath>

#include "fluid_ops.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/euler.hpp"
#include "relaxlab/spectral.hpp"
#include "semi_implicit.hpp"

namespace relaxlab {

namespace {

std::vector<double> heat_symbol(const Grid& g, double diffusivity) {
  const auto t = tables(g);
  std::vector<double> lambda(t->k2.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = -diffusivity * t->k2[i];
  return lambda;
}

// Laplacian of f, dealiased, in spectral form.
Spectrum dealiased_laplacian(const ScalarField& f) {
  auto s = forward(f);
  dealias_in_place(s);
  spectral::scale_by_k2(s, [](double k2) { return -k2; });
  return s;
}

double perturbation_l2_sq(const Spectrum& s) {
  return spectral::weighted_norm2(s, [](double k2) { return k2 == 0.0 ? 0.0 : 1.0; });
}

}  // namespace

VectorField darcy_flux(const ScalarField& rho, const PressureLaw& law) {
  return -1.0 * gradient(law.p(rho));
}

double parabolic_max_dt(const Grid& g, double rho_max, const LimitParams& p,
                        const PressureLaw& law) {
  if (p.dt > 0.0) return p.dt;
  const double dx = g.dx();
  return p.cfl * dx * dx / (g.dim() * law.dp(rho_max));
}

LimitBundle solve_porous_medium(const ScalarField& rho0,
                                std::span<const double> sample_times,
                                const LimitParams& params,
                                const PressureLaw& law) {
  detail::require_density(rho0, kRhoMin);
  const Grid& g = rho0.grid();
  const double d1 = law.dp(1.0);
  const auto lambda = heat_symbol(g, d1);
  const Tableau& tb = tableau(params.scheme);
  const Spectrum s0 = forward(rho0);
  const double bound = 10.0 * perturbation_l2_sq(s0) + 1e-20;
  const double cap = parabolic_max_dt(g, rho0.max(), params, law);

  auto nonlinear = [&](const Spectrum& u, double) {
    const ScalarField rho = inverse(u);
    detail::require_density(rho, kRhoMin);
    return dealiased_laplacian(rho.map([&](double r) { return law.p(r) - d1 * r; }));
  };
  auto step = [&](const Spectrum& u, double t, double h) {
    Spectrum next = detail::semi_implicit_step(u, t, h, lambda, nonlinear, tb);
    if (!(perturbation_l2_sq(next) <= bound)) {
      throw BlowupGuard("porous medium: perturbation grew past the guard");
    }
    return next;
  };
  LimitBundle out;
  auto record = [&](double t, const Spectrum& u) {
    ScalarField rho = inverse(u);
    out.times.push_back(t);
    out.q.push_back(darcy_flux(rho, law));
    out.rho.push_back(std::move(rho));
  };
  march(s0, sample_times, step, [&](const Spectrum&, double) { return cap; }, record,
        out.steps);
  return out;
}

DensityHistory::DensityHistory(std::vector<double> times, std::vector<ScalarField> rho)
    : times_(std::move(times)), rho_(std::move(rho)) {
  if (times_.empty() || times_.size() != rho_.size()) {
    throw AlignmentError("density history needs matching, non-empty samples");
  }
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) {
      throw AlignmentError("density history times must increase strictly");
    }
  }
}

double DensityHistory::max_spacing() const {
  double m = 0.0;
  for (std::size_t i = 1; i < times_.size(); ++i) m = std::max(m, times_[i] - times_[i - 1]);
  return m;
}

ScalarField DensityHistory::at(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(times_.back()));
  if (t < times_.front() - slack || t > times_.back() + slack) {
    throw AlignmentError("time " + std::to_string(t) + " outside the density history");
  }
  t = std::clamp(t, times_.front(), times_.back());
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return rho_.back();
  const std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  if (hi == 0) return rho_.front();
  const std::size_t lo = hi - 1;
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  if (w == 0.0) return rho_[lo];
  return lincomb(1.0 - w, rho_[lo], w, rho_[hi]);
}

CorrectorBundle solve_corrector(const DensityHistory& rho_star,
                                const ScalarField& rho1_0,
                                std::span<const double> sample_times,
                                const LimitParams& params,
                                const PressureLaw& law) {
  const Grid& g = rho1_0.grid();
  const double d1 = law.dp(1.0);
  const auto lambda = heat_symbol(g, d1);
  const Tableau& tb = tableau(params.scheme);
  const double cap = parabolic_max_dt(g, rho_star.samples().front().max(), params, law);
  if (rho_star.max_spacing() > 10.0 * cap) {
    throw SamplingTooCoarse("limit density spacing " +
                            std::to_string(rho_star.max_spacing()) +
                            " exceeds 10 corrector steps of " + std::to_string(cap));
  }
  if (rho_star.times().front() > 0.0) {
    throw SamplingTooCoarse("limit density history must start at t = 0");
  }

  auto nonlinear = [&](const Spectrum& u, double t) {
    const ScalarField coef = law.dp(rho_star.at(t)) - d1;
    return dealiased_laplacian(coef * inverse(u));
  };
  auto step = [&](const Spectrum& u, double t, double h) {
    return detail::semi_implicit_step(u, t, h, lambda, nonlinear, tb);
  };
  CorrectorBundle out;
  auto record = [&](double t, const Spectrum& u) {
    ScalarField r1 = inverse(u);
    out.times.push_back(t);
    out.q1.push_back(-1.0 * gradient(law.dp(rho_star.at(t)) * r1));
    out.rho1.push_back(std::move(r1));
  };
  march(forward(rho1_0), sample_times, step,
        [&](const Spectrum&, double) { return cap; }, record, out.steps);
  return out;
}

Expansion expand(const LimitBundle& limit, const CorrectorBundle& corr, double eps) {
  if (limit.times != corr.times) {
    throw AlignmentError("limit and corrector samples are not aligned");
  }
  Expansion out;
  for (std::size_t i = 0; i < limit.times.size(); ++i) {
    out.rho.push_back(limit.rho[i] + eps * corr.rho1[i]);
    out.q.push_back(limit.q[i] + eps * corr.q1[i]);
  }
  return out;
}

}  // namespace relaxlab
