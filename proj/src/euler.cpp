#include "relaxlab/euler.hpp"

#include <algorithm>
#include <optional>

#include "fluid_ops.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/limit.hpp"
#include "relaxlab/spectral.hpp"

namespace relaxlab {

void RelaxParams::validate() const {
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
  if (!(T > 0.0)) throw ValidationError("T must be positive");
  if (dt < 0.0) throw ValidationError("dt must be non-negative");
  if (!(cfl > 0.0)) throw ValidationError("cfl must be positive");
  if (layer_substeps < 0.0) throw ValidationError("layer_substeps must be non-negative");
}

double initial_energy(const EulerState& s, double eps, int m) {
  if (!(s.rho.min() > 0.0)) throw VacuumError("initial density is not positive");
  const double r = sobolev_norm(s.rho - 1.0, m);
  std::vector<ScalarField> u;
  for (const auto& c : s.q.all()) u.push_back(c / s.rho);
  const double v = sobolev_norm(VectorField(std::move(u)), m);
  return r * r + eps * eps * v * v;
}

EulerState euler_rhs_nonstiff(const EulerState& s) {
  detail::require_density(s.rho, kRhoMin);
  return {detail::neg_divergence(s.q), detail::convection(s.rho, s.q)};
}

EulerState imex_step(const EulerState& s, double dt, double eps,
                     const PressureLaw& law, Scheme scheme) {
  const Tableau& tb = tableau(scheme);
  const int ns = tb.stages;
  const double theta = dt / (eps * eps);
  std::vector<std::optional<ScalarField>> frho(ns);
  std::vector<std::optional<VectorField>> fq(ns), g(ns);
  std::optional<ScalarField> rho;
  std::optional<VectorField> q;

  for (int i = 0; i < ns; ++i) {
    ScalarField r = s.rho;
    VectorField qr = s.q;
    for (int j = 0; j < i; ++j) {
      if (tb.ex[i][j] != 0.0) {
        r = r + (dt * tb.ex[i][j]) * *frho[j];
        qr = qr + (dt * tb.ex[i][j]) * *fq[j];
      }
      if (tb.im[i][j] != 0.0) qr = qr + (dt * tb.im[i][j]) * *g[j];
    }
    detail::require_density(r, kRhoMin);

    bool explicit_needed = false, implicit_needed = false;
    for (int k = i + 1; k < ns; ++k) {
      explicit_needed |= tb.ex[k][i] != 0.0;
      implicit_needed |= tb.im[k][i] != 0.0;
    }

    const double a = tb.im[i][i];
    if (a == 0.0) {
      if (implicit_needed) {
        const auto gp = detail::pressure_gradient(r, law);
        g[i] = (-1.0 / (eps * eps)) * (qr + gp);
      }
      q = std::move(qr);
    } else {
      // (1 + a theta) q = q_rhs - a theta grad p(rho_i)
      const auto gp = detail::pressure_gradient(r, law);
      const double at = a * theta;
      VectorField qi = (1.0 / (1.0 + at)) * (qr - at * gp);
      if (implicit_needed) g[i] = (1.0 / (a * dt)) * (qi - qr);
      q = std::move(qi);
    }
    if (explicit_needed) {
      frho[i] = detail::neg_divergence(*q);
      fq[i] = detail::convection(r, *q);
    }
    rho = std::move(r);
  }
  return {std::move(*rho), std::move(*q)};
}

double euler_max_dt(const EulerState& s, double t, const RelaxParams& p,
                    const PressureLaw& law) {
  const Grid& g = s.rho.grid();
  double cap;
  if (p.dt > 0.0) {
    cap = p.dt;
  } else {
    const double dx = g.dx();
    cap = p.cfl * dx * dx / (g.dim() * law.dp(s.rho.max()));
    const double u = detail::max_speed(s.rho, s.q);
    if (u > 0.0) cap = std::min(cap, p.cfl * dx / u);
  }
  const double e2 = p.eps * p.eps;
  if (p.layer_substeps > 0.0 && t < 20.0 * e2) cap = std::min(cap, e2 / p.layer_substeps);
  return cap;
}

EulerTrajectory solve_euler(const EulerState& init, const RelaxParams& params,
                            const PressureLaw& law,
                            std::span<const double> sample_times) {
  params.validate();
  EulerTrajectory out;
  out.diag.initial_energy = initial_energy(init, params.eps, params.m);
  const double bound = params.guard_factor * out.diag.initial_energy + 1e-20;
  const int m = params.m;

  auto step = [&](const EulerState& s, double, double h) {
    EulerState next = imex_step(s, h, params.eps, law, params.scheme);
    const double e = std::pow(sobolev_norm(next.rho - 1.0, m), 2);
    if (!(e <= bound)) {
      throw CFLViolation("blow-up guard: ||rho-1||_{H^m}^2 = " + std::to_string(e) +
                         " exceeds " + std::to_string(bound));
    }
    return next;
  };
  auto max_dt = [&](const EulerState& s, double t) { return euler_max_dt(s, t, params, law); };
  auto record = [&](double t, const EulerState& s) {
    out.times.push_back(t);
    out.states.push_back(s);
    out.diag.mass.push_back(s.rho.mean());
    out.diag.energy.push_back(std::pow(sobolev_norm(s.rho - 1.0, m), 2));
  };
  march(init, sample_times, step, max_dt, record, out.diag.steps);
  return out;
}

EulerState make_euler_initial(const InitialDataFamily& f, const Grid& g,
                              const PressureLaw& law, double eps) {
  const ScalarField rho_star = limit_density(f, g);
  switch (f.preparation) {
    case Preparation::ill: {
      const auto v0 = original_velocity(f, g, g.dim());
      return {rho_star, (1.0 / eps) * (rho_star * v0)};
    }
    case Preparation::well:
      return {rho_star, darcy_flux(rho_star, law)};
    case Preparation::expansion:
      return {rho_star + eps * corrector_density(f, g), darcy_flux(rho_star, law)};
  }
  throw ValidationError("unknown preparation");
}

}  // namespace relaxlab
