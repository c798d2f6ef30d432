#include "relaxlab/euler_maxwell.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "fluid_ops.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/euler.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/spectral.hpp"
#include "semi_implicit.hpp"

namespace relaxlab {

namespace {

using cplx = std::complex<double>;

void require_3d(const Grid& g, const char* what) {
  if (g.dim() != 3) throw DimensionError(std::string(what) + " requires a 3-D grid");
}

void require_mean_one(const ScalarField& rho, const char* what) {
  if (std::abs(rho.mean() - 1.0) > 1e-12) {
    throw MeanNotOne(std::string(what) + ": mean density " + std::to_string(rho.mean()) +
                     " differs from 1");
  }
}

VectorField from_spectra(std::span<const Spectrum> s) {
  std::vector<ScalarField> out;
  for (const auto& c : s) out.push_back(inverse(c));
  return VectorField(std::move(out));
}

std::vector<Spectrum> to_spectra(const VectorField& v) {
  std::vector<Spectrum> out;
  for (const auto& c : v.all()) out.push_back(forward(c));
  return out;
}

// Lambda^{-2} grad of a spectrum, zero mode dropped.
std::vector<Spectrum> inv_lap_grad(Spectrum s) {
  spectral::inv_laplacian_in_place(s);
  return spectral::gradient(s);
}

// -(p'(1)|k|^2 + 1) off the zero mode.
std::vector<double> drift_diffusion_symbol(const Grid& g, double d1) {
  const auto t = tables(g);
  std::vector<double> lambda(t->k2.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    lambda[i] = t->k2[i] == 0.0 ? 0.0 : -(d1 * t->k2[i] + 1.0);
  }
  return lambda;
}

// div(flux) in spectral form with the flux dealiased.
Spectrum dealiased_divergence(const VectorField& flux) {
  const Grid& g = flux.grid();
  const auto t = tables(g);
  Spectrum acc(g);
  for (int a = 0; a < g.dim(); ++a) {
    auto s = forward(flux[a]);
    dealias_in_place(s);
    kernels::add_mul_imag(s.coeffs, t->k[a], acc.coeffs);
  }
  return acc;
}

VectorField cross_const(const VectorField& q, const Vec3& b) {
  const Grid& g = q.grid();
  const auto zero = ScalarField::constant(g, 0.0);
  return cross(q, VectorField({zero + b[0], zero + b[1], zero + b[2]}));
}

ScalarField constraint_field(const EMState& s) {
  return divergence(s.E) + s.rho - 1.0;
}

}  // namespace

void EMParams::validate() const {
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
  if (!(T > 0.0)) throw ValidationError("T must be positive");
  if (dt < 0.0 || !(cfl > 0.0) || !(max_dt_eps2 > 0.0)) {
    throw ValidationError("step policy parameters must be positive");
  }
  for (double b : b_e) {
    if (!std::isfinite(b)) throw ValidationError("b_e must be finite");
  }
}

VectorField electric_field(const ScalarField& rho) {
  return from_spectra(inv_lap_grad(forward(rho)));
}

EMState make_em_initial(const ScalarField& rho0, const VectorField& u0, const Vec3& b_e) {
  require_3d(rho0.grid(), "make_em_initial");
  require_mean_one(rho0, "make_em_initial");
  if (u0.components() != 3) throw DimensionError("velocity needs 3 components");
  return {rho0, rho0 * u0, electric_field(rho0), VectorField::constant(rho0.grid(), b_e)};
}

EMState make_em_initial(const InitialDataFamily& f, const Grid& g,
                        const PressureLaw& law, double eps, const Vec3& b_e) {
  require_3d(g, "make_em_initial");
  const ScalarField rho0 = limit_density(f, g);
  switch (f.preparation) {
    case Preparation::ill:
      return make_em_initial(rho0, (1.0 / eps) * original_velocity(f, g, 3), b_e);
    case Preparation::well: {
      const auto [e_star, q_star] = em_limit_fields(rho0, law);
      std::vector<ScalarField> u;
      for (const auto& c : q_star.all()) u.push_back(c / rho0);
      return make_em_initial(rho0, VectorField(std::move(u)), b_e);
    }
    case Preparation::expansion:
      break;
  }
  throw ValidationError("expansion-prepared data is not defined for Euler-Maxwell");
}

VectorField solve_lorentz(double alpha, double beta, const VectorField& r,
                          const VectorField& B) {
  const Grid& g = r.grid();
  std::array<std::vector<double>, 3> out;
  for (auto& o : out) o.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double rx = r[0][i], ry = r[1][i], rz = r[2][i];
    const double bx = beta * B[0][i], by = beta * B[1][i], bz = beta * B[2][i];
    const double b2 = bx * bx + by * by + bz * bz;
    const double rb = rx * bx + ry * by + rz * bz;
    // q = [alpha r - r x b + (r.b) b / alpha] / (alpha^2 + |b|^2)
    const double inv = 1.0 / (alpha * alpha + b2);
    const double c = rb / alpha;
    out[0][i] = (alpha * rx - (ry * bz - rz * by) + c * bx) * inv;
    out[1][i] = (alpha * ry - (rz * bx - rx * bz) + c * by) * inv;
    out[2][i] = (alpha * rz - (rx * by - ry * bx) + c * bz) * inv;
  }
  return VectorField({ScalarField(g, std::move(out[0])), ScalarField(g, std::move(out[1])),
                      ScalarField(g, std::move(out[2]))});
}

std::pair<VectorField, VectorField> maxwell_rotation(const VectorField& E,
                                                     const VectorField& B,
                                                     double dt, double eps) {
  const Grid& g = E.grid();
  require_3d(g, "maxwell_rotation");
  if (E.components() != 3 || B.components() != 3) {
    throw DimensionError("maxwell_rotation needs 3-component fields");
  }
  const auto t = tables(g);
  auto e = to_spectra(E);
  auto b = to_spectra(B);
  for (std::size_t i = 0; i < t->k2.size(); ++i) {
    const double k2 = t->k2[i];
    if (k2 == 0.0) continue;
    const double kn = std::sqrt(k2);
    const double kh[3] = {t->k[0][i] / kn, t->k[1][i] / kn, t->k[2][i] / kn};
    const double w = kn * dt / eps;
    const double c = std::cos(w), s = std::sin(w);
    const cplx ev[3] = {e[0].coeffs[i], e[1].coeffs[i], e[2].coeffs[i]};
    const cplx bv[3] = {b[0].coeffs[i], b[1].coeffs[i], b[2].coeffs[i]};
    const cplx ep = kh[0] * ev[0] + kh[1] * ev[1] + kh[2] * ev[2];
    const cplx bp = kh[0] * bv[0] + kh[1] * bv[1] + kh[2] * bv[2];
    const cplx I(0.0, 1.0);
    for (int a = 0; a < 3; ++a) {
      const int a1 = (a + 1) % 3, a2 = (a + 2) % 3;
      // (i kh x X)_a
      const cplx cb = I * (kh[a1] * bv[a2] - kh[a2] * bv[a1]);
      const cplx ce = I * (kh[a1] * ev[a2] - kh[a2] * ev[a1]);
      const cplx e_par = kh[a] * ep, b_par = kh[a] * bp;
      e[a].coeffs[i] = e_par + c * (ev[a] - e_par) + s * cb;
      // B stays in the range of curl; its longitudinal part is round-off.
      b[a].coeffs[i] = c * (bv[a] - b_par) - s * ce;
    }
  }
  return {from_spectra(e), from_spectra(b)};
}

EMState em_fluid_step(const EMState& s, double dt, double eps,
                      const PressureLaw& law, Scheme scheme) {
  const Tableau& tb = tableau(scheme);
  const int ns = tb.stages;
  const double theta = dt / (eps * eps);
  std::vector<std::optional<ScalarField>> frho(ns);
  std::vector<std::optional<VectorField>> fq(ns), g(ns), qs(ns);
  std::optional<ScalarField> rho;
  std::optional<VectorField> E;

  for (int i = 0; i < ns; ++i) {
    ScalarField r = s.rho;
    VectorField e = s.E;
    VectorField qr = s.q;
    for (int j = 0; j < i; ++j) {
      if (tb.ex[i][j] != 0.0) {
        const double w = dt * tb.ex[i][j];
        r = r + w * *frho[j];
        e = e + w * *qs[j];
        qr = qr + w * *fq[j];
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
    VectorField qi = qr;
    if (a == 0.0) {
      if (implicit_needed) {
        const auto force = detail::pressure_gradient(r, law) + r * e + eps * cross(qi, s.B);
        g[i] = (-1.0 / (eps * eps)) * (qi + force);
      }
    } else {
      const double at = a * theta;
      const auto rhs = qr - at * (detail::pressure_gradient(r, law) + r * e);
      qi = solve_lorentz(1.0 + at, at * eps, rhs, s.B);
      if (implicit_needed) g[i] = (1.0 / (a * dt)) * (qi - qr);
    }
    if (explicit_needed) {
      frho[i] = detail::neg_divergence(qi);
      fq[i] = detail::convection(r, qi);
    }
    qs[i] = std::move(qi);
    rho = std::move(r);
    E = std::move(e);
  }
  return {std::move(*rho), std::move(*qs[ns - 1]), std::move(*E), s.B};
}

double gauss_residual(const EMState& s) {
  return sobolev_norm(constraint_field(s), 0.0);
}

double div_b_norm(const EMState& s) { return sobolev_norm(divergence(s.B), 0.0); }

EMState em_step(const EMState& s, double dt, const EMParams& p, const PressureLaw& law) {
  auto [e1, b1] = maxwell_rotation(s.E, s.B, 0.5 * dt, p.eps);
  EMState mid = em_fluid_step({s.rho, s.q, std::move(e1), std::move(b1)}, dt, p.eps, law,
                              p.scheme);
  auto [e2, b2] = maxwell_rotation(mid.E, mid.B, 0.5 * dt, p.eps);
  EMState out{std::move(mid.rho), std::move(mid.q), std::move(e2), std::move(b2)};
  const double res = gauss_residual(out);
  if (!(res <= p.drift_tolerance)) {
    throw ConstraintDrift("Gauss-law residual " + std::to_string(res) +
                          " exceeds tolerance");
  }
  return out;
}

double em_initial_energy(const EMState& s, double eps, int m, const Vec3& b_e) {
  if (!(s.rho.min() > 0.0)) throw VacuumError("initial density is not positive");
  const double r = sobolev_norm(s.rho - 1.0, m);
  std::vector<ScalarField> u;
  for (const auto& c : s.q.all()) u.push_back(c / s.rho);
  const double v = sobolev_norm(VectorField(std::move(u)), m);
  const double e = sobolev_norm(s.E, m);
  const double b = sobolev_norm(s.B - VectorField::constant(s.B.grid(), b_e), m);
  return r * r + eps * eps * v * v + e * e + b * b;
}

double em_max_dt(const EMState& s, double t, const EMParams& p, const PressureLaw& law) {
  const Grid& g = s.rho.grid();
  const double e2 = p.eps * p.eps;
  double cap;
  if (p.dt > 0.0) {
    cap = p.dt;
  } else {
    const double dx = g.dx();
    cap = p.cfl * dx * dx / (g.dim() * law.dp(s.rho.max()));
    const double u = detail::max_speed(s.rho, s.q);
    if (u > 0.0) cap = std::min(cap, p.cfl * dx / u);
  }
  cap = std::min(cap, p.max_dt_eps2 * e2);
  if (p.layer_substeps > 0.0 && t < 20.0 * e2) cap = std::min(cap, e2 / p.layer_substeps);
  return cap;
}

EMTrajectory solve_em(const EMState& init, const EMParams& params,
                      const PressureLaw& law, std::span<const double> sample_times) {
  params.validate();
  require_3d(init.rho.grid(), "solve_em");
  require_mean_one(init.rho, "solve_em");
  EMTrajectory out;
  out.diag.initial_energy = em_initial_energy(init, params.eps, params.m, params.b_e);
  const double bound = params.guard_factor * out.diag.initial_energy + 1e-20;
  const int m = params.m;
  ScalarField prev = constraint_field(init);

  auto step = [&](const EMState& s, double, double h) {
    EMState next = em_step(s, h, params, law);
    const double e = std::pow(sobolev_norm(next.rho - 1.0, m), 2);
    if (!(e <= bound)) {
      throw CFLViolation("blow-up guard: ||rho-1||_{H^m}^2 = " + std::to_string(e) +
                         " exceeds " + std::to_string(bound));
    }
    ScalarField c = constraint_field(next);
    out.diag.max_step_constraint_change =
        std::max(out.diag.max_step_constraint_change, sobolev_norm(c - prev, 0.0));
    prev = std::move(c);
    return next;
  };
  auto max_dt = [&](const EMState& s, double t) { return em_max_dt(s, t, params, law); };
  auto record = [&](double t, const EMState& s) {
    out.times.push_back(t);
    out.diag.mass.push_back(s.rho.mean());
    out.diag.energy.push_back(std::pow(sobolev_norm(s.rho - 1.0, m), 2));
    out.diag.gauss_residual.push_back(gauss_residual(s));
    out.diag.div_b.push_back(div_b_norm(s));
    out.states.push_back(s);
  };
  march(init, sample_times, step, max_dt, record, out.diag.steps);
  return out;
}

std::pair<VectorField, VectorField> em_limit_fields(const ScalarField& rho,
                                                    const PressureLaw& law) {
  VectorField e = electric_field(rho);
  VectorField q = -1.0 * (gradient(law.p(rho)) + rho * e);
  return {std::move(e), std::move(q)};
}

VectorField corrector_magnetic(const VectorField& q_star) {
  const Grid& g = q_star.grid();
  require_3d(g, "corrector_magnetic");
  const auto t = tables(g);
  const auto s = to_spectra(q_star);
  std::vector<Spectrum> out;
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3, b = (c + 2) % 3;
    Spectrum r(g);
    kernels::add_mul_imag(s[b].coeffs, t->k[a], r.coeffs);
    Spectrum tmp(g);
    kernels::mul_imag(s[a].coeffs, t->k[b], tmp.coeffs);
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      const double k2 = t->k2[i];
      r.coeffs[i] = k2 == 0.0 ? 0.0 : -(r.coeffs[i] - tmp.coeffs[i]) / k2;
    }
    out.push_back(std::move(r));
  }
  return from_spectra(out);
}

EMLimitBundle solve_drift_diffusion(const ScalarField& rho0,
                                    std::span<const double> sample_times,
                                    const LimitParams& params,
                                    const PressureLaw& law) {
  require_mean_one(rho0, "solve_drift_diffusion");
  detail::require_density(rho0, kRhoMin);
  const Grid& g = rho0.grid();
  const double d1 = law.dp(1.0);
  const auto lambda = drift_diffusion_symbol(g, d1);
  const Tableau& tb = tableau(params.scheme);
  const double cap = parabolic_max_dt(g, rho0.max(), params, law);
  const Spectrum s0 = forward(rho0);
  const auto pert = [](const Spectrum& s) {
    return spectral::weighted_norm2(s, [](double k2) { return k2 == 0.0 ? 0.0 : 1.0; });
  };
  const double bound = 10.0 * pert(s0) + 1e-20;

  auto nonlinear = [&](const Spectrum& u, double) {
    const ScalarField rho = inverse(u);
    detail::require_density(rho, kRhoMin);
    const VectorField e = from_spectra(inv_lap_grad(u));
    const ScalarField rest = rho.map([&](double r) { return law.p(r) - d1 * r; });
    return dealiased_divergence(gradient(rest) + (rho - 1.0) * e);
  };
  auto step = [&](const Spectrum& u, double t, double h) {
    Spectrum next = detail::semi_implicit_step(u, t, h, lambda, nonlinear, tb);
    if (!(pert(next) <= bound)) {
      throw BlowupGuard("drift-diffusion: perturbation grew past the guard");
    }
    return next;
  };
  EMLimitBundle out;
  auto record = [&](double t, const Spectrum& u) {
    ScalarField rho = inverse(u);
    Spectrum phi = u;
    spectral::inv_laplacian_in_place(phi);
    auto [e, q] = em_limit_fields(rho, law);
    out.times.push_back(t);
    out.phi.push_back(inverse(phi));
    out.E.push_back(std::move(e));
    out.q.push_back(std::move(q));
    out.rho.push_back(std::move(rho));
  };
  march(s0, sample_times, step, [&](const Spectrum&, double) { return cap; }, record,
        out.steps);
  return out;
}

EMCorrectorBundle solve_em_corrector(const DensityHistory& rho_star, const Vec3& b_e,
                                     std::span<const double> sample_times,
                                     const LimitParams& params,
                                     const PressureLaw& law) {
  const Grid& g = rho_star.samples().front().grid();
  require_3d(g, "solve_em_corrector");
  const double d1 = law.dp(1.0);
  const auto lambda = drift_diffusion_symbol(g, d1);
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
    const ScalarField rs = rho_star.at(t);
    const auto [es, qs] = em_limit_fields(rs, law);
    const ScalarField r1 = inverse(u);
    const VectorField e1 = from_spectra(inv_lap_grad(u));
    const VectorField flux = gradient((law.dp(rs) - d1) * r1) + r1 * es + (rs - 1.0) * e1 +
                             cross_const(qs, b_e);
    return dealiased_divergence(flux);
  };
  auto step = [&](const Spectrum& u, double t, double h) {
    return detail::semi_implicit_step(u, t, h, lambda, nonlinear, tb);
  };
  EMCorrectorBundle out;
  auto record = [&](double t, const Spectrum& u) {
    const ScalarField rs = rho_star.at(t);
    const auto [es, qs] = em_limit_fields(rs, law);
    ScalarField r1 = inverse(u);
    VectorField e1 = from_spectra(inv_lap_grad(u));
    out.times.push_back(t);
    out.q1.push_back(-1.0 * (gradient(law.dp(rs) * r1) + rs * e1 + r1 * es) -
                     cross_const(qs, b_e));
    out.B1.push_back(corrector_magnetic(qs));
    out.E1.push_back(std::move(e1));
    out.rho1.push_back(std::move(r1));
  };
  march(Spectrum(g), sample_times, step, [&](const Spectrum&, double) { return cap; },
        record, out.steps);
  return out;
}

}  // namespace relaxlab
