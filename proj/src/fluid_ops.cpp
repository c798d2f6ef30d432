#include "fluid_ops.hpp"

#include <string>

#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"
#include "relaxlab/spectral.hpp"

namespace relaxlab::detail {

VectorField pressure_gradient(const ScalarField& rho, const PressureLaw& law) {
  auto s = forward(law.p(rho));
  dealias_in_place(s);
  std::vector<ScalarField> out;
  for (const auto& d : spectral::gradient(s)) out.push_back(inverse(d));
  return VectorField(std::move(out));
}

ScalarField neg_divergence(const VectorField& q) {
  const Grid& g = q.grid();
  const auto t = tables(g);
  Spectrum acc(g);
  for (int a = 0; a < g.dim(); ++a) {
    kernels::add_mul_imag(forward(q[a]).coeffs, t->k[a], acc.coeffs);
  }
  for (auto& c : acc.coeffs) c = -c;
  return inverse(acc);
}

VectorField convection(const ScalarField& rho, const VectorField& q) {
  const Grid& g = rho.grid();
  const int d = g.dim();
  const int nc = q.components();
  const auto t = tables(g);
  std::vector<ScalarField> u;
  for (int j = 0; j < d; ++j) u.push_back(q[j] / rho);
  std::vector<Spectrum> acc(static_cast<std::size_t>(nc), Spectrum(g));
  for (int i = 0; i < nc; ++i) {
    // q_i u_j = q_j u_i for i, j < d: each symmetric pair is transformed once
    for (int j = (i < d ? i : 0); j < d; ++j) {
      auto s = forward(q[i] * u[j]);
      dealias_in_place(s);
      kernels::add_mul_imag(s.coeffs, t->k[j], acc[i].coeffs);
      if (i < d && j != i) kernels::add_mul_imag(s.coeffs, t->k[i], acc[j].coeffs);
    }
  }
  std::vector<ScalarField> out;
  for (auto& a : acc) {
    for (auto& c : a.coeffs) c = -c;
    out.push_back(inverse(a));
  }
  return VectorField(std::move(out));
}

void require_density(const ScalarField& rho, double rho_min) {
  const double lo = rho.min();
  if (!(lo > rho_min)) {
    throw VacuumError("density " + std::to_string(lo) + " at or below " +
                      std::to_string(rho_min));
  }
}

double max_speed(const ScalarField& rho, const VectorField& q) {
  double m = 0.0;
  for (const auto& c : q.all()) {
    for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i]) / rho[i]);
  }
  return m;
}

}  // namespace relaxlab::detail
