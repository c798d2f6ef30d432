#pragma once

// IMEX Runge-Kutta step for d_t u = lambda(k) u + N(u, t) in spectral space,
// lambda <= 0 a diagonal multiplier solved exactly per mode.

#include <optional>
#include <span>
#include <vector>

#include "relaxlab/field.hpp"
#include "relaxlab/imex.hpp"
#include "relaxlab/kernels.hpp"

namespace relaxlab::detail {

template <class Nonlinear>
Spectrum semi_implicit_step(const Spectrum& u, double t, double dt,
                            std::span<const double> lambda, Nonlinear&& nonlinear,
                            const Tableau& tb) {
  const int ns = tb.stages;
  std::vector<std::optional<Spectrum>> nl(ns), lin(ns);
  std::optional<Spectrum> ui;
  for (int i = 0; i < ns; ++i) {
    Spectrum rhs = u;
    double c = 0.0;
    for (int j = 0; j < i; ++j) {
      c += tb.ex[i][j];
      if (tb.ex[i][j] != 0.0) {
        const double w = dt * tb.ex[i][j];
        for (std::size_t k = 0; k < rhs.coeffs.size(); ++k) rhs.coeffs[k] += w * nl[j]->coeffs[k];
      }
      if (tb.im[i][j] != 0.0) {
        const double w = dt * tb.im[i][j];
        for (std::size_t k = 0; k < rhs.coeffs.size(); ++k) rhs.coeffs[k] += w * lin[j]->coeffs[k];
      }
    }
    const double a = dt * tb.im[i][i];
    if (a != 0.0) {
      for (std::size_t k = 0; k < rhs.coeffs.size(); ++k) rhs.coeffs[k] /= 1.0 - a * lambda[k];
    }
    bool explicit_needed = false, implicit_needed = false;
    for (int k = i + 1; k < ns; ++k) {
      explicit_needed |= tb.ex[k][i] != 0.0;
      implicit_needed |= tb.im[k][i] != 0.0;
    }
    if (explicit_needed) nl[i] = nonlinear(rhs, t + c * dt);
    if (implicit_needed) {
      Spectrum l(rhs.grid);
      kernels::mul_real(rhs.coeffs, lambda, l.coeffs);
      lin[i] = std::move(l);
    }
    ui = std::move(rhs);
  }
  return std::move(*ui);
}

}  // namespace relaxlab::detail
