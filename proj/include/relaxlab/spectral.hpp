#pragma once

// Fourier-multiplier operators on the periodic grid.
//
// Conventions: spectra are normalized by N^{-d}; the Nyquist wavenumber is
// taken as 0 in every multiplier; norms use the continuum normalization
// ||f||^2 = L^d sum_n w(k_n) |c_n|^2 so that the s = 0 norm equals the
// trapezoidal L^2(torus) quadrature.

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "relaxlab/field.hpp"

namespace relaxlab {

enum class Dealias { off, on };

/// Per-grid multiplier tables over the half spectrum.
struct SpectralTables {
  std::array<std::vector<double>, 3> k;  ///< k_axis per mode (0 on unused axes)
  std::vector<double> k2;                ///< |k|^2
  std::vector<double> multiplicity;      ///< 1 or 2 (half-spectrum pairing)
  std::vector<double> dealias_mask;      ///< 1 if every |n_axis| <= n/3
};

/// Shared tables for `grid`; built once per (d, n, L) and cached.
std::shared_ptr<const SpectralTables> tables(const Grid& grid);

Spectrum forward(const ScalarField& f);
ScalarField inverse(const Spectrum& s);

/// Zeroes all modes with some |n_axis| > n/3.
void dealias_in_place(Spectrum& s);
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

VectorField gradient(const ScalarField& f, Dealias mode = Dealias::off);
ScalarField divergence(const VectorField& v, Dealias mode = Dealias::off);
ScalarField laplacian(const ScalarField& f, Dealias mode = Dealias::off);
/// Requires a 3-D grid and a 3-component field.
VectorField curl(const VectorField& v);

/// Lambda^sigma = (-Delta)^{sigma/2}: multiplier |k|^sigma, zero mode set to 0
/// for sigma != 0. Negative sigma rejects input with nonzero mean.
ScalarField fractional_op(const ScalarField& f, double sigma);

/// grad Lambda^{-2} f. Its divergence equals -f.
VectorField inv_lap_gradient(const ScalarField& f);

/// Inhomogeneous Sobolev norm with weight (1+|k|^2)^s.
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm(const VectorField& v, double s);
/// Homogeneous Sobolev norm with weight |k|^{2s}.
double hom_sobolev_norm(const ScalarField& f, double s);
double hom_sobolev_norm(const VectorField& v, double s);

/// Direct trapezoidal quadrature of sqrt(int |f|^2 dx).
double quadrature_l2(const ScalarField& f);

/// Throws MeanNotZero when |mean(f)| exceeds 1e-12 times the RMS of f.
void require_zero_mean(const ScalarField& f, const char* what);

namespace spectral {

// Spectrum-level building blocks shared by the solvers. These skip the
// mean checks of the public field operators; callers own that contract.

/// s <- factor(|k|^2) * s
template <class F>
void scale_by_k2(Spectrum& s, F&& factor) {
  const auto t = tables(s.grid);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] *= factor(t->k2[i]);
}

/// Lambda^{-2} with the zero mode dropped.
void inv_laplacian_in_place(Spectrum& s);

/// sum_axis i k_axis v_axis
Spectrum divergence(std::span<const Spectrum> v);
std::vector<Spectrum> gradient(const Spectrum& f);

double weighted_power_sum(const Spectrum& s, std::span<const double> w);

/// Squared norm with weight w(|k|^2), continuum normalization.
template <class W>
double weighted_norm2(const Spectrum& s, W&& weight) {
  const auto t = tables(s.grid);
  std::vector<double> w(s.coeffs.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = t->multiplicity[i] * weight(t->k2[i]);
  }
  return s.grid.volume() * weighted_power_sum(s, w);
}

}  // namespace spectral

}  // namespace relaxlab
