#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "relaxlab/grid.hpp"

namespace relaxlab {

/// Real nodal values over a Grid. Immutable once built.
class ScalarField {
 public:
  ScalarField(Grid grid, std::vector<double> values);

  static ScalarField constant(const Grid& grid, double value);

  template <class F>
  static ScalarField from_function(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.position(i));
    return ScalarField(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double mean() const;
  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const;

  /// Pointwise map x -> f(x).
  template <class F>
  ScalarField map(F&& f) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(values_[i]);
    return ScalarField(grid_, std::move(v));
  }

  /// Moves the storage out; used by solvers that recycle buffers.
  std::vector<double> release() && { return std::move(values_); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator/(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator+(const ScalarField& a, double c);
ScalarField operator-(const ScalarField& a, double c);
/// out = a*x + b*y
ScalarField lincomb(double a, const ScalarField& x, double b,
                    const ScalarField& y);

/// Real vector field with an arbitrary component count (d for fluids, 3 for
/// electromagnetic fields).
class VectorField {
 public:
  explicit VectorField(std::vector<ScalarField> components);

  static VectorField zeros(const Grid& grid, int components);
  static VectorField constant(const Grid& grid, std::span<const double> value);

  const Grid& grid() const { return components_.front().grid(); }
  int components() const { return static_cast<int>(components_.size()); }
  const ScalarField& operator[](int i) const { return components_[i]; }
  std::span<const ScalarField> all() const { return components_; }

  bool all_finite() const;
  double max_abs() const;

 private:
  std::vector<ScalarField> components_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
/// Componentwise product with a scalar field.
VectorField operator*(const ScalarField& s, const VectorField& v);
VectorField lincomb(double a, const VectorField& x, double b,
                    const VectorField& y);
ScalarField dot(const VectorField& a, const VectorField& b);
/// Pointwise cross product (3 components each).
VectorField cross(const VectorField& a, const VectorField& b);

/// Normalized half spectrum: coefficient c_n = N^{-d} sum_j f_j e^{-i k_n x_j}.
struct Spectrum {
  explicit Spectrum(const Grid& g)
      : grid(g), coeffs(g.spectral_size(), std::complex<double>(0.0, 0.0)) {}
  Grid grid;
  std::vector<std::complex<double>> coeffs;
};

}  // namespace relaxlab
