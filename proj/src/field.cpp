#include "relaxlab/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxlab/errors.hpp"
#include "relaxlab/kernels.hpp"

namespace relaxlab {

namespace {
void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw GridMismatch("fields live on different grids");
}
}  // namespace

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch("field has " + std::to_string(values_.size()) +
                       " values, grid has " + std::to_string(grid_.size()));
  }
}

ScalarField ScalarField::constant(const Grid& grid, double value) {
  return ScalarField(grid, std::vector<double>(grid.size(), value));
}

double ScalarField::mean() const {
  return kernels::sum(values_) / static_cast<double>(values_.size());
}

double ScalarField::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::max_abs() const { return kernels::max_abs(values_); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

ScalarField lincomb(double a, const ScalarField& x, double b,
                    const ScalarField& y) {
  require_same_grid(x.grid(), y.grid());
  std::vector<double> out(x.size());
  kernels::lincomb(a, x.values(), b, y.values(), out);
  return ScalarField(x.grid(), std::move(out));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return lincomb(1.0, a, 1.0, b);
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return lincomb(1.0, a, -1.0, b);
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> out(a.size());
  kernels::multiply(a.values(), b.values(), out);
  return ScalarField(a.grid(), std::move(out));
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> out(a.size());
  kernels::divide(a.values(), b.values(), out);
  return ScalarField(a.grid(), std::move(out));
}

ScalarField operator*(double s, const ScalarField& a) {
  std::vector<double> out(a.size());
  kernels::transform(a.values(), out, [s](double v) { return s * v; });
  return ScalarField(a.grid(), std::move(out));
}

ScalarField operator+(const ScalarField& a, double c) {
  std::vector<double> out(a.size());
  kernels::transform(a.values(), out, [c](double v) { return v + c; });
  return ScalarField(a.grid(), std::move(out));
}

ScalarField operator-(const ScalarField& a, double c) { return a + (-c); }

// ------------------------------------------------------------ VectorField

VectorField::VectorField(std::vector<ScalarField> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("vector field needs components");
  for (const auto& c : components_) require_same_grid(c.grid(), grid());
}

VectorField VectorField::zeros(const Grid& grid, int components) {
  return VectorField(std::vector<ScalarField>(
      static_cast<std::size_t>(components), ScalarField::constant(grid, 0.0)));
}

VectorField VectorField::constant(const Grid& grid,
                                  std::span<const double> value) {
  std::vector<ScalarField> comps;
  for (double v : value) comps.push_back(ScalarField::constant(grid, v));
  return VectorField(std::move(comps));
}

bool VectorField::all_finite() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const ScalarField& c) { return c.all_finite(); });
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, c.max_abs());
  return m;
}

namespace {
void require_same_shape(const VectorField& a, const VectorField& b) {
  if (a.components() != b.components()) {
    throw DimensionError("vector fields have different component counts");
  }
}
}  // namespace

VectorField lincomb(double a, const VectorField& x, double b,
                    const VectorField& y) {
  require_same_shape(x, y);
  std::vector<ScalarField> out;
  for (int i = 0; i < x.components(); ++i) {
    out.push_back(lincomb(a, x[i], b, y[i]));
  }
  return VectorField(std::move(out));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return lincomb(1.0, a, 1.0, b);
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return lincomb(1.0, a, -1.0, b);
}

VectorField operator*(double s, const VectorField& a) {
  std::vector<ScalarField> out;
  for (const auto& c : a.all()) out.push_back(s * c);
  return VectorField(std::move(out));
}

VectorField operator*(const ScalarField& s, const VectorField& v) {
  std::vector<ScalarField> out;
  for (const auto& c : v.all()) out.push_back(s * c);
  return VectorField(std::move(out));
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_shape(a, b);
  ScalarField acc = a[0] * b[0];
  for (int i = 1; i < a.components(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

VectorField cross(const VectorField& a, const VectorField& b) {
  if (a.components() != 3 || b.components() != 3) {
    throw DimensionError("cross product needs 3-component fields");
  }
  return VectorField({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]});
}

}  // namespace relaxlab
