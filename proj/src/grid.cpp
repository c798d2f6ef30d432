#include "relaxlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relaxlab/errors.hpp"

namespace relaxlab {

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim < 1 || dim > 3) {
    throw DimensionError("grid dimension must be 1, 2 or 3, got " +
                         std::to_string(dim));
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw ValidationError("points per axis must be a power of two >= 8, got " +
                          std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("side length must be positive and finite");
  }
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);
  spectral_size_ = size_ / static_cast<std::size_t>(n) *
                   static_cast<std::size_t>(n / 2 + 1);
}

double Grid::volume() const { return std::pow(length_, dim_); }

std::array<int, 3> Grid::shape() const {
  std::array<int, 3> s{1, 1, 1};
  for (int a = 0; a < dim_; ++a) s[a] = n_;
  return s;
}

std::array<int, 3> Grid::spectral_shape() const {
  auto s = shape();
  s[dim_ - 1] = n_ / 2 + 1;
  return s;
}

std::array<double, 3> Grid::position(std::size_t flat) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const double h = dx();
  for (int a = dim_ - 1; a >= 0; --a) {
    x[a] = h * static_cast<double>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return x;
}

double Grid::wavenumber(int j) const {
  if (is_nyquist(j)) return 0.0;
  return 2.0 * std::numbers::pi * mode(j) / length_;
}

}  // namespace relaxlab
