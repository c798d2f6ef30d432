#pragma once

#include <array>
#include <cstddef>

namespace relaxlab {

/// Uniform periodic tensor-product grid on the torus [0, L)^d.
///
/// Physical samples are stored row-major with the last axis fastest. The
/// spectral layout is the real-to-complex half spectrum: the last axis keeps
/// indices 0..n/2, the others keep the full range 0..n-1.
class Grid {
 public:
  Grid(int dim, int n, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / n_; }
  double volume() const;

  std::size_t size() const { return size_; }
  std::size_t spectral_size() const { return spectral_size_; }
  int half_n() const { return n_ / 2 + 1; }

  /// Shape of the physical array (unused trailing axes are 1).
  std::array<int, 3> shape() const;
  /// Shape of the half spectrum (unused trailing axes are 1).
  std::array<int, 3> spectral_shape() const;

  /// Coordinates of the node with flat index `flat` (unused axes are 0).
  std::array<double, 3> position(std::size_t flat) const;

  /// Signed integer mode in [-n/2, n/2) for a spectral index j in [0, n).
  int mode(int j) const { return j < n_ / 2 ? j : j - n_; }
  bool is_nyquist(int j) const { return j == n_ / 2; }
  /// Angular wavenumber 2*pi*mode/L. The Nyquist index maps to 0 so that
  /// every multiplier treats the unpaired mode consistently.
  double wavenumber(int j) const;
  /// Largest |mode| kept by the 2/3 truncation.
  int dealias_cutoff() const { return n_ / 3; }

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  std::size_t spectral_size_;
};

}  // namespace relaxlab
