#pragma once

// Configurable initial-data families shared by the Euler and Euler-Maxwell
// experiments. Density perturbations have zero mean, so every family keeps
// mean(rho) = 1.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "relaxlab/field.hpp"

namespace relaxlab {

enum class DensityFamily { cosine, bump, random };

/// ill: O(1) velocity in the original variables, u0 = v0/eps.
/// well: q0 = Darcy flux of rho0*.
/// expansion: well-prepared with rho0 = rho0* + eps*rho1_0.
enum class Preparation { ill, well, expansion };

struct InitialDataFamily {
  DensityFamily family = DensityFamily::cosine;
  double amplitude = 0.05;
  /// cosine: term j is cos(k_{modes[j]} x_{j mod d}); bump/random: modes[0]
  /// is the largest retained mode index.
  std::vector<int> modes{1};
  Preparation preparation = Preparation::ill;
  double velocity_amplitude = 0.05;
  int velocity_mode = 1;
  int corrector_mode = 2;
  double corrector_amplitude = 0.05;
  std::uint64_t seed = 1;

  bool operator==(const InitialDataFamily&) const = default;
};

/// rho0* = 1 + amplitude * (zero-mean shape).
ScalarField limit_density(const InitialDataFamily& f, const Grid& g);
/// rho1_0: corrector_amplitude * cos(k x_1) for the expansion family, else 0.
ScalarField corrector_density(const InitialDataFamily& f, const Grid& g);
/// v0 with `components` entries: v0_c = velocity_amplitude * cos(k x_c) for
/// c < d, zero for the remaining components.
VectorField original_velocity(const InitialDataFamily& f, const Grid& g,
                              int components);

std::string to_string(DensityFamily f);
std::string to_string(Preparation p);
DensityFamily parse_density_family(std::string_view s);
Preparation parse_preparation(std::string_view s);

}  // namespace relaxlab
