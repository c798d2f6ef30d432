#pragma once

#include <cmath>

#include "relaxlab/field.hpp"

namespace relaxlab {

/// Gamma-law pressure p(rho) = a^2 rho^gamma.
struct PressureLaw {
  double a = 1.0;
  double gamma = 2.0;

  /// Validated constructor: a > 0, gamma > 1.
  static PressureLaw gamma_law(double a, double gamma);

  double p(double rho) const { return a * a * std::pow(rho, gamma); }
  double dp(double rho) const { return a * a * gamma * std::pow(rho, gamma - 1.0); }
  double d2p(double rho) const {
    return a * a * gamma * (gamma - 1.0) * std::pow(rho, gamma - 2.0);
  }

  ScalarField p(const ScalarField& rho) const;
  ScalarField dp(const ScalarField& rho) const;

  bool operator==(const PressureLaw&) const = default;
};

}  // namespace relaxlab
