#include "relaxlab/pressure.hpp"

#include "relaxlab/errors.hpp"

namespace relaxlab {

PressureLaw PressureLaw::gamma_law(double a, double gamma) {
  if (!(a > 0.0)) throw ValidationError("pressure: a must be positive");
  if (!(gamma > 1.0)) throw ValidationError("pressure: gamma must exceed 1");
  return PressureLaw{a, gamma};
}

ScalarField PressureLaw::p(const ScalarField& rho) const {
  return rho.map([this](double r) { return p(r); });
}

ScalarField PressureLaw::dp(const ScalarField& rho) const {
  return rho.map([this](double r) { return dp(r); });
}

}  // namespace relaxlab
