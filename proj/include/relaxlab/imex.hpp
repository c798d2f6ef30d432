#pragma once

// Butcher tableaus for the IMEX Runge-Kutta pairs. Both pairs are globally
// stiffly accurate: the step result is the last stage, so only the stage
// matrices are stored.

#include <array>
#include <string>
#include <string_view>

namespace relaxlab {

enum class Scheme { imex1, ars222 };

struct Tableau {
  int stages;
  std::array<std::array<double, 3>, 3> ex;  ///< strictly lower triangular
  std::array<std::array<double, 3>, 3> im;  ///< lower triangular, im[0][0] = 0
};

/// imex1: forward/backward Euler pair; ars222: Ascher-Ruuth-Spiteri (2,2,2).
const Tableau& tableau(Scheme s);

Scheme parse_scheme(std::string_view name);
std::string to_string(Scheme s);

}  // namespace relaxlab
