#pragma once

// Building blocks shared by the Euler and Euler-Maxwell integrators.

#include "relaxlab/field.hpp"
#include "relaxlab/pressure.hpp"

namespace relaxlab::detail {

/// grad p(rho) with p(rho) dealiased before differentiation.
VectorField pressure_gradient(const ScalarField& rho, const PressureLaw& law);

/// -div q over the first d components.
ScalarField neg_divergence(const VectorField& q);

/// -div(q x q / rho), every product dealiased. q may carry more components
/// than the grid has axes; the divergence runs over the grid axes.
VectorField convection(const ScalarField& rho, const VectorField& q);

/// Throws VacuumError when min(rho) <= rho_min.
void require_density(const ScalarField& rho, double rho_min);

/// max_x |q(x)| / rho(x) over all components.
double max_speed(const ScalarField& rho, const VectorField& q);

}  // namespace relaxlab::detail
