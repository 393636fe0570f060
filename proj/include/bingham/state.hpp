#pragma once

#include "bingham/grid.hpp"

namespace bingham {

/// Everything the scheme carries from one time level to the next.
struct SimState {
  explicit SimState(const MacGrid& grid)
      : rho(grid), p(grid), q(grid), u(grid), u_hat(grid), sigma(grid) {}

  double t = 0.0;
  int n = 0;
  ScalarField rho;
  ScalarField p;
  ScalarField q;
  VelocityField u;
  VelocityField u_hat;
  TensorField sigma;

  const MacGrid& grid() const { return rho.grid(); }
};

}  // namespace bingham
