#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bingham/grid.hpp"

namespace bingham {

struct PropertyResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;  // largest relative defect observed
  double tolerance = 0.0;
  bool passed() const { return failures == 0; }
};

/// Random grid (4..max_cells per direction, random lengths, random periodicity).
MacGrid random_grid(std::mt19937_64& rng, int max_cells = 20);
ScalarField random_scalar(const MacGrid& grid, std::mt19937_64& rng, double lo = -1.0,
                          double hi = 1.0);
/// Random face field vanishing on every inactive face.
VelocityField random_velocity(const MacGrid& grid, std::mt19937_64& rng);
TensorField random_tensor(const MacGrid& grid, std::mt19937_64& rng);

/// <B(rho w, v), v> = 0 for random rho > 0, w and v.
PropertyResult check_skew_advection(std::mt19937_64& rng, int trials, double tol = 1e-11);
/// <grad s, u> = -<s, div u>.
PropertyResult check_gradient_divergence(std::mt19937_64& rng, int trials, double tol = 1e-11);
/// <Div t, v> = -<t, D v>.
PropertyResult check_strain_divergence(std::mt19937_64& rng, int trials, double tol = 1e-11);
/// |P(s) - P(t)| <= |dev(s) - dev(t)|, idempotence and |P(t)| <= 1.
PropertyResult check_projection(std::mt19937_64& rng, int trials, double tol = 1e-12);
/// <A v, v> >= (rho1/dt) ||v||^2 for the momentum operator.
PropertyResult check_momentum_coercivity(std::mt19937_64& rng, int trials, double tol = 1e-12);
/// Implicit transport keeps a random density in its range for a random solenoidal flow.
PropertyResult check_transport_bounds(std::mt19937_64& rng, int trials, double tol = 1e-12);

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int trials = 100);

}  // namespace bingham
