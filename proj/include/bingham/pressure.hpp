#pragma once

#include "bingham/grid.hpp"
#include "bingham/linear_solvers.hpp"

namespace bingham {

/// Mean-zero q with lap q = (rho1/dt) div u_new and homogeneous Neumann data.
ScalarField pressure_increment(const VelocityField& u_new, double rho1, double dt,
                               const SolverConfig& cfg = {1e-12, 0.0, 20000, true},
                               SolveStats* stats = nullptr);

/// p + q.
ScalarField accumulate_pressure(const ScalarField& p_old, const ScalarField& q_new);

/// u - (dt/rho1) grad q.
VelocityField correct_velocity(const VelocityField& u_new, const ScalarField& q_new, double rho1,
                               double dt);

}  // namespace bingham
