#pragma once

#include <functional>
#include <vector>

#include "bingham/density.hpp"
#include "bingham/momentum.hpp"
#include "bingham/state.hpp"

namespace bingham {

/// Fills `f` with the body force (per unit volume) at faces for time t_new.
/// rho_new is the density already advanced to t_new.
using Forcing = std::function<void(double t_new, const ScalarField& rho_new, VelocityField& f)>;

struct StepReport {
  int n = 0;
  double t = 0.0;
  FixedPointReport fixed_point;
  SolveStats poisson;
  double div_residual = 0.0;  // max |div u_hat|
  double kinetic = 0.0;
  double pressure_term = 0.0;
  double sigma_term = 0.0;
  double dissipation = 0.0;  // dt ||sqrt(2 mu) D u||^2 of this step
  double rho_min = 0.0;
  double rho_max = 0.0;
  double sigma_max = 0.0;
};

/// Builds the state at t = 0. Throws InvalidInitialDensity if rho0 leaves
/// [rho1, rho2]. A u0 that is not discretely solenoidal is projected once.
SimState initialize(const ScalarField& rho0, const VelocityField& u0, const FluidParams& fluid,
                    const SchemeParams& scheme);

StepReport step(SimState& state, const FluidParams& fluid, const SchemeParams& scheme,
                const Forcing& forcing = {});

using StepObserver = std::function<void(const SimState&, const StepReport&)>;

/// Advances round(t_end / dt) steps, calling the observer after each.
std::vector<StepReport> run(SimState& state, const FluidParams& fluid, const SchemeParams& scheme,
                            double t_end, const Forcing& forcing = {},
                            const StepObserver& observer = {});

}  // namespace bingham
