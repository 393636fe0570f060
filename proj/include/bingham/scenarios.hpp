#pragma once

#include "bingham/config.hpp"
#include "bingham/integrator.hpp"

namespace bingham {

struct Scenario {
  ScalarField rho0;
  VelocityField u0;
  Forcing forcing;  // empty when the scenario is unforced
};

/// Closed-box swirl: psi = sin^2(pi x/lx) sin^2(pi y/ly), unit peak value.
double swirl_stream_function(double x, double y, double lx, double ly);

ScalarField density_profile(const MacGrid& grid, const FluidConfig& fluid,
                            const ScenarioConfig& sc);

/// Initial fields and body force for the configured scenario:
///  cavity      swirl initial velocity and a solenoidal swirl body force
///  poiseuille  fluid at rest in a periodic channel driven by a uniform force G
///  dambreak    heavy blob falling under gravity (force rho g per unit volume)
///  rest        fluid at rest with no forcing
Scenario make_scenario(const RunConfig& config);

}  // namespace bingham
