#include "bingham/integrator.hpp"

#include <cmath>
#include <sstream>

#include "bingham/diagnostics.hpp"
#include "bingham/errors.hpp"
#include "bingham/operators.hpp"
#include "bingham/pressure.hpp"

namespace bingham {

SimState initialize(const ScalarField& rho0, const VelocityField& u0, const FluidParams& fluid,
                    const SchemeParams& scheme) {
  if (rho0.min() < fluid.rho1 || rho0.max() > fluid.rho2) {
    std::ostringstream os;
    os << "initial density range [" << rho0.min() << ", " << rho0.max() << "] outside ["
       << fluid.rho1 << ", " << fluid.rho2 << "]";
    throw InvalidInitialDensity(os.str());
  }
  const MacGrid& g = rho0.grid();
  SimState s(g);
  s.rho = rho0;
  s.u = u0;
  s.u.enforce_boundary();
  const double h = std::min(g.hx(), g.hy());
  const double div_max = divergence(s.u).max_abs();
  if (div_max > 1e-10 * s.u.max_abs() / h) {
    const ScalarField q = pressure_increment(s.u, fluid.rho1, 1.0, scheme.poisson_solver);
    s.u = correct_velocity(s.u, q, fluid.rho1, 1.0);
  }
  s.u_hat = s.u;
  return s;
}

StepReport step(SimState& state, const FluidParams& fluid, const SchemeParams& scheme,
                const Forcing& forcing) {
  const MacGrid& g = state.grid();
  const double dt = scheme.dt;
  StepReport rep;

  ScalarField rho_new = advect_density(state.rho, state.u_hat, dt, scheme.transport_solver);
  const double slack = 1e-12;
  if (rho_new.min() < fluid.rho1 - slack || rho_new.max() > fluid.rho2 + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "density range [" << rho_new.min() << ", " << rho_new.max() << "] left [" << fluid.rho1
       << ", " << fluid.rho2 << "]";
    throw MaxPrincipleViolation(os.str());
  }
  auto [mu, alpha] = eval_coefficients(rho_new, fluid);

  std::optional<VelocityField> force;
  if (forcing) {
    force.emplace(g);
    forcing(state.t + dt, rho_new, *force);
  }
  FixedPointResult fp =
      fixed_point_solve(state, rho_new, mu, alpha, scheme, force ? &*force : nullptr);

  ScalarField q = pressure_increment(fp.u, fluid.rho1, dt, scheme.poisson_solver, &rep.poisson);
  state.p = accumulate_pressure(state.p, q);
  state.u_hat = correct_velocity(fp.u, q, fluid.rho1, dt);
  state.q = std::move(q);
  state.u = std::move(fp.u);
  state.sigma = std::move(fp.sigma);
  state.rho = std::move(rho_new);
  state.t += dt;
  state.n += 1;

  rep.n = state.n;
  rep.t = state.t;
  rep.fixed_point = std::move(fp.report);
  rep.div_residual = divergence(state.u_hat).max_abs();
  const EnergyTerms e = energy_terms(state, mu, fluid, scheme);
  rep.kinetic = e.kinetic;
  rep.pressure_term = e.pressure_term;
  rep.sigma_term = e.sigma_term;
  rep.dissipation = e.dissipation;
  rep.rho_min = state.rho.min();
  rep.rho_max = state.rho.max();
  rep.sigma_max = state.sigma.max_invariant();
  return rep;
}

std::vector<StepReport> run(SimState& state, const FluidParams& fluid, const SchemeParams& scheme,
                            double t_end, const Forcing& forcing, const StepObserver& observer) {
  if (!(t_end > 0.0)) throw ValidationError("t_end > 0 violated");
  const long steps = std::lround(t_end / scheme.dt);
  std::vector<StepReport> reports;
  reports.reserve(static_cast<std::size_t>(steps));
  for (long k = 0; k < steps; ++k) {
    reports.push_back(step(state, fluid, scheme, forcing));
    if (observer) observer(state, reports.back());
  }
  return reports;
}

}  // namespace bingham
