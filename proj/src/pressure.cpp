#include "bingham/pressure.hpp"

#include "bingham/operators.hpp"

namespace bingham {

ScalarField pressure_increment(const VelocityField& u_new, double rho1, double dt,
                               const SolverConfig& cfg, SolveStats* stats) {
  // -lap q = -(rho1/dt) div u
  ScalarField rhs = divergence(u_new);
  scale(rhs, -rho1 / dt);
  auto apply = [](const ScalarField& in, ScalarField& out) { apply_neg_laplacian(in, out); };
  auto [q, st] = cg_solve(apply, rhs, cfg);
  if (stats) *stats = st;
  return q;
}

ScalarField accumulate_pressure(const ScalarField& p_old, const ScalarField& q_new) {
  ScalarField p = p_old;
  axpy(1.0, q_new, p);
  return p;
}

VelocityField correct_velocity(const VelocityField& u_new, const ScalarField& q_new, double rho1,
                               double dt) {
  VelocityField u = u_new;
  axpy(-dt / rho1, gradient_to_faces(q_new), u);
  u.enforce_boundary();
  return u;
}

}  // namespace bingham
