#pragma once

#include <optional>
#include <vector>

#include "bingham/density.hpp"
#include "bingham/linear_solvers.hpp"
#include "bingham/operators.hpp"
#include "bingham/state.hpp"

namespace bingham {

struct SchemeParams {
  double dt = 1e-3;
  double r = 1.0;
  double theta = 0.1;
  /// Stopping tolerance on the L2 norm of successive plastic-tensor iterates.
  /// Non-positive means the default 1e-8 sqrt(|domain|).
  double fp_tol = 0.0;
  int fp_max_iter = 200;
  /// Anderson mixing depth for the plastic-tensor iteration; 0 keeps the plain iteration.
  int anderson_depth = 0;
  bool stability_mode = false;
  SolverConfig momentum_solver{1e-12, 0.0, 4000, true};
  /// Relative tolerance for the correction solves inside the fixed point.
  double increment_rel_tol = 1e-10;
  SolverConfig poisson_solver{1e-12, 0.0, 20000, true};
  SolverConfig transport_solver{1e-14, 0.0, 2000, true};

  double fp_tolerance(const MacGrid& grid) const;
  /// Throws ValidationError naming the violated inequality.
  void validate(const FluidParams& fluid) const;
  /// Largest r with 4 theta + r alpha2^2 / mu1 = 4.
  static double saturating_r(double theta, const FluidParams& fluid);
};

struct FixedPointReport {
  int iterations = 0;
  std::vector<double> residual_history;
  std::optional<double> observed_ratio;
  bool stalled = false;
};

/// v -> (rho_new + rho_old)/(2 dt) v + B(rho_new u_hat, v) - Div(2 mu D v) at faces.
class MomentumOperator {
 public:
  MomentumOperator(const ScalarField& rho_new, const ScalarField& rho_old, const ScalarField& mu_new,
                   const VelocityField& u_hat_old, double dt);

  void apply(const VelocityField& v, VelocityField& out) const;
  const VelocityField& diagonal() const { return diagonal_; }

 private:
  VelocityField mass_;  // face (rho_new + rho_old) / (2 dt)
  ViscousOperator viscous_;
  SkewAdvection advection_;
  VelocityField diagonal_;
};

VelocityField apply_momentum_operator(const VelocityField& v, const ScalarField& rho_new,
                                      const ScalarField& rho_old, const ScalarField& mu_new,
                                      const VelocityField& u_hat_old, double dt);

/// rho_old u_old / dt - grad(p_old + q_old) + Div(alpha_new sigma_iter) at faces.
VelocityField assemble_momentum_rhs(const ScalarField& rho_new, const ScalarField& rho_old,
                                    const VelocityField& u_old, const ScalarField& p_old,
                                    const ScalarField& q_old, const ScalarField& alpha_new,
                                    const TensorField& sigma_iter, double dt);

/// Cellwise P(sigma_k + r alpha D u + theta (sigma_n - sigma_k)).
TensorField bingham_projection(const TensorField& sigma_k, const TensorField& sigma_n,
                               const TensorField& du, const ScalarField& alpha, double r,
                               double theta);

struct FixedPointResult {
  VelocityField u;
  TensorField sigma;
  FixedPointReport report;
};

/// Alternates momentum solves and plastic-tensor projections starting from
/// sigma^{n,0} = state.sigma until successive tensors differ by less than the
/// tolerance. `forcing` (if given) is added to the momentum right-hand side.
FixedPointResult fixed_point_solve(const SimState& state, const ScalarField& rho_new,
                                   const ScalarField& mu_new, const ScalarField& alpha_new,
                                   const SchemeParams& params,
                                   const VelocityField* forcing = nullptr);

}  // namespace bingham
