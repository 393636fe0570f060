#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "bingham/grid.hpp"
#include "bingham/linear_solvers.hpp"

namespace bingham {

/// Density bounds and the density-dependent plastic viscosity / yield stress.
struct FluidParams {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::function<double(double)> mu_of_rho;
  std::function<double(double)> alpha_of_rho;
  double lipschitz_mu = 0.0;
  double lipschitz_alpha = 0.0;

  /// mu and alpha interpolated linearly between (rho1, mu1/alpha1) and (rho2, mu2/alpha2).
  static FluidParams affine(double rho1, double rho2, double mu1, double mu2, double alpha1,
                            double alpha2);
  /// Piecewise-linear table of (rho, mu, alpha) rows sorted by rho. The table
  /// must cover [rho1, rho2]; bounds are taken from the tabulated values.
  static FluidParams tabulated(double rho1, double rho2,
                               const std::vector<std::array<double, 3>>& rows);

  /// Checks the ordering of the bounds and spot-checks both laws on [rho1, rho2].
  void validate() const;
};

/// One implicit upwind step of d rho/dt + u_hat . grad rho = 0. The discrete
/// operator is an M-matrix whose rows sum to one, so the update is a convex
/// combination of old values and cannot leave their range.
ScalarField advect_density(const ScalarField& rho_prev, const VelocityField& u_hat, double dt,
                           const SolverConfig& cfg = {1e-14, 0.0, 2000, false});

/// Applies rho -> rho + (dt/A) sum_inflow |F| (rho - rho_nb).
class TransportOperator {
 public:
  TransportOperator(const VelocityField& u_hat, double dt);

  void apply(const ScalarField& rho, ScalarField& out) const;
  ScalarField diagonal() const;
  /// One Jacobi sweep for (this) rho = rhs.
  void jacobi_sweep(const ScalarField& rhs, ScalarField& rho) const;
  bool is_identity() const { return identity_; }

 private:
  struct Row {
    std::array<int, 4> nb{};
    std::array<double, 4> w{};
    int size = 0;
    double diag = 1.0;
  };
  MacGrid grid_;
  std::vector<Row> rows_;
  bool identity_ = true;
};

std::pair<ScalarField, ScalarField> eval_coefficients(const ScalarField& rho,
                                                      const FluidParams& params);

}  // namespace bingham
