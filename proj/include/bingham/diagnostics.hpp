#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bingham/density.hpp"
#include "bingham/momentum.hpp"
#include "bingham/state.hpp"

namespace bingham {

struct StepReport;

struct EnergyTerms {
  double kinetic = 0.0;        // ||sqrt(rho) u||^2
  double pressure_term = 0.0;  // dt^2 / rho1 ||grad p||^2
  double sigma_term = 0.0;     // 2 theta / r dt ||sigma||^2
  double dissipation = 0.0;    // dt ||sqrt(2 mu) D u||^2, zero when mu is not given
};

EnergyTerms energy_terms(const SimState& state, const ScalarField& mu, const FluidParams& fluid,
                         const SchemeParams& scheme);
EnergyTerms energy_terms(const SimState& state, const FluidParams& fluid,
                         const SchemeParams& scheme);

struct LedgerRow {
  int n = 0;
  double t = 0.0;
  double kinetic = 0.0;
  double pressure_term = 0.0;
  double sigma_term = 0.0;
  double dissipation_cum = 0.0;
  double total = 0.0;
};

/// Time history of the discrete stability functional.
class EnergyLedger {
 public:
  /// Throws HypothesisViolation unless theta <= 1/2 and r alpha2^2/mu1 <= 3/2.
  EnergyLedger(const SimState& initial, const FluidParams& fluid, const SchemeParams& scheme);

  void record(const StepReport& report);
  const std::vector<LedgerRow>& rows() const { return rows_; }

  /// Largest total(n+1) - total(n) over the history.
  double max_increase() const;
  /// total(n+1) <= total(n) + rel_tol * total(0) for every n.
  bool non_increasing(double rel_tol = 1e-8) const;

 private:
  std::vector<LedgerRow> rows_;
};

/// Steady plane Poiseuille flow of a Bingham fluid in a channel |y| <= H driven by
/// a body force G, in the convention where the plastic stress in simple shear is
/// alpha sign(du/dy).
struct PoiseuilleProfile {
  double half_width = 1.0;
  double drive = 1.0;
  double mu = 1.0;
  double alpha = 0.0;
  double y0 = 0.0;          // plug half-width alpha / G
  double plug_speed = 0.0;
  bool no_flow = false;

  /// Velocity at signed distance y from the centreline.
  double operator()(double y) const;
};

PoiseuilleProfile poiseuille_reference(double half_width, double drive, double mu, double alpha);

struct PlugMask {
  std::vector<bool> yielded;  // per cell
  int plug_count() const;
  int yielded_count() const;
};

/// A cell is yielded iff |sigma| >= 1 - tol_plug. The strain rate is accepted
/// for interface compatibility and not used in the classification.
PlugMask plug_mask(const TensorField& sigma, const TensorField& du, double tol_plug = 1e-3);

/// Least-squares slope of log(error) against log(dt).
double least_squares_order(const std::vector<double>& dts, const std::vector<double>& errors);

struct ConvergenceTable {
  std::vector<double> dts;
  std::vector<double> velocity_errors;
  std::vector<double> density_errors;
  double velocity_order = 0.0;
  double density_order = 0.0;
};

/// Runs `simulate(dt)` for each dt and for dt_ref, and measures L2 distances of the
/// final velocity and density to the reference run.
ConvergenceTable temporal_convergence_study(
    const std::function<std::pair<VelocityField, ScalarField>(double)>& simulate,
    const std::vector<double>& dts, double dt_ref);

}  // namespace bingham
