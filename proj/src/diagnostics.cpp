#include "bingham/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "bingham/errors.hpp"
#include "bingham/integrator.hpp"
#include "bingham/operators.hpp"

namespace bingham {

namespace {

EnergyTerms static_terms(const SimState& state, const FluidParams& fluid,
                         const SchemeParams& scheme) {
  EnergyTerms e;
  const VelocityField rho_face = face_average(state.rho);
  const auto r = rho_face.values();
  const auto u = state.u.values();
  double k = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) k += r[i] * u[i] * u[i];
  e.kinetic = state.grid().cell_area() * k;
  const double gp = l2_norm(gradient_to_faces(state.p));
  e.pressure_term = scheme.dt * scheme.dt / fluid.rho1 * gp * gp;
  const double s = l2_norm(state.sigma);
  e.sigma_term = 2.0 * scheme.theta / scheme.r * scheme.dt * s * s;
  return e;
}

}  // namespace

EnergyTerms energy_terms(const SimState& state, const ScalarField& mu, const FluidParams& fluid,
                         const SchemeParams& scheme) {
  EnergyTerms e = static_terms(state, fluid, scheme);
  e.dissipation = scheme.dt * ViscousOperator(mu).dissipation(state.u);
  return e;
}

EnergyTerms energy_terms(const SimState& state, const FluidParams& fluid,
                         const SchemeParams& scheme) {
  return static_terms(state, fluid, scheme);
}

EnergyLedger::EnergyLedger(const SimState& initial, const FluidParams& fluid,
                           const SchemeParams& scheme) {
  const double ratio = scheme.r * fluid.alpha2 * fluid.alpha2 / fluid.mu1;
  if (scheme.theta > 0.5 + 1e-12)
    throw HypothesisViolation("energy ledger requires theta ≤ 1/2");
  if (ratio > 1.5 + 1e-12) throw HypothesisViolation("energy ledger requires r α₂²/μ₁ ≤ 3/2");
  const EnergyTerms e = energy_terms(initial, fluid, scheme);
  LedgerRow row{initial.n, initial.t, e.kinetic, e.pressure_term, e.sigma_term, 0.0, 0.0};
  row.total = row.kinetic + row.pressure_term + row.sigma_term;
  rows_.push_back(row);
}

void EnergyLedger::record(const StepReport& r) {
  LedgerRow row{r.n, r.t, r.kinetic, r.pressure_term, r.sigma_term,
                rows_.back().dissipation_cum + r.dissipation, 0.0};
  row.total = row.kinetic + row.pressure_term + row.sigma_term + row.dissipation_cum;
  rows_.push_back(row);
}

double EnergyLedger::max_increase() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rows_.size(); ++k)
    worst = std::max(worst, rows_[k].total - rows_[k - 1].total);
  return worst;
}

bool EnergyLedger::non_increasing(double rel_tol) const {
  const double tol = rel_tol * rows_.front().total;
  for (std::size_t k = 1; k < rows_.size(); ++k)
    if (rows_[k].total > rows_[k - 1].total + tol) return false;
  return true;
}

double PoiseuilleProfile::operator()(double y) const {
  if (no_flow) return 0.0;
  const double a = std::abs(y);
  if (a >= half_width) return 0.0;
  if (a < y0) return plug_speed;
  return drive / (2.0 * mu) * (half_width * half_width - a * a) -
         alpha / mu * (half_width - a);
}

PoiseuilleProfile poiseuille_reference(double half_width, double drive, double mu,
                                       double alpha) {
  PoiseuilleProfile p{half_width, drive, mu, alpha, 0.0, 0.0, false};
  if (drive * half_width <= alpha) {
    p.no_flow = true;
    p.y0 = half_width;
    return p;
  }
  p.y0 = alpha / drive;
  p.plug_speed = drive / (2.0 * mu) * (half_width - p.y0) * (half_width - p.y0);
  return p;
}

int PlugMask::plug_count() const {
  return static_cast<int>(std::count(yielded.begin(), yielded.end(), false));
}

int PlugMask::yielded_count() const {
  return static_cast<int>(std::count(yielded.begin(), yielded.end(), true));
}

PlugMask plug_mask(const TensorField& sigma, const TensorField& /*du*/, double tol_plug) {
  PlugMask m;
  const auto s = sigma.values();
  m.yielded.resize(s.size());
  for (std::size_t c = 0; c < s.size(); ++c)
    m.yielded[c] = second_invariant(s[c]) >= 1.0 - tol_plug;
  return m;
}

double least_squares_order(const std::vector<double>& dts, const std::vector<double>& errors) {
  const std::size_t n = dts.size();
  if (n < 2 || errors.size() != n) throw ValidationError("least squares order needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = std::log(dts[k]);
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceTable temporal_convergence_study(
    const std::function<std::pair<VelocityField, ScalarField>(double)>& simulate,
    const std::vector<double>& dts, double dt_ref) {
  if (dts.empty()) throw ValidationError("no time steps given");
  if (dt_ref > *std::min_element(dts.begin(), dts.end()) / 16.0 * (1 + 1e-12))
    throw ValidationError("reference dt must be at most min(dt)/16");
  const auto [u_ref, rho_ref] = simulate(dt_ref);
  ConvergenceTable t;
  t.dts = dts;
  for (double dt : dts) {
    auto [u, rho] = simulate(dt);
    axpy(-1.0, u_ref, u);
    axpy(-1.0, rho_ref, rho);
    t.velocity_errors.push_back(l2_norm(u));
    t.density_errors.push_back(l2_norm(rho));
  }
  t.velocity_order = least_squares_order(t.dts, t.velocity_errors);
  t.density_order = least_squares_order(t.dts, t.density_errors);
  return t;
}

}  // namespace bingham
