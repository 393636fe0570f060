#include "bingham/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bingham/errors.hpp"

namespace bingham {

FluidParams FluidParams::affine(double rho1, double rho2, double mu1, double mu2, double alpha1,
                                double alpha2) {
  FluidParams f;
  f.rho1 = rho1;
  f.rho2 = rho2;
  f.mu1 = std::min(mu1, mu2);
  f.mu2 = std::max(mu1, mu2);
  f.alpha1 = std::min(alpha1, alpha2);
  f.alpha2 = std::max(alpha1, alpha2);
  const double span = rho2 - rho1;
  auto lerp = [rho1, span](double a, double b) {
    return [=](double rho) {
      if (span == 0.0) return a;
      const double s = std::clamp((rho - rho1) / span, 0.0, 1.0);
      return a + (b - a) * s;
    };
  };
  f.mu_of_rho = lerp(mu1, mu2);
  f.alpha_of_rho = lerp(alpha1, alpha2);
  f.lipschitz_mu = span > 0.0 ? std::abs(mu2 - mu1) / span : 0.0;
  f.lipschitz_alpha = span > 0.0 ? std::abs(alpha2 - alpha1) / span : 0.0;
  return f;
}

FluidParams FluidParams::tabulated(double rho1, double rho2,
                                   const std::vector<std::array<double, 3>>& rows) {
  if (rows.size() < 2) throw ValidationError("tabulated law needs at least two rows");
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (!(rows[k][0] > rows[k - 1][0]))
      throw ValidationError("tabulated law: density column must be strictly increasing");
  if (rows.front()[0] > rho1 || rows.back()[0] < rho2)
    throw ValidationError("tabulated law must cover [rho1, rho2]");

  auto interp = [rows](int col) {
    return [rows, col](double rho) {
      if (rho <= rows.front()[0]) return rows.front()[col];
      if (rho >= rows.back()[0]) return rows.back()[col];
      auto it = std::upper_bound(rows.begin(), rows.end(), rho,
                                 [](double v, const std::array<double, 3>& r) { return v < r[0]; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double s = (rho - lo[0]) / (hi[0] - lo[0]);
      return lo[col] + s * (hi[col] - lo[col]);
    };
  };

  FluidParams f;
  f.rho1 = rho1;
  f.rho2 = rho2;
  f.mu_of_rho = interp(1);
  f.alpha_of_rho = interp(2);
  // Extremes of a piecewise-linear law on [rho1, rho2] sit at the endpoints or at knots.
  std::vector<double> probes{rho1, rho2};
  for (const auto& r : rows)
    if (r[0] > rho1 && r[0] < rho2) probes.push_back(r[0]);
  f.mu1 = f.mu2 = f.mu_of_rho(rho1);
  f.alpha1 = f.alpha2 = f.alpha_of_rho(rho1);
  for (double rho : probes) {
    f.mu1 = std::min(f.mu1, f.mu_of_rho(rho));
    f.mu2 = std::max(f.mu2, f.mu_of_rho(rho));
    f.alpha1 = std::min(f.alpha1, f.alpha_of_rho(rho));
    f.alpha2 = std::max(f.alpha2, f.alpha_of_rho(rho));
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double drho = rows[k][0] - rows[k - 1][0];
    f.lipschitz_mu = std::max(f.lipschitz_mu, std::abs(rows[k][1] - rows[k - 1][1]) / drho);
    f.lipschitz_alpha = std::max(f.lipschitz_alpha, std::abs(rows[k][2] - rows[k - 1][2]) / drho);
  }
  return f;
}

void FluidParams::validate() const {
  if (!(rho1 > 0.0)) throw ValidationError("rho1 > 0 violated");
  if (!(rho1 <= rho2)) throw ValidationError("rho1 <= rho2 violated");
  if (!(mu1 > 0.0)) throw ValidationError("mu1 > 0 violated");
  if (!(mu1 <= mu2)) throw ValidationError("mu1 <= mu2 violated");
  if (!(alpha1 >= 0.0)) throw ValidationError("alpha1 >= 0 violated");
  if (!(alpha1 <= alpha2)) throw ValidationError("alpha1 <= alpha2 violated");
  if (!mu_of_rho || !alpha_of_rho) throw ValidationError("coefficient laws not set");
  constexpr int samples = 65;
  const double slack = 1e-12;
  for (int k = 0; k < samples; ++k) {
    const double rho = rho1 + (rho2 - rho1) * k / (samples - 1);
    const double mu = mu_of_rho(rho);
    const double al = alpha_of_rho(rho);
    if (mu < mu1 * (1 - slack) || mu > mu2 * (1 + slack)) {
      std::ostringstream os;
      os << "mu1 <= mu(rho) <= mu2 violated at rho = " << rho << " (mu = " << mu << ")";
      throw ValidationError(os.str());
    }
    if (al < alpha1 - slack * alpha2 || al > alpha2 * (1 + slack)) {
      std::ostringstream os;
      os << "alpha1 <= alpha(rho) <= alpha2 violated at rho = " << rho << " (alpha = " << al
         << ")";
      throw ValidationError(os.str());
    }
  }
}

TransportOperator::TransportOperator(const VelocityField& u_hat, double dt)
    : grid_(u_hat.grid()), rows_(grid_.n_cells()) {
  const MacGrid& g = grid_;
  const double sx = dt * g.hy() / g.cell_area();  // dt |F| / A for an x-face, per unit velocity
  const double sy = dt * g.hx() / g.cell_area();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      Row& row = rows_[g.cell(i, j)];
      auto inflow = [&](int ni, int nj, double w) {
        if (w <= 0.0) return;
        row.nb[row.size] = static_cast<int>(g.cell(ni, nj));
        row.w[row.size] = w;
        row.diag += w;
        ++row.size;
        identity_ = false;
      };
      const double uw = u_hat.ux(i, j);
      const double ue = u_hat.ux(g.wrap(i + 1), j);
      const double us = u_hat.uy(i, j);
      const double un = u_hat.uy(i, j + 1);
      if (g.periodic_x() || i > 0) inflow(g.wrap(i - 1), j, sx * uw);
      if (g.periodic_x() || i < g.nx() - 1) inflow(g.wrap(i + 1), j, -sx * ue);
      if (j > 0) inflow(i, j - 1, sy * us);
      if (j < g.ny() - 1) inflow(i, j + 1, -sy * un);
    }
  }
}

void TransportOperator::apply(const ScalarField& rho, ScalarField& out) const {
  const auto x = rho.values();
  auto o = out.values();
  for (std::size_t c = 0; c < rows_.size(); ++c) {
    const Row& r = rows_[c];
    double s = r.diag * x[c];
    for (int k = 0; k < r.size; ++k) s -= r.w[k] * x[r.nb[k]];
    o[c] = s;
  }
}

ScalarField TransportOperator::diagonal() const {
  ScalarField d(grid_);
  auto v = d.values();
  for (std::size_t c = 0; c < rows_.size(); ++c) v[c] = rows_[c].diag;
  return d;
}

void TransportOperator::jacobi_sweep(const ScalarField& rhs, ScalarField& rho) const {
  const ScalarField old = rho;
  const auto x = old.values();
  const auto b = rhs.values();
  auto o = rho.values();
  for (std::size_t c = 0; c < rows_.size(); ++c) {
    const Row& r = rows_[c];
    double s = b[c];
    for (int k = 0; k < r.size; ++k) s += r.w[k] * x[r.nb[k]];
    o[c] = s / r.diag;
  }
}

ScalarField advect_density(const ScalarField& rho_prev, const VelocityField& u_hat, double dt,
                           const SolverConfig& cfg) {
  const TransportOperator op(u_hat, dt);
  ScalarField rho = rho_prev;
  if (op.is_identity()) return rho;

  auto apply = [&op](const ScalarField& in, ScalarField& out) { op.apply(in, out); };
  SolverConfig solve_cfg = cfg;
  solve_cfg.throw_on_failure = false;
  const SolveStats st = bicgstab(apply, rho_prev, rho, solve_cfg, std::optional(op.diagonal()));
  if (st.breakdown || !std::isfinite(st.residual)) {
    rho = rho_prev;
    for (int k = 0; k < cfg.max_iter; ++k) op.jacobi_sweep(rho_prev, rho);
  }
  // Jacobi sweeps are convex combinations, which pull any roundoff excursion
  // from the Krylov iterate back inside the admissible range.
  for (int k = 0; k < 3; ++k) op.jacobi_sweep(rho_prev, rho);

  const double lo = rho_prev.min();
  const double hi = rho_prev.max();
  const double slack = 1e-12;
  if (rho.min() < lo - slack || rho.max() > hi + slack) {
    std::ostringstream os;
    os.precision(17);
    os << "density left [" << lo << ", " << hi << "]: range [" << rho.min() << ", " << rho.max()
       << "]";
    throw MaxPrincipleViolation(os.str());
  }
  ScalarField check(rho.grid());
  op.apply(rho, check);
  axpy(-1.0, rho_prev, check);
  const double res = std::sqrt(dot(check, check));
  const double rhs = std::sqrt(dot(rho_prev, rho_prev));
  if (res > 1e-9 * rhs && cfg.throw_on_failure)
    throw NonConvergence("transport solve residual " + std::to_string(res));
  return rho;
}

std::pair<ScalarField, ScalarField> eval_coefficients(const ScalarField& rho,
                                                      const FluidParams& params) {
  ScalarField mu(rho.grid());
  ScalarField alpha(rho.grid());
  const auto r = rho.values();
  auto m = mu.values();
  auto a = alpha.values();
  for (std::size_t c = 0; c < r.size(); ++c) {
    m[c] = params.mu_of_rho(r[c]);
    a[c] = params.alpha_of_rho(r[c]);
  }
  return {std::move(mu), std::move(alpha)};
}

}  // namespace bingham
