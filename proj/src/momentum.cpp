#include "bingham/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>

#include "bingham/errors.hpp"

namespace bingham {

double SchemeParams::fp_tolerance(const MacGrid& grid) const {
  return fp_tol > 0.0 ? fp_tol : 1e-8 * std::sqrt(grid.lx() * grid.ly());
}

void SchemeParams::validate(const FluidParams& fluid) const {
  auto fail = [](const std::string& what, double lhs) {
    std::ostringstream os;
    os.precision(12);
    os << what << " violated (left-hand side " << lhs << ")";
    throw ValidationError(os.str());
  };
  if (!(dt > 0.0)) fail("dt > 0", dt);
  if (!(r > 0.0)) fail("r > 0", r);
  if (!(theta > 0.0 && theta < 1.0)) fail("0 < theta < 1", theta);
  if (fp_max_iter < 1) fail("fp_max_iter >= 1", fp_max_iter);
  if (anderson_depth < 0) fail("anderson_depth >= 0", anderson_depth);
  const double ratio = r * fluid.alpha2 * fluid.alpha2 / fluid.mu1;
  const double slack = 1e-12;
  const double contraction = 4.0 * theta + ratio;
  if (contraction > 4.0 * (1.0 + slack)) fail("4θ + r α₂²/μ₁ ≤ 4", contraction);
  if (stability_mode) {
    if (theta > 0.5 * (1.0 + slack)) fail("theta ≤ 1/2", theta);
    if (ratio > 1.5 * (1.0 + slack)) fail("r α₂²/μ₁ ≤ 3/2", ratio);
  }
}

double SchemeParams::saturating_r(double theta, const FluidParams& fluid) {
  if (fluid.alpha2 == 0.0) throw ValidationError("saturating r needs alpha2 > 0");
  return 4.0 * (1.0 - theta) * fluid.mu1 / (fluid.alpha2 * fluid.alpha2);
}

MomentumOperator::MomentumOperator(const ScalarField& rho_new, const ScalarField& rho_old,
                                   const ScalarField& mu_new, const VelocityField& u_hat_old,
                                   double dt)
    : mass_(face_average(rho_new)),
      viscous_(mu_new),
      advection_(mass_flux(rho_new, u_hat_old)),
      diagonal_(viscous_.diagonal()) {
  axpy(1.0, face_average(rho_old), mass_);
  scale(mass_, 0.5 / dt);
  axpy(1.0, mass_, diagonal_);
  diagonal_.enforce_boundary();
}

void MomentumOperator::apply(const VelocityField& v, VelocityField& out) const {
  viscous_.apply(v, out);
  advection_.apply(v, out, true);
  auto o = out.values();
  const auto m = mass_.values();
  const auto x = v.values();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] += m[k] * x[k];
  out.enforce_boundary();
}

VelocityField apply_momentum_operator(const VelocityField& v, const ScalarField& rho_new,
                                      const ScalarField& rho_old, const ScalarField& mu_new,
                                      const VelocityField& u_hat_old, double dt) {
  VelocityField out(v.grid());
  MomentumOperator(rho_new, rho_old, mu_new, u_hat_old, dt).apply(v, out);
  return out;
}

namespace {

TensorField scaled_by_alpha(const TensorField& sigma, const ScalarField& alpha) {
  TensorField out = sigma;
  auto s = out.values();
  const auto a = alpha.values();
  for (std::size_t c = 0; c < s.size(); ++c) s[c] *= a[c];
  return out;
}

// Anderson history of residual, image and image-velocity differences with a cached Gram matrix.
class AndersonHistory {
 public:
  explicit AndersonHistory(std::size_t depth) : depth_(depth) {}

  void clear() {
    dF.clear();
    dG.clear();
    dU.clear();
    gram_.clear();
  }

  void push(TensorField f, TensorField g, VelocityField u) {
    if (dF.size() == depth_) {
      dF.pop_front();
      dG.pop_front();
      dU.pop_front();
      gram_.pop_front();
      for (auto& row : gram_) row.pop_front();
    }
    std::deque<double> row;
    for (std::size_t i = 0; i < dF.size(); ++i) {
      row.push_back(inner_product(dF[i], f));
      gram_[i].push_back(row.back());
    }
    row.push_back(inner_product(f, f));
    gram_.push_back(std::move(row));
    dF.push_back(std::move(f));
    dG.push_back(std::move(g));
    dU.push_back(std::move(u));
  }

  // argmin over gamma of |f - sum gamma_i dF_i| by regularized normal equations.
  std::vector<double> mix(const TensorField& f) const {
    const std::size_t m = dF.size();
    if (m == 0) return {};
    std::vector<double> a(m * m), b(m);
    double trace = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      b[i] = inner_product(dF[i], f);
      for (std::size_t j = 0; j < m; ++j) a[i * m + j] = gram_[i][j];
      trace += a[i * m + i];
    }
    if (!(trace > 0.0)) return {};
    for (std::size_t i = 0; i < m; ++i) a[i * m + i] += 1e-12 * trace;
    // Cholesky; the matrix is symmetric positive definite after regularization.
    for (std::size_t j = 0; j < m; ++j) {
      double d = a[j * m + j];
      for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
      if (!(d > 0.0)) return {};
      a[j * m + j] = std::sqrt(d);
      for (std::size_t i = j + 1; i < m; ++i) {
        double v = a[i * m + j];
        for (std::size_t k = 0; k < j; ++k) v -= a[i * m + k] * a[j * m + k];
        a[i * m + j] = v / a[j * m + j];
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < i; ++k) b[i] -= a[i * m + k] * b[k];
      b[i] /= a[i * m + i];
    }
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t k = i + 1; k < m; ++k) b[i] -= a[k * m + i] * b[k];
      b[i] /= a[i * m + i];
    }
    return b;
  }

  std::deque<TensorField> dF, dG;
  std::deque<VelocityField> dU;

 private:
  std::size_t depth_;
  std::deque<std::deque<double>> gram_;
};

}  // namespace

VelocityField assemble_momentum_rhs(const ScalarField& /*rho_new*/, const ScalarField& rho_old,
                                    const VelocityField& u_old, const ScalarField& p_old,
                                    const ScalarField& q_old, const ScalarField& alpha_new,
                                    const TensorField& sigma_iter, double dt) {
  VelocityField rhs = face_average(rho_old);
  {
    auto r = rhs.values();
    const auto u = u_old.values();
    for (std::size_t k = 0; k < r.size(); ++k) r[k] *= u[k] / dt;
  }
  ScalarField pq = p_old;
  axpy(1.0, q_old, pq);
  axpy(-1.0, gradient_to_faces(pq), rhs);
  axpy(1.0, tensor_divergence(scaled_by_alpha(sigma_iter, alpha_new)), rhs);
  rhs.enforce_boundary();
  return rhs;
}

TensorField bingham_projection(const TensorField& sigma_k, const TensorField& sigma_n,
                               const TensorField& du, const ScalarField& alpha, double r,
                               double theta) {
  TensorField out(sigma_k.grid());
  const auto sk = sigma_k.values();
  const auto sn = sigma_n.values();
  const auto d = du.values();
  const auto a = alpha.values();
  auto o = out.values();
  for (std::size_t c = 0; c < o.size(); ++c) {
    const SymTensor2 target = sk[c] + (r * a[c]) * d[c] + theta * (sn[c] - sk[c]);
    o[c] = project_lambda(target).inner();
  }
  return out;
}

FixedPointResult fixed_point_solve(const SimState& state, const ScalarField& rho_new,
                                   const ScalarField& mu_new, const ScalarField& alpha_new,
                                   const SchemeParams& params, const VelocityField* forcing) {
  const MacGrid& g = state.grid();
  const MomentumOperator op(rho_new, state.rho, mu_new, state.u_hat, params.dt);
  auto apply = [&op](const VelocityField& in, VelocityField& out) { op.apply(in, out); };
  const std::optional<VelocityField> diag(op.diagonal());

  VelocityField rhs = assemble_momentum_rhs(rho_new, state.rho, state.u, state.p, state.q,
                                            alpha_new, state.sigma, params.dt);
  if (forcing) {
    axpy(1.0, *forcing, rhs);
    rhs.enforce_boundary();
  }
  FixedPointResult res{state.u, state.sigma, {}};
  res.u.enforce_boundary();
  bicgstab(apply, rhs, res.u, params.momentum_solver, diag);

  SolverConfig inc_cfg = params.momentum_solver;
  inc_cfg.rel_tol = params.increment_rel_tol;
  const double tol = params.fp_tolerance(g);
  const std::size_t depth = static_cast<std::size_t>(std::max(0, params.anderson_depth));
  TensorField sigma_k = state.sigma;
  FixedPointReport& rep = res.report;
  AndersonHistory history(depth);
  std::optional<TensorField> f_prev, g_prev;
  std::optional<VelocityField> ug_prev;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    TensorField sigma_next = bingham_projection(sigma_k, state.sigma, strain_rate(res.u),
                                                alpha_new, params.r, params.theta);
    TensorField diff = sigma_next;
    {
      auto dv = diff.values();
      const auto sv = sigma_k.values();
      for (std::size_t c = 0; c < dv.size(); ++c) dv[c] -= sv[c];
    }
    const double residual = l2_norm(diff);
    rep.residual_history.push_back(residual);
    rep.iterations = static_cast<int>(rep.residual_history.size());
    res.sigma = std::move(sigma_next);
    if (residual <= tol) break;
    if (rep.iterations >= params.fp_max_iter) {
      rep.stalled = true;
      break;
    }
    // u(sigma^{k+1}) - u(sigma^k) solves the momentum system driven by Div(alpha (sigma^{k+1} - sigma^k)).
    const VelocityField drhs = tensor_divergence(scaled_by_alpha(diff, alpha_new));
    VelocityField du(g);
    bicgstab(apply, drhs, du, inc_cfg, diag);
    axpy(1.0, du, res.u);
    if (depth == 0) {
      sigma_k = res.sigma;
      continue;
    }
    if (residual > 1e3 * best) history.clear();
    best = std::min(best, residual);
    if (f_prev) {
      TensorField a = diff, b = res.sigma;
      VelocityField c = res.u;
      axpy(-1.0, *f_prev, a);
      axpy(-1.0, *g_prev, b);
      axpy(-1.0, *ug_prev, c);
      history.push(std::move(a), std::move(b), std::move(c));
    }
    f_prev = diff;
    g_prev = res.sigma;
    ug_prev = res.u;
    sigma_k = res.sigma;
    const std::vector<double> gamma = history.mix(diff);
    // The velocity is affine in the plastic tensor, so mixing images mixes their velocities.
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      axpy(-gamma[i], history.dG[i], sigma_k);
      axpy(-gamma[i], history.dU[i], res.u);
    }
  }
  if (rep.iterations >= 3) {
    const auto& h = rep.residual_history;
    double log_sum = 0.0;
    int count = 0;
    for (std::size_t k = 1; k < h.size(); ++k) {
      if (h[k - 1] > 0.0 && h[k] > 0.0) {
        log_sum += std::log(h[k] / h[k - 1]);
        ++count;
      }
    }
    if (count > 0) rep.observed_ratio = std::exp(log_sum / count);
  }
  return res;
}

}  // namespace bingham
