#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "bingham/errors.hpp"
#include "bingham/grid.hpp"

namespace bingham {

struct SolverConfig {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_iter = 5000;
  bool throw_on_failure = true;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;     // final ||b - A x|| in the raw Euclidean norm
  double rhs_norm = 0.0;
  bool converged = false;
  bool breakdown = false;
};

namespace detail {

template <class Field>
double norm(const Field& f) {
  return std::sqrt(dot(f, f));
}

template <class Field>
void precondition(const std::optional<Field>& inv_diag, const Field& r, Field& z) {
  auto zs = z.values();
  const auto rs = r.values();
  if (!inv_diag) {
    std::copy(rs.begin(), rs.end(), zs.begin());
    return;
  }
  const auto d = inv_diag->values();
  for (std::size_t k = 0; k < zs.size(); ++k) zs[k] = d[k] * rs[k];
}

template <class Field>
std::optional<Field> invert(const std::optional<Field>& diag) {
  if (!diag) return std::nullopt;
  Field inv = *diag;
  for (double& v : inv.values()) v = v != 0.0 ? 1.0 / v : 0.0;
  return inv;
}

inline void finish(SolveStats& s, const SolverConfig& cfg, const char* name) {
  if (!s.converged && cfg.throw_on_failure)
    throw NonConvergence(std::string(name) + " stopped after " + std::to_string(s.iterations) +
                         " iterations, residual " + std::to_string(s.residual) + " (rhs " +
                         std::to_string(s.rhs_norm) + ")");
}

}  // namespace detail

/// Preconditioned conjugate gradients for a symmetric positive (semi)definite
/// operator. `apply(in, out)` writes A in into out. The optional diagonal is
/// used as a Jacobi preconditioner. x holds the initial guess on entry.
template <class Field, class Op>
SolveStats conjugate_gradient(const Op& apply, const Field& b, Field& x, const SolverConfig& cfg,
                              const std::optional<Field>& diagonal = std::nullopt) {
  SolveStats st;
  const auto inv_diag = detail::invert(diagonal);
  Field r = b;
  Field ap(b.grid());
  apply(x, ap);
  axpy(-1.0, ap, r);
  st.rhs_norm = detail::norm(b);
  const double target = std::max(cfg.rel_tol * st.rhs_norm, cfg.abs_tol);
  st.residual = detail::norm(r);
  if (st.residual <= target) {
    st.converged = true;
    return st;
  }
  Field z(b.grid());
  detail::precondition(inv_diag, r, z);
  Field p = z;
  double rz = dot(r, z);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    apply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      st.breakdown = true;
      break;
    }
    const double a = rz / pap;
    axpy(a, p, x);
    axpy(-a, ap, r);
    st.iterations = it;
    st.residual = detail::norm(r);
    if (st.residual <= target) {
      st.converged = true;
      break;
    }
    detail::precondition(inv_diag, r, z);
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    auto ps = p.values();
    const auto zs = z.values();
    for (std::size_t k = 0; k < ps.size(); ++k) ps[k] = zs[k] + beta * ps[k];
  }
  detail::finish(st, cfg, "conjugate gradient");
  return st;
}

/// Right-preconditioned BiCGStab for general nonsymmetric operators.
template <class Field, class Op>
SolveStats bicgstab(const Op& apply, const Field& b, Field& x, const SolverConfig& cfg,
                    const std::optional<Field>& diagonal = std::nullopt) {
  SolveStats st;
  const auto inv_diag = detail::invert(diagonal);
  const auto g = b.grid();
  Field r = b;
  Field tmp(g);
  apply(x, tmp);
  axpy(-1.0, tmp, r);
  st.rhs_norm = detail::norm(b);
  const double target = std::max(cfg.rel_tol * st.rhs_norm, cfg.abs_tol);
  st.residual = detail::norm(r);
  if (st.residual <= target) {
    st.converged = true;
    return st;
  }
  const Field r0 = r;
  Field p(g), v(g), s(g), t(g), phat(g), shat(g);
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double rho_new = dot(r0, r);
    if (rho_new == 0.0 || omega == 0.0) {
      st.breakdown = true;
      break;
    }
    if (it == 1) {
      p = r;
    } else {
      const double beta = (rho_new / rho) * (alpha / omega);
      auto ps = p.values();
      const auto rs = r.values();
      const auto vs = v.values();
      for (std::size_t k = 0; k < ps.size(); ++k) ps[k] = rs[k] + beta * (ps[k] - omega * vs[k]);
    }
    rho = rho_new;
    detail::precondition(inv_diag, p, phat);
    apply(phat, v);
    const double r0v = dot(r0, v);
    if (r0v == 0.0) {
      st.breakdown = true;
      break;
    }
    alpha = rho / r0v;
    s = r;
    axpy(-alpha, v, s);
    st.iterations = it;
    const double snorm = detail::norm(s);
    if (snorm <= target) {
      axpy(alpha, phat, x);
      st.residual = snorm;
      st.converged = true;
      break;
    }
    detail::precondition(inv_diag, s, shat);
    apply(shat, t);
    const double tt = dot(t, t);
    omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
    axpy(alpha, phat, x);
    axpy(omega, shat, x);
    r = s;
    axpy(-omega, t, r);
    st.residual = detail::norm(r);
    if (st.residual <= target) {
      st.converged = true;
      break;
    }
  }
  if (st.converged) {
    // Report the true residual rather than the recursively updated one.
    apply(x, tmp);
    Field rr = b;
    axpy(-1.0, tmp, rr);
    st.residual = detail::norm(rr);
  }
  detail::finish(st, cfg, "BiCGStab");
  return st;
}

}  // namespace bingham

namespace bingham {

using ScalarOperator = std::function<void(const ScalarField&, ScalarField&)>;

/// CG for a symmetric positive semidefinite operator whose nullspace is the
/// constants (the Neumann Laplacian). Throws IncompatibleRhs when the rhs mean
/// is not zero to 1e-12 relative to max|rhs|. The returned solution has zero mean.
std::pair<ScalarField, SolveStats> cg_solve(const ScalarOperator& apply, const ScalarField& rhs,
                                            const SolverConfig& cfg);

}  // namespace bingham
