#include "bingham/linear_solvers.hpp"

#include <sstream>

namespace bingham {

namespace {

void remove_mean(ScalarField& s) {
  const double m = s.mean();
  for (double& v : s.values()) v -= m;
}

}  // namespace

std::pair<ScalarField, SolveStats> cg_solve(const ScalarOperator& apply, const ScalarField& rhs,
                                            const SolverConfig& cfg) {
  const double scale_ref = rhs.max_abs();
  const double m = rhs.mean();
  if (std::abs(m) > 1e-12 * scale_ref) {
    std::ostringstream os;
    os << "Poisson rhs has mean " << m << " (max |rhs| " << scale_ref << ")";
    throw IncompatibleRhs(os.str());
  }
  ScalarField b = rhs;
  remove_mean(b);
  ScalarField x(rhs.grid());

  // Plain CG with every iterate and search direction kept orthogonal to the constants.
  SolveStats st;
  st.rhs_norm = std::sqrt(dot(b, b));
  const double target = std::max(cfg.rel_tol * st.rhs_norm, cfg.abs_tol);
  ScalarField r = b;
  st.residual = st.rhs_norm;
  if (st.residual <= target) {
    st.converged = true;
    return {std::move(x), st};
  }
  ScalarField p = r;
  ScalarField ap(rhs.grid());
  double rr = dot(r, r);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    apply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) {
      st.breakdown = true;
      break;
    }
    const double a = rr / pap;
    axpy(a, p, x);
    axpy(-a, ap, r);
    remove_mean(r);
    st.iterations = it;
    const double rr_new = dot(r, r);
    st.residual = std::sqrt(rr_new);
    if (st.residual <= target) {
      st.converged = true;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    auto ps = p.values();
    const auto rs = r.values();
    for (std::size_t k = 0; k < ps.size(); ++k) ps[k] = rs[k] + beta * ps[k];
  }
  remove_mean(x);
  // Report the true residual.
  apply(x, ap);
  ScalarField rt = b;
  axpy(-1.0, ap, rt);
  st.residual = std::sqrt(dot(rt, rt));
  detail::finish(st, cfg, "conjugate gradient");
  return {std::move(x), st};
}

}  // namespace bingham
