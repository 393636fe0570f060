#include "bingham/verification.hpp"

#include <algorithm>
#include <cmath>

#include "bingham/density.hpp"
#include "bingham/momentum.hpp"
#include "bingham/operators.hpp"

namespace bingham {

MacGrid random_grid(std::mt19937_64& rng, int max_cells) {
  std::uniform_int_distribution<int> cells(4, max_cells);
  std::uniform_real_distribution<double> len(0.5, 2.0);
  std::bernoulli_distribution periodic(0.3);
  return MacGrid(cells(rng), cells(rng), len(rng), len(rng), periodic(rng));
}

ScalarField random_scalar(const MacGrid& grid, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  ScalarField s(grid);
  for (double& v : s.values()) v = d(rng);
  return s;
}

VelocityField random_velocity(const MacGrid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  VelocityField u(grid);
  for (double& v : u.values()) v = d(rng);
  u.enforce_boundary();
  return u;
}

TensorField random_tensor(const MacGrid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  TensorField t(grid);
  for (auto& v : t.values()) v = {d(rng), d(rng), d(rng)};
  return t;
}

namespace {

void tally(PropertyResult& r, double defect) {
  ++r.trials;
  r.worst = std::max(r.worst, defect);
  if (!(defect <= r.tolerance)) ++r.failures;
}

}  // namespace

PropertyResult check_skew_advection(std::mt19937_64& rng, int trials, double tol) {
  PropertyResult r{"skew-symmetric advection", 0, 0, 0.0, tol};
  for (int k = 0; k < trials; ++k) {
    const MacGrid g = random_grid(rng);
    const ScalarField rho = random_scalar(g, rng, 1.0, 3.0);
    const VelocityField w = random_velocity(g, rng);
    const VelocityField v = random_velocity(g, rng);
    const VelocityField bv = skew_advection(rho, w, v);
    const double scale = l2_norm(bv) * l2_norm(v);
    tally(r, scale > 0.0 ? std::abs(inner_product(bv, v)) / scale : 0.0);
  }
  return r;
}

PropertyResult check_gradient_divergence(std::mt19937_64& rng, int trials, double tol) {
  PropertyResult r{"gradient/divergence adjointness", 0, 0, 0.0, tol};
  for (int k = 0; k < trials; ++k) {
    const MacGrid g = random_grid(rng);
    const ScalarField s = random_scalar(g, rng);
    const VelocityField u = random_velocity(g, rng);
    const VelocityField gs = gradient_to_faces(s);
    const ScalarField du = divergence(u);
    const double a = inner_product(gs, u);
    const double b = inner_product(s, du);
    // Cauchy-Schwarz bound of both pairings, immune to cancellation in a + b.
    const double scale = l2_norm(gs) * l2_norm(u) + l2_norm(s) * l2_norm(du);
    tally(r, scale > 0.0 ? std::abs(a + b) / scale : 0.0);
  }
  return r;
}

PropertyResult check_strain_divergence(std::mt19937_64& rng, int trials, double tol) {
  PropertyResult r{"strain/tensor-divergence adjointness", 0, 0, 0.0, tol};
  for (int k = 0; k < trials; ++k) {
    const MacGrid g = random_grid(rng);
    const TensorField t = random_tensor(g, rng);
    const VelocityField v = random_velocity(g, rng);
    const VelocityField dt = tensor_divergence(t);
    const TensorField dv = strain_rate(v);
    const double a = inner_product(dt, v);
    const double b = inner_product(t, dv);
    const double scale = l2_norm(dt) * l2_norm(v) +
                         std::sqrt(inner_product(t, t) * inner_product(dv, dv));
    tally(r, scale > 0.0 ? std::abs(a + b) / scale : 0.0);
  }
  return r;
}

PropertyResult check_projection(std::mt19937_64& rng, int trials, double tol) {
  PropertyResult r{"projection onto the unit ball of deviatoric tensors", 0, 0, 0.0, tol};
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int k = 0; k < trials; ++k) {
    const SymTensor2 s{d(rng), d(rng), d(rng)};
    const SymTensor2 t{d(rng), d(rng), d(rng)};
    const SymTensor2 ps = project_lambda(s).inner();
    const SymTensor2 pt = project_lambda(t).inner();
    const double expand =
        second_invariant(ps - pt) - second_invariant(deviatoric(s) - deviatoric(t));
    const double idem = second_invariant(project_lambda(ps).inner() - ps);
    const double outside = second_invariant(ps) - 1.0;
    tally(r, std::max({expand, idem, outside, std::abs(trace(ps)), 0.0}));
  }
  return r;
}

PropertyResult check_momentum_coercivity(std::mt19937_64& rng, int trials, double tol) {
  PropertyResult r{"momentum operator coercivity", 0, 0, 0.0, tol};
  std::uniform_real_distribution<double> dtd(1e-3, 1e-1);
  for (int k = 0; k < trials; ++k) {
    const MacGrid g = random_grid(rng);
    const double rho1 = 1.0;
    const ScalarField rho_new = random_scalar(g, rng, rho1, 3.0);
    const ScalarField rho_old = random_scalar(g, rng, rho1, 3.0);
    const ScalarField mu = random_scalar(g, rng, 0.01, 1.0);
    const VelocityField w = random_velocity(g, rng);
    const VelocityField v = random_velocity(g, rng);
    const double dt = dtd(rng);
    const double q = inner_product(apply_momentum_operator(v, rho_new, rho_old, mu, w, dt), v);
    const double lower = rho1 / dt * inner_product(v, v);
    tally(r, std::max(0.0, (lower - q) / lower));
  }
  return r;
}

PropertyResult check_transport_bounds(std::mt19937_64& rng, int trials, double tol) {
  PropertyResult r{"implicit transport maximum principle", 0, 0, 0.0, tol};
  std::uniform_real_distribution<double> dtd(1e-3, 1.0);
  for (int k = 0; k < trials; ++k) {
    const MacGrid g = random_grid(rng);
    // Random discrete stream function on nodes gives an exactly solenoidal field.
    const ScalarField noise = random_scalar(g, rng);
    VelocityField u(g);
    {
      std::uniform_real_distribution<double> d(-1.0, 1.0);
      std::vector<double> psi(static_cast<std::size_t>(g.nx() + 1) * (g.ny() + 1));
      for (int j = 0; j <= g.ny(); ++j)
        for (int i = 0; i <= g.nx(); ++i) {
          const bool wall = j == 0 || j == g.ny() || (!g.periodic_x() && (i == 0 || i == g.nx()));
          psi[j * (g.nx() + 1) + i] = wall ? 0.0 : d(rng);
        }
      if (g.periodic_x())
        for (int j = 0; j <= g.ny(); ++j) psi[j * (g.nx() + 1) + g.nx()] = psi[j * (g.nx() + 1)];
      auto at = [&](int i, int j) { return psi[j * (g.nx() + 1) + i]; };
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) u.ux(i, j) = (at(i, j + 1) - at(i, j)) / g.hy();
      for (int j = 0; j <= g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) u.uy(i, j) = -(at(i + 1, j) - at(i, j)) / g.hx();
      u.enforce_boundary();
    }
    ScalarField rho = random_scalar(g, rng, 1.0, 3.0);
    const double lo = rho.min();
    const double hi = rho.max();
    double defect = 0.0;
    try {
      const ScalarField next = advect_density(rho, u, dtd(rng));
      defect = std::max({lo - next.min(), next.max() - hi, 0.0});
    } catch (const std::exception&) {
      defect = 1.0;
    }
    tally(r, defect);
  }
  return r;
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  return {check_skew_advection(rng, trials),       check_gradient_divergence(rng, trials),
          check_strain_divergence(rng, trials),    check_projection(rng, trials),
          check_momentum_coercivity(rng, trials),  check_transport_bounds(rng, trials)};
}

}  // namespace bingham
