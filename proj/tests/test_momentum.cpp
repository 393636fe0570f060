#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bingham/errors.hpp"
#include "bingham/integrator.hpp"
#include "bingham/momentum.hpp"
#include "bingham/operators.hpp"
#include "bingham/verification.hpp"

using namespace bingham;

namespace {

constexpr double kPi = std::numbers::pi;

SimState rest_state(const MacGrid& g, double rho) {
  SimState s(g);
  s.rho = ScalarField(g, rho);
  return s;
}

}  // namespace

TEST_CASE("scheme parameter validation names the violated inequality") {
  const FluidParams f = FluidParams::affine(1, 2, 0.1, 0.2, 0.5, 1.0);
  SchemeParams p;
  p.theta = 0.5;
  p.r = SchemeParams::saturating_r(0.5, f);
  CHECK_NOTHROW(p.validate(f));
  p.r *= 1.01;
  CHECK_THROWS_WITH_AS(p.validate(f), doctest::Contains("4θ + r α₂²/μ₁ ≤ 4"), ValidationError);
  p.r = 0.1;
  p.theta = 0.6;
  p.stability_mode = true;
  CHECK_THROWS_WITH_AS(p.validate(f), doctest::Contains("theta ≤ 1/2"), ValidationError);
  p.theta = 0.25;
  p.r = 0.16;  // ratio 1.6
  CHECK_THROWS_WITH_AS(p.validate(f), doctest::Contains("r α₂²/μ₁ ≤ 3/2"), ValidationError);
  p.stability_mode = false;
  CHECK_NOTHROW(p.validate(f));
  p.theta = 1.0;
  CHECK_THROWS_AS(p.validate(f), ValidationError);
  CHECK(SchemeParams::saturating_r(0.25, f) == doctest::Approx(4 * 0.75 * 0.1));
}

TEST_CASE("momentum right-hand side") {
  const MacGrid g(8, 8, 1, 1);
  const ScalarField z(g);
  CHECK(assemble_momentum_rhs(z, z, VelocityField(g), z, z, z, TensorField(g), 0.1).max_abs() == 0.0);
  std::mt19937_64 rng(1);
  const VelocityField u = random_velocity(g, rng);
  const double c = 1.7, dt = 0.02;
  const VelocityField rhs = assemble_momentum_rhs(ScalarField(g, c), ScalarField(g, c), u, z, z,
                                                  ScalarField(g, 1.0), TensorField(g), dt);
  for (std::size_t k = 0; k < g.n_faces(); ++k)
    CHECK(rhs.values()[k] == doctest::Approx(c / dt * u.values()[k]).epsilon(1e-14));
}

TEST_CASE("scaled tensor divergence is adjoint to the strain rate") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 30; ++k) {
    const MacGrid g = random_grid(rng);
    const ScalarField alpha = random_scalar(g, rng, 0.0, 2.0);
    TensorField as = random_tensor(g, rng);
    for (std::size_t c = 0; c < g.n_cells(); ++c) as.values()[c] *= alpha.values()[c];
    const VelocityField v = random_velocity(g, rng);
    const double a = inner_product(tensor_divergence(as), v);
    const double b = inner_product(as, strain_rate(v));
    CHECK(std::abs(a + b) <= 1e-11 * (std::abs(a) + std::abs(b) + l2_norm(as) * l2_norm(strain_rate(v))));
  }
}

TEST_CASE("momentum operator") {
  const MacGrid g(12, 12, 1, 1);
  std::mt19937_64 rng(3);
  const ScalarField rho = random_scalar(g, rng, 1, 3);
  const ScalarField mu = random_scalar(g, rng, 0.05, 0.5);
  const VelocityField uh = VelocityField::from_stream_function(
      g, [](double x, double y) { return std::pow(std::sin(kPi * x) * std::sin(kPi * y), 2); });
  CHECK(apply_momentum_operator(VelocityField(g), rho, rho, mu, uh, 0.01).max_abs() == 0.0);
  for (int k = 0; k < 20; ++k) {
    const VelocityField v = random_velocity(g, rng);
    const double dt = 0.01;
    const double q = inner_product(apply_momentum_operator(v, rho, rho, mu, uh, dt), v);
    CHECK(q >= (1.0 / dt) * inner_product(v, v) * (1 - 1e-12));
  }
}

TEST_CASE("momentum operator against a manufactured field") {
  // constant rho, mu, zero advection: A v = (c/dt) v - 2 mu Div(D v), interior error O(h^2)
  const double c = 2.0, mu = 0.1, dt = 0.05;
  double prev = 0;
  for (int n : {16, 32, 64}) {
    const MacGrid g(n, n, 1, 1);
    auto vx = [](double x, double y) { return std::sin(kPi * x) * std::sin(2 * kPi * y); };
    auto vy = [](double x, double y) { return std::sin(2 * kPi * x) * std::sin(kPi * y); };
    VelocityField v = VelocityField::sample(g, vx, vy);
    v.enforce_boundary();
    const VelocityField av = apply_momentum_operator(v, ScalarField(g, c), ScalarField(g, c),
                                                     ScalarField(g, mu), VelocityField(g), dt);
    // -2 mu Div(Dv) = -mu (lap v + grad div v)
    auto fx = [&](double x, double y) {
      const double lap = -5 * kPi * kPi * vx(x, y);
      const double graddiv = -kPi * kPi * std::sin(kPi * x) * std::sin(2 * kPi * y) +
                             2 * kPi * kPi * std::cos(2 * kPi * x) * std::cos(kPi * y);
      return c / dt * vx(x, y) - mu * (lap + graddiv);
    };
    double err = 0;
    for (int j = 1; j < n - 1; ++j)
      for (int i = 2; i < n - 1; ++i) err = std::max(err, std::abs(av.ux(i, j) - fx(g.x_node(i), g.y_center(j))));
    if (prev > 0) CHECK(prev / err > 3.0);
    prev = err;
  }
}

TEST_CASE("Newtonian limit converges in one fixed-point iteration") {
  const MacGrid g(10, 10, 1, 1);
  std::mt19937_64 rng(4);
  SimState s = rest_state(g, 1.0);
  s.u = VelocityField::from_stream_function(
      g, [](double x, double y) { return std::pow(std::sin(kPi * x) * std::sin(kPi * y), 2); });
  s.u_hat = s.u;
  // any admissible sigma
  for (auto& t : s.sigma.values()) t = project_lambda({0, 0, 0.3}).inner();
  SchemeParams p;
  p.dt = 0.01;
  p.theta = 0.2;
  p.r = 1.0;
  const ScalarField z(g);
  const auto res = fixed_point_solve(s, s.rho, ScalarField(g, 0.1), z, p);
  CHECK(res.report.iterations == 1);
  // With alpha = 0 the projection target is (1 - theta) sigma^0 + theta sigma^0 = sigma^0.
  for (std::size_t c = 0; c < g.n_cells(); ++c) CHECK(std::abs(res.sigma.values()[c].xy - 0.3) <= 1e-15);
}

TEST_CASE("a manufactured fixed point gives zero residual at the first check") {
  // Rest state with sigma in the interior of the ball and no forcing is a fixed point.
  const MacGrid g(8, 8, 1, 1);
  SimState s = rest_state(g, 1.0);
  SchemeParams p;
  p.dt = 0.01;
  p.theta = 0.1;
  p.r = 1.0;
  const auto res = fixed_point_solve(s, s.rho, ScalarField(g, 0.1), ScalarField(g, 0.2), p);
  CHECK(res.report.iterations == 1);
  CHECK(res.report.residual_history.front() == 0.0);
  CHECK_FALSE(res.report.observed_ratio.has_value());
}

TEST_CASE("fixed-point convergence is geometric with ratio 1 - theta") {
  const MacGrid g(16, 16, 1, 1);
  const FluidParams f = FluidParams::affine(1, 1, 0.05, 0.05, 1.0, 1.0);
  SimState s = rest_state(g, 1.0);
  s.u = VelocityField::from_stream_function(
      g, [](double x, double y) { return 0.5 * std::pow(std::sin(kPi * x) * std::sin(kPi * y), 2); });
  s.u_hat = s.u;
  SchemeParams p;
  p.dt = 0.01;
  p.theta = 0.1;
  p.r = SchemeParams::saturating_r(p.theta, f);
  p.fp_max_iter = 1000;
  const auto res = fixed_point_solve(s, s.rho, ScalarField(g, 0.05), ScalarField(g, 1.0), p);
  CHECK_FALSE(res.report.stalled);
  REQUIRE(res.report.observed_ratio.has_value());
  CHECK(*res.report.observed_ratio <= 0.9 + 0.02);
  const auto& h = res.report.residual_history;
  for (std::size_t k = 3; k < h.size(); ++k)
    if (h[k - 1] > 10 * p.fp_tolerance(g)) CHECK(h[k] / h[k - 1] <= 0.92);
  for (const auto& t : res.sigma.values()) CHECK(second_invariant(t) <= 1 + 1e-12);
}

TEST_CASE("Anderson mixing reaches the same fixed point") {
  const MacGrid g(16, 16, 1, 1);
  const FluidParams f = FluidParams::affine(1, 1, 0.05, 0.05, 0.5, 0.5);
  SimState s = rest_state(g, 1.0);
  s.u = VelocityField::from_stream_function(
      g, [](double x, double y) { return std::pow(std::sin(kPi * x) * std::sin(kPi * y), 2); });
  s.u_hat = s.u;
  SchemeParams p;
  p.dt = 0.01;
  p.theta = 0.02;
  p.r = SchemeParams::saturating_r(p.theta, f);
  p.fp_max_iter = 5000;
  p.fp_tol = 1e-13;
  const auto plain = fixed_point_solve(s, s.rho, ScalarField(g, 0.05), ScalarField(g, 0.5), p);
  p.anderson_depth = 8;
  const auto mixed = fixed_point_solve(s, s.rho, ScalarField(g, 0.05), ScalarField(g, 0.5), p);
  CHECK_FALSE(plain.report.stalled);
  CHECK_FALSE(mixed.report.stalled);
  CHECK(mixed.report.iterations * 3 < plain.report.iterations);
  VelocityField du = mixed.u;
  axpy(-1.0, plain.u, du);
  CHECK(l2_norm(du) <= 1e-9 * l2_norm(plain.u));
}

TEST_CASE("fixed-point stall is flagged") {
  const MacGrid g(8, 8, 1, 1);
  SimState s = rest_state(g, 1.0);
  s.u = VelocityField::from_stream_function(
      g, [](double x, double y) { return std::pow(std::sin(kPi * x) * std::sin(kPi * y), 2); });
  s.u_hat = s.u;
  SchemeParams p;
  p.dt = 0.01;
  p.theta = 0.05;
  p.r = 0.1;
  p.fp_max_iter = 3;
  const auto res = fixed_point_solve(s, s.rho, ScalarField(g, 0.05), ScalarField(g, 0.5), p);
  CHECK(res.report.stalled);
  CHECK(res.report.iterations == 3);
}
