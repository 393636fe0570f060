#include <doctest.h>

#include <random>

#include "bingham/tensor.hpp"

using namespace bingham;

namespace {

void check_close(const SymTensor2& a, const SymTensor2& b, double tol) {
  CHECK(std::abs(a.xx - b.xx) <= tol);
  CHECK(std::abs(a.yy - b.yy) <= tol);
  CHECK(std::abs(a.xy - b.xy) <= tol);
}

SymTensor2 random_sym(std::mt19937_64& rng, double scale = 3.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return {d(rng), d(rng), d(rng)};
}

}  // namespace

TEST_CASE("second invariant") {
  CHECK(second_invariant({1, -1, 0}) == doctest::Approx(1.0));
  CHECK(second_invariant({0, 0, 2}) == doctest::Approx(2.0));
  CHECK(second_invariant({}) == 0.0);
}

TEST_CASE("second invariant is absolutely homogeneous") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const SymTensor2 t = random_sym(rng);
    const double c = std::uniform_real_distribution<double>(-5, 5)(rng);
    CHECK(std::abs(second_invariant(c * t) - std::abs(c) * second_invariant(t)) <=
          1e-14 * (1 + std::abs(c) * second_invariant(t)));
  }
}

TEST_CASE("deviatoric part") {
  check_close(deviatoric(SymTensor2::identity()), {}, 0.0);
  check_close(deviatoric({3, 1, 0}), {1, -1, 0}, 1e-15);
  const SymTensor2 free{0.3, -0.3, 0.7};
  CHECK(deviatoric(free) == free);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 50; ++k) CHECK(std::abs(trace(deviatoric(random_sym(rng)))) <= 1e-14);
}

TEST_CASE("projection onto the unit ball of trace-free tensors") {
  check_close(project_lambda({0, 0, 0.5}).inner(), {0, 0, 0.5}, 0.0);
  check_close(project_lambda({0, 0, 2}).inner(), {0, 0, 1}, 1e-15);
  check_close(project_lambda({4, -2, 0}).inner(), {1, -1, 0}, 1e-15);
}

TEST_CASE("projection properties on random tensors") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const SymTensor2 s = random_sym(rng), t = random_sym(rng);
    const SymTensor2 ps = project_lambda(s).inner(), pt = project_lambda(t).inner();
    CHECK(std::abs(trace(ps)) <= 1e-14);
    CHECK(second_invariant(ps) <= 1 + 1e-12);
    // non-expansive against the deviatoric parts
    CHECK(second_invariant(ps - pt) <= second_invariant(deviatoric(s) - deviatoric(t)) + 1e-14);
    // idempotent
    check_close(project_lambda(ps).inner(), ps, 1e-14);
  }
}

TEST_CASE("fixed-point characterization of the projection") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ell(0.01, 10.0);
  for (int k = 0; k < 100; ++k) {
    const SymTensor2 d = deviatoric(random_sym(rng));
    const SymTensor2 s = (1.0 / second_invariant(d)) * d;
    check_close(project_lambda(s + ell(rng) * d).inner(), s, 1e-12);
    CHECK(second_invariant(s) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("relaxed projection target") {
  const LambdaTensor a = project_lambda({0.2, -0.2, 0.1});
  const LambdaTensor b = project_lambda({0, 0, -0.4});
  check_close(relaxed_projection_target(a, b, {}, 1.0, 1.0, 1.0), b.inner(), 1e-16);
  check_close(relaxed_projection_target(a, b, {}, 1.0, 1.0, 0.0), a.inner(), 0.0);
  const LambdaTensor zero;
  check_close(relaxed_projection_target(zero, zero, {0, 0, 1}, 2.0, 0.5, 0.3), {0, 0, 1}, 0.0);
}
