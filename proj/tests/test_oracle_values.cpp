// Values frozen from tests/oracle/generate.py (NumPy/SciPy, independent assembly).
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bingham/density.hpp"
#include "bingham/diagnostics.hpp"
#include "bingham/pressure.hpp"

using namespace bingham;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("Poiseuille profile against a quadrature of the stress balance") {
  const PoiseuilleProfile p = poiseuille_reference(0.5, 1.0, 0.1, 0.25);
  CHECK(p.y0 == doctest::Approx(0.25));
  const std::pair<double, double> frozen[] = {{0.0, 0.3125}, {0.1, 0.3125}, {0.25, 0.3125}, {0.3, 0.3},
                                              {0.4, 0.2},    {0.45, 0.1125}, {-0.35, 0.2625}};
  for (const auto& [y, u] : frozen) CHECK(p(y) == doctest::Approx(u).epsilon(1e-12));
}

TEST_CASE("Poiseuille special cases") {
  const PoiseuilleProfile newtonian = poiseuille_reference(1.0, 2.0, 0.5, 0.0);
  CHECK(newtonian(0.3) == doctest::Approx(2.0 / (2 * 0.5) * (1 - 0.09)));
  const PoiseuilleProfile threshold = poiseuille_reference(1.0, 2.0, 0.5, 2.0);
  CHECK(threshold.no_flow);
  CHECK(threshold(0.0) == 0.0);
  const PoiseuilleProfile half = poiseuille_reference(1.0, 2.0, 0.5, 1.0);
  CHECK(half.y0 == doctest::Approx(0.5));
  CHECK(half.plug_speed == doctest::Approx(2.0 / (2 * 0.5) * 0.25));
}

TEST_CASE("one implicit upwind transport step") {
  const MacGrid g(6, 6, 1, 1);
  const VelocityField u = VelocityField::from_stream_function(g, [](double x, double y) {
    return std::pow(std::sin(kPi * x) * std::sin(kPi * y), 2) * (1 + x);
  });
  const ScalarField rho0 =
      ScalarField::sample(g, [](double x, double y) { return 1 + x * y + 0.5 * (x > 0.5 ? 1.0 : 0.0); });
  const ScalarField rho = advect_density(rho0, u, 0.1);
  CHECK(rho(0, 0) == doctest::Approx(1.0169068623597812).epsilon(1e-12));
  CHECK(rho(2, 3) == doctest::Approx(1.5667563613519229).epsilon(1e-12));
  CHECK(rho(5, 5) == doctest::Approx(2.236582807087977).epsilon(1e-12));
  CHECK(rho(3, 1) == doctest::Approx(1.3489216866584475).epsilon(1e-12));
  CHECK(rho.mean() == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("one pressure increment") {
  const MacGrid g(6, 6, 1, 1);
  VelocityField u = VelocityField::sample(
      g, [](double x, double y) { return x * y * (1 - y); }, [](double x, double y) { return std::sin(kPi * x) * y; });
  u.enforce_boundary();
  const ScalarField q = pressure_increment(u, 1.3, 0.05);
  CHECK(q(0, 0) == doctest::Approx(-3.112661421149644).epsilon(1e-10));
  CHECK(q(2, 3) == doctest::Approx(-0.4247902344317392).epsilon(1e-10));
  CHECK(q(5, 5) == doctest::Approx(4.4905078870886275).epsilon(1e-10));
  CHECK(q(4, 1) == doctest::Approx(-1.7544619208252685).epsilon(1e-10));
}

TEST_CASE("least-squares order") {
  CHECK(least_squares_order({8e-3, 4e-3, 2e-3, 1e-3}, {3.1e-3, 1.7e-3, 8.0e-4, 4.3e-4}) ==
        doctest::Approx(0.9637041792966762).epsilon(1e-12));
}
