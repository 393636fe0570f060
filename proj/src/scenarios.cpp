#include "bingham/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "bingham/errors.hpp"
#include "bingham/operators.hpp"

namespace bingham {

double swirl_stream_function(double x, double y, double lx, double ly) {
  const double sx = std::sin(std::numbers::pi * x / lx);
  const double sy = std::sin(std::numbers::pi * y / ly);
  return sx * sx * sy * sy;
}

ScalarField density_profile(const MacGrid& grid, const FluidConfig& fluid,
                            const ScenarioConfig& sc) {
  const double r1 = fluid.rho1;
  const double r2 = fluid.rho2;
  const double w = sc.interface_width;
  // Heaviside (or tanh ramp) of a signed distance d, positive inside the heavy region.
  auto heavy_fraction = [w](double d) {
    if (w <= 0.0) return d > 0.0 ? 1.0 : 0.0;
    return 0.5 * (1.0 + std::tanh(d / w));
  };
  if (sc.density_profile == "uniform") return ScalarField(grid, r1);
  if (sc.density_profile == "blob") {
    return ScalarField::sample(grid, [&](double x, double y) {
      const double d = sc.blob_radius - std::hypot(x - sc.blob_x, y - sc.blob_y);
      return r1 + (r2 - r1) * heavy_fraction(d);
    });
  }
  if (sc.density_profile == "layer") {
    // Heavy fluid above y = blob_y.
    return ScalarField::sample(
        grid, [&](double, double y) { return r1 + (r2 - r1) * heavy_fraction(y - sc.blob_y); });
  }
  throw ValidationError("unknown density_profile '" + sc.density_profile + "'");
}

Scenario make_scenario(const RunConfig& config) {
  const MacGrid grid = config.grid.make();
  const ScenarioConfig& sc = config.scenario;
  const double lx = grid.lx();
  const double ly = grid.ly();
  Scenario s{density_profile(grid, config.fluid, sc), VelocityField(grid), {}};

  if (sc.name == "rest") return s;

  if (sc.name == "cavity") {
    if (sc.u0_amplitude != 0.0) {
      const double a = sc.u0_amplitude;
      s.u0 = VelocityField::from_stream_function(
          grid, [=](double x, double y) { return a * swirl_stream_function(x, y, lx, ly); });
    }
    if (sc.forcing_amplitude != 0.0) {
      const VelocityField shape = VelocityField::from_stream_function(
          grid, [=](double x, double y) { return swirl_stream_function(x, y, lx, ly); });
      const double amp = sc.forcing_amplitude;
      const double omega = sc.forcing_omega;
      s.forcing = [shape, amp, omega](double t, const ScalarField&, VelocityField& f) {
        const double factor = omega > 0.0 ? amp * std::sin(omega * t) : amp;
        f = shape;
        scale(f, factor);
      };
    }
    return s;
  }

  if (sc.name == "poiseuille") {
    const double drive = sc.drive;
    s.forcing = [drive](double, const ScalarField&, VelocityField& f) {
      const MacGrid& g = f.grid();
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) f.ux(i, j) = drive;
      f.enforce_boundary();
    };
    return s;
  }

  if (sc.name == "dambreak") {
    const double gravity = sc.gravity;
    s.forcing = [gravity](double, const ScalarField& rho, VelocityField& f) {
      f = face_average(rho);
      auto v = f.values();
      const std::size_t n_ux = f.grid().n_ux();
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = k < n_ux ? 0.0 : -gravity * v[k];
      f.enforce_boundary();
    };
    return s;
  }
  throw ValidationError("unknown scenario '" + sc.name + "'");
}

}  // namespace bingham
