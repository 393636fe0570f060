#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "bingham/config.hpp"
#include "bingham/errors.hpp"
#include "bingham/integrator.hpp"
#include "bingham/output.hpp"
#include "bingham/verification.hpp"

using namespace bingham;
namespace fs = std::filesystem;

namespace {

const char* kMinimalCavity = R"([grid]
nx = 16
ny = 16
[fluid]
rho1 = 1
mu1 = 0.1
alpha1 = 0.2
[scheme]
dt = 0.01
theta = 0.25
r = 1
)";

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "bingham_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimal cavity config fills defaults") {
  const RunConfig c = parse_config(kMinimalCavity);
  CHECK(c.scenario.name == "cavity");
  CHECK(c.grid.nx == 16);
  CHECK(c.fluid.rho2 == 1.0);
  CHECK(c.fluid.alpha2 == 0.2);
  CHECK(c.scheme.fp_max_iter == 200);
  CHECK(c.scheme.fp_tolerance(c.grid.make()) == doctest::Approx(1e-8));
  CHECK(c.output.csv_every == 1);
}

TEST_CASE("validation errors name the inequality") {
  std::string text = std::string(kMinimalCavity) + "stability_mode = true\n";
  text.replace(text.find("theta = 0.25"), 12, "theta = 0.6");
  CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("theta ≤ 1/2"), ValidationError);
  std::string big_r = kMinimalCavity;
  big_r.replace(big_r.find("r = 1"), 5, "r = 10");
  CHECK_THROWS_WITH_AS(parse_config(big_r), doctest::Contains("4θ + r α₂²/μ₁ ≤ 4"), ValidationError);
}

TEST_CASE("saturating r keyword") {
  std::string text = kMinimalCavity;
  text.replace(text.find("r = 1"), 5, "r = saturate");
  const RunConfig c = parse_config(text);
  CHECK(c.scheme.r == doctest::Approx(4 * 0.75 * 0.1 / 0.04));
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_config("[grid]\nnx = 8\n[bogus]\nx = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location() == "bogus");
  }
  try {
    parse_config("[grid]\nnx = eight\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location() == "grid.nx");
  }
  try {
    parse_config("[grid]\nnx = 8\nnx_typo = 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location() == "grid.nx_typo");
  }
  try {
    parse_config("[grid\nnx = 8\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.location() == "line 1");
  }
}

TEST_CASE("scenario preconditions") {
  std::string text = std::string(kMinimalCavity) + "[scenario]\nname = poiseuille\ndrive = 1\n";
  CHECK_NOTHROW(parse_config(text));  // poiseuille defaults to a periodic channel
  std::string no_drive = std::string(kMinimalCavity) + "[scenario]\nname = poiseuille\n";
  CHECK_THROWS_AS(parse_config(no_drive), ValidationError);
  std::string unknown = std::string(kMinimalCavity) + "[scenario]\nname = vortex\n";
  CHECK_THROWS_AS(parse_config(unknown), ValidationError);
}

TEST_CASE("config echo round-trips") {
  const RunConfig a = parse_config(kMinimalCavity);
  const RunConfig b = parse_config(to_ini(a));
  CHECK(to_ini(a) == to_ini(b));
  CHECK(b.scheme.theta == a.scheme.theta);
  CHECK(b.fluid.mu1 == a.fluid.mu1);
}

TEST_CASE("timeseries CSV") {
  const fs::path p = scratch("empty.csv");
  write_timeseries({}, p.string());
  CHECK(slurp(p) == std::string(kTimeseriesHeader) + "\n");
  CHECK(std::string(kTimeseriesHeader) ==
        "n,t,fp_iters,fp_ratio,div_residual,kinetic,pressure_term,sigma_term,dissipation_cum,total,rho_min,rho_max");

  const MacGrid g(8, 8, 1, 1);
  const FluidParams f = FluidParams::affine(1, 1, 0.1, 0.1, 0.1, 0.1);
  SchemeParams sp;
  sp.dt = 0.01;
  sp.theta = 0.25;
  sp.r = 1;
  SimState s = initialize(ScalarField(g, 1.0), VelocityField(g), f, sp);
  Timeseries ts;
  ts.record(step(s, f, sp));
  const fs::path one = scratch("one.csv");
  write_timeseries(ts.rows(), one.string());
  const std::string text = slurp(one);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(ts.rows()[0].rho_min == 1.0);
  CHECK(std::isnan(ts.rows()[0].fp_ratio));
  CHECK_THROWS_AS(write_timeseries({}, "/nonexistent_dir/x.csv"), IoError);
}

TEST_CASE("snapshot header and round trip") {
  const MacGrid g(4, 4, 1, 1);
  SimState s(g);
  s.rho = ScalarField(g, 1.0);
  const fs::path rest = scratch("rest.vtk");
  write_snapshot(s, rest.string());
  const std::string text = slurp(rest);
  CHECK(text.find("DIMENSIONS 4 4 1") != std::string::npos);
  CHECK(text.find("CELL_DATA 16") != std::string::npos);
  const Snapshot r0 = read_snapshot(rest.string());
  for (const auto& v : r0.velocity) CHECK(v == std::array<double, 3>{0, 0, 0});
  for (double v : r0.scalars.at("sigma_mag")) CHECK(v == 0.0);
  CHECK(r0.field_order == std::vector<std::string>{"rho", "p", "sigma_mag", "plug", "velocity"});

  std::mt19937_64 rng(3);
  s.rho = random_scalar(g, rng, 1, 2);
  s.p = random_scalar(g, rng);
  s.sigma = random_tensor(g, rng);
  for (auto& t : s.sigma.values()) t = project_lambda(t).inner();
  s.u = random_velocity(g, rng);
  const fs::path full = scratch("full.vtk");
  write_snapshot(s, full.string());
  const Snapshot r1 = read_snapshot(full.string());
  CHECK(r1.nx == 4);
  CHECK(r1.ny == 4);
  for (std::size_t c = 0; c < g.n_cells(); ++c) {
    CHECK(r1.scalars.at("rho")[c] == s.rho.values()[c]);
    CHECK(r1.scalars.at("p")[c] == s.p.values()[c]);
    CHECK(r1.scalars.at("sigma_mag")[c] == second_invariant(s.sigma.values()[c]));
  }
  const auto cv = cell_velocity(s.u);
  for (std::size_t c = 0; c < g.n_cells(); ++c) {
    CHECK(r1.velocity[c][0] == cv[c][0]);
    CHECK(r1.velocity[c][1] == cv[c][1]);
  }
}
