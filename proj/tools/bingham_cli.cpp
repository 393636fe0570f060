#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "bingham/config.hpp"
#include "bingham/diagnostics.hpp"
#include "bingham/errors.hpp"
#include "bingham/output.hpp"
#include "bingham/scenarios.hpp"
#include "bingham/verification.hpp"

namespace fs = std::filesystem;
using namespace bingham;

namespace {

constexpr double kBoundTol = 1e-12;
constexpr double kSigmaTol = 1e-12;
constexpr double kDivTol = 1e-8;
constexpr double kEnergyTol = 1e-8;

struct Options {
  std::string config;
  std::string output_dir;
  std::uint64_t seed = 20261019;
  int trials = 100;
  bool quiet = false;
  std::vector<double> dts;
  double dt_ref = 0.0;
  bool theta_follows_dt = false;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

RunConfig load(const Options& o) {
  RunConfig c = load_config(o.config);
  if (!o.output_dir.empty()) c.output.directory = o.output_dir;
  return c;
}

int cmd_run(const Options& o) {
  const RunConfig c = load(o);
  const fs::path dir(c.output.directory);
  fs::create_directories(dir);
  write_text(dir / "config.ini", to_ini(c));

  const FluidParams fluid = c.fluid.make();
  const Scenario sc = make_scenario(c);
  SimState s = initialize(sc.rho0, sc.u0, fluid, c.scheme);

  std::optional<EnergyLedger> ledger;
  try {
    ledger.emplace(s, fluid, c.scheme);
  } catch (const HypothesisViolation&) {
  }

  Timeseries series;
  std::vector<std::string> violations;
  auto flag = [&](const StepReport& r, const std::string& what) {
    violations.push_back("step " + std::to_string(r.n) + ": " + what);
  };
  const double lo = std::min(fluid.rho1, fluid.rho2), hi = std::max(fluid.rho1, fluid.rho2);
  int stalls = 0;

  run(s, fluid, c.scheme, c.scenario.t_end, sc.forcing, [&](const SimState& st, const StepReport& r) {
    series.record(r);
    if (ledger) ledger->record(r);
    if (r.rho_min < lo - kBoundTol || r.rho_max > hi + kBoundTol) flag(r, "density out of bounds");
    if (r.sigma_max > 1.0 + kSigmaTol) flag(r, "|sigma| > 1");
    if (r.div_residual > kDivTol) flag(r, "divergence residual " + std::to_string(r.div_residual));
    if (r.fixed_point.stalled) ++stalls;
    if (c.output.snapshot_every > 0 && r.n % c.output.snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%06d.vtk", r.n);
      write_snapshot(st, (dir / name).string(), c.tol_plug);
    }
    if (!o.quiet && (c.output.csv_every <= 1 || r.n % c.output.csv_every == 0))
      std::printf("n=%d t=%.6g fp=%d div=%.2e rho=[%.15g, %.15g] smax=%.15g\n", r.n, r.t,
                  r.fixed_point.iterations, r.div_residual, r.rho_min, r.rho_max, r.sigma_max);
  });

  std::vector<TimeseriesRow> rows;
  const int every = std::max(1, c.output.csv_every);
  for (const auto& row : series.rows())
    if (row.n % every == 0 || row.n == series.rows().back().n) rows.push_back(row);
  write_timeseries(rows, (dir / "timeseries.csv").string());
  write_snapshot(s, (dir / "final.vtk").string(), c.tol_plug);

  if (ledger && !ledger->non_increasing(kEnergyTol))
    violations.push_back("energy increase " + std::to_string(ledger->max_increase()));
  if (stalls > 0) std::fprintf(stderr, "warning: fixed point stalled in %d steps\n", stalls);
  for (const auto& v : violations) std::fprintf(stderr, "violation: %s\n", v.c_str());
  return violations.empty() ? 0 : 1;
}

int cmd_convergence(const Options& o) {
  const RunConfig base = load(o);
  const double dt_ref = o.dt_ref > 0.0 ? o.dt_ref : o.dts.back() / 16.0;
  auto simulate = [&](double dt) {
    RunConfig c = base;
    c.scheme.dt = dt;
    const FluidParams fluid = c.fluid.make();
    if (o.theta_follows_dt) {
      c.scheme.theta = dt;
      c.scheme.r = SchemeParams::saturating_r(dt, fluid);
    }
    c.validate();
    const Scenario sc = make_scenario(c);
    SimState s = initialize(sc.rho0, sc.u0, fluid, c.scheme);
    run(s, fluid, c.scheme, c.scenario.t_end, sc.forcing);
    if (!o.quiet) std::printf("dt=%.6g done\n", dt);
    return std::make_pair(s.u, s.rho);
  };
  const ConvergenceTable t = temporal_convergence_study(simulate, o.dts, dt_ref);

  const fs::path dir(base.output.directory);
  fs::create_directories(dir);
  std::string csv = "dt,velocity_error,density_error\n";
  char line[128];
  for (std::size_t k = 0; k < t.dts.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", t.dts[k], t.velocity_errors[k],
                  t.density_errors[k]);
    csv += line;
  }
  write_text(dir / "convergence.csv", csv);
  std::printf("order velocity=%.4f density=%.4f\n", t.velocity_order, t.density_order);
  return 0;
}

int cmd_verify(const Options& o) {
  bool ok = true;
  for (const auto& r : run_property_suite(o.seed, o.trials)) {
    ok = ok && r.passed();
    if (!o.quiet || !r.passed())
      std::printf("%s %s trials=%d failures=%d worst=%.3e tol=%.1e\n", r.passed() ? "PASS" : "FAIL",
                  r.name.c_str(), r.trials, r.failures, r.worst, r.tolerance);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-density Bingham flow solver"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--output-dir", o.output_dir, "Output directory (overrides the config)");
  app.add_option("--seed", o.seed, "Seed for the randomized checks");
  app.add_flag("--quiet", o.quiet, "Only report failures");

  auto* run_cmd = app.add_subcommand("run", "Run a configured scenario");
  run_cmd->add_option("config", o.config)->required()->check(CLI::ExistingFile);

  auto* conv = app.add_subcommand("convergence", "Temporal convergence study");
  conv->add_option("config", o.config)->required()->check(CLI::ExistingFile);
  conv->add_option("--dts", o.dts, "Time steps")->required()->expected(2, -1);
  conv->add_option("--ref", o.dt_ref, "Reference time step (default: smallest dt / 16)");
  conv->add_flag("--theta-follows-dt", o.theta_follows_dt,
                 "Set theta = dt and saturate r for every run");

  auto* verify = app.add_subcommand("verify", "Randomized operator and projection checks");
  verify->add_option("--trials", o.trials, "Trials per check")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return cmd_run(o);
    if (*conv) return cmd_convergence(o);
    return cmd_verify(o);
  } catch (const bingham::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
