#pragma once

#include <array>
#include <string>
#include <vector>

#include "bingham/density.hpp"
#include "bingham/grid.hpp"
#include "bingham/momentum.hpp"

namespace bingham {

struct GridConfig {
  int nx = 32;
  int ny = 32;
  double lx = 1.0;
  double ly = 1.0;
  bool periodic_x = false;

  MacGrid make() const { return MacGrid(nx, ny, lx, ly, periodic_x); }
};

struct FluidConfig {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double mu1 = 1.0;
  double mu2 = 1.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::string law = "affine";
  std::vector<std::array<double, 3>> table;  // (rho, mu, alpha) rows for "tabulated"

  FluidParams make() const;
};

struct ScenarioConfig {
  std::string name = "cavity";
  double t_end = 0.1;
  /// Peak speed scale of the initial swirl (cavity).
  double u0_amplitude = 0.0;
  /// Amplitude of the swirl body force (cavity).
  double forcing_amplitude = 0.0;
  /// Angular frequency of the forcing time factor sin(omega t); zero means steady.
  double forcing_omega = 0.0;
  /// "uniform", "blob" or "layer".
  std::string density_profile = "uniform";
  double blob_x = 0.5;
  double blob_y = 0.65;
  double blob_radius = 0.2;
  /// Width of the tanh transition of blob/layer profiles; zero gives a sharp jump.
  double interface_width = 0.0;
  double gravity = 0.0;  // dambreak
  double drive = 0.0;    // poiseuille body force G
};

struct OutputConfig {
  std::string directory = "out";
  int snapshot_every = 0;
  int csv_every = 1;
};

struct RunConfig {
  GridConfig grid;
  FluidConfig fluid;
  SchemeParams scheme;
  ScenarioConfig scenario;
  OutputConfig output;
  double tol_plug = 1e-3;

  /// Scenario preconditions and the scheme inequalities.
  void validate() const;
};

/// Parses INI-style text with sections [grid] [fluid] [scheme] [scenario] [output].
/// `r = saturate` selects the largest r allowed by the fixed-point inequality.
/// Throws ParseError (with a location) or ValidationError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Canonical INI text; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const RunConfig& config);

}  // namespace bingham
