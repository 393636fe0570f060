#pragma once

#include <map>
#include <string>
#include <vector>

#include "bingham/diagnostics.hpp"
#include "bingham/integrator.hpp"
#include "bingham/state.hpp"

namespace bingham {

struct TimeseriesRow {
  int n = 0;
  double t = 0.0;
  int fp_iters = 0;
  double fp_ratio = 0.0;  // NaN when fewer than 3 iterations
  double div_residual = 0.0;
  double kinetic = 0.0;
  double pressure_term = 0.0;
  double sigma_term = 0.0;
  double dissipation_cum = 0.0;
  double total = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
};

/// Accumulates the step reports of a run into CSV rows.
class Timeseries {
 public:
  void record(const StepReport& r);
  const std::vector<TimeseriesRow>& rows() const { return rows_; }

 private:
  std::vector<TimeseriesRow> rows_;
  double dissipation_cum_ = 0.0;
};

inline constexpr const char* kTimeseriesHeader =
    "n,t,fp_iters,fp_ratio,div_residual,kinetic,pressure_term,sigma_term,dissipation_cum,total,"
    "rho_min,rho_max";

void write_timeseries(const std::vector<TimeseriesRow>& rows, const std::string& path);

/// Legacy ASCII VTK structured points with cell data rho, p, sigma_mag, plug and
/// velocity (interpolated to cell centres), written with 17 significant digits.
void write_snapshot(const SimState& state, const std::string& path, double tol_plug = 1e-3);

struct Snapshot {
  int nx = 0;
  int ny = 0;
  std::vector<std::string> field_order;
  std::map<std::string, std::vector<double>> scalars;
  std::vector<std::array<double, 3>> velocity;
};

Snapshot read_snapshot(const std::string& path);

}  // namespace bingham
