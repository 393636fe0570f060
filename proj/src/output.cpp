#include "bingham/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "bingham/errors.hpp"
#include "bingham/operators.hpp"

namespace bingham {

void Timeseries::record(const StepReport& r) {
  dissipation_cum_ += r.dissipation;
  TimeseriesRow row;
  row.n = r.n;
  row.t = r.t;
  row.fp_iters = r.fixed_point.iterations;
  row.fp_ratio = r.fixed_point.observed_ratio.value_or(std::numeric_limits<double>::quiet_NaN());
  row.div_residual = r.div_residual;
  row.kinetic = r.kinetic;
  row.pressure_term = r.pressure_term;
  row.sigma_term = r.sigma_term;
  row.dissipation_cum = dissipation_cum_;
  row.total = r.kinetic + r.pressure_term + r.sigma_term + dissipation_cum_;
  row.rho_min = r.rho_min;
  row.rho_max = r.rho_max;
  rows_.push_back(row);
}

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_timeseries(const std::vector<TimeseriesRow>& rows, const std::string& path) {
  std::ofstream out = open_for_write(path);
  out << kTimeseriesHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << fmt(r.t) << ',' << r.fp_iters << ',' << fmt(r.fp_ratio) << ','
        << fmt(r.div_residual) << ',' << fmt(r.kinetic) << ',' << fmt(r.pressure_term) << ','
        << fmt(r.sigma_term) << ',' << fmt(r.dissipation_cum) << ',' << fmt(r.total) << ','
        << fmt(r.rho_min) << ',' << fmt(r.rho_max) << '\n';
  }
  if (!out) throw IoError("write failed for '" + path + "'");
}

void write_snapshot(const SimState& state, const std::string& path, double tol_plug) {
  const MacGrid& g = state.grid();
  std::ofstream out = open_for_write(path);
  out << "# vtk DataFile Version 3.0\n"
      << "bingham snapshot t=" << fmt(state.t) << " n=" << state.n << "\n"
      << "ASCII\nDATASET STRUCTURED_POINTS\n"
      << "DIMENSIONS " << g.nx() << ' ' << g.ny() << " 1\n"
      << "ORIGIN " << fmt(0.5 * g.hx()) << ' ' << fmt(0.5 * g.hy()) << " 0\n"
      << "SPACING " << fmt(g.hx()) << ' ' << fmt(g.hy()) << " 1\n"
      << "CELL_DATA " << g.n_cells() << '\n';

  auto scalar_block = [&out](const char* name, const char* type, auto&& values) {
    out << "SCALARS " << name << ' ' << type << " 1\nLOOKUP_TABLE default\n";
    for (const auto& v : values) out << fmt(static_cast<double>(v)) << '\n';
  };
  scalar_block("rho", "double", state.rho.values());
  scalar_block("p", "double", state.p.values());
  std::vector<double> mag;
  mag.reserve(g.n_cells());
  for (const auto& s : state.sigma.values()) mag.push_back(second_invariant(s));
  scalar_block("sigma_mag", "double", mag);
  const PlugMask mask = plug_mask(state.sigma, state.sigma, tol_plug);
  std::vector<int> plug;
  plug.reserve(g.n_cells());
  for (bool y : mask.yielded) plug.push_back(y ? 0 : 1);
  scalar_block("plug", "int", plug);
  out << "VECTORS velocity double\n";
  for (const auto& v : cell_velocity(state.u)) out << fmt(v[0]) << ' ' << fmt(v[1]) << " 0\n";
  if (!out) throw IoError("write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  Snapshot snap;
  std::string line;
  std::size_t n_cells = 0;
  auto read_value = [&in, &path]() {
    std::string tok;
    if (!(in >> tok)) throw IoError("truncated snapshot '" + path + "'");
    return std::stod(tok);
  };
  while (in >> line) {
    if (line == "DIMENSIONS") {
      int nz = 0;
      in >> snap.nx >> snap.ny >> nz;
    } else if (line == "CELL_DATA") {
      in >> n_cells;
    } else if (line == "SCALARS") {
      std::string name, type;
      int comps = 0;
      in >> name >> type >> comps;
      std::string lt, table;
      in >> lt >> table;
      std::vector<double> v(n_cells);
      for (auto& x : v) x = read_value();
      snap.field_order.push_back(name);
      snap.scalars[name] = std::move(v);
    } else if (line == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      snap.velocity.resize(n_cells);
      for (auto& x : snap.velocity)
        for (double& c : x) c = read_value();
      snap.field_order.push_back(name);
    }
  }
  return snap;
}

}  // namespace bingham
