#include "bingham/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bingham/errors.hpp"

namespace bingham {

MacGrid::MacGrid(int nx, int ny, double lx, double ly, bool periodic_x)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), hx_(lx / nx), hy_(ly / ny), periodic_x_(periodic_x) {
  if (nx < 4 || ny < 4) throw ValidationError("MacGrid needs at least 4 cells per direction");
  if (!(lx > 0.0) || !(ly > 0.0)) throw ValidationError("MacGrid lengths must be positive");
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const MacGrid& grid, double value)
    : grid_(grid), values_(grid.n_cells(), value) {}

ScalarField::ScalarField(const MacGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n_cells()) throw ValidationError("ScalarField size mismatch");
}

ScalarField ScalarField::sample(const MacGrid& grid,
                                const std::function<double(double, double)>& f) {
  ScalarField s(grid);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) s(i, j) = f(grid.x_center(i), grid.y_center(j));
  return s;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}
double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------

VelocityField::VelocityField(const MacGrid& grid) : grid_(grid), data_(grid.n_faces(), 0.0) {}

VelocityField VelocityField::sample(const MacGrid& grid,
                                    const std::function<double(double, double)>& fx,
                                    const std::function<double(double, double)>& fy) {
  VelocityField u(grid);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i <= grid.nx(); ++i) u.ux(i, j) = fx(grid.x_node(i), grid.y_center(j));
  for (int j = 0; j <= grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) u.uy(i, j) = fy(grid.x_center(i), grid.y_node(j));
  if (grid.periodic_x())
    for (int j = 0; j < grid.ny(); ++j) u.ux(grid.nx(), j) = 0.0;
  return u;
}

VelocityField VelocityField::from_stream_function(
    const MacGrid& grid, const std::function<double(double, double)>& psi) {
  VelocityField u(grid);
  const double hx = grid.hx();
  const double hy = grid.hy();
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i <= grid.nx(); ++i)
      u.ux(i, j) = (psi(grid.x_node(i), grid.y_node(j + 1)) - psi(grid.x_node(i), grid.y_node(j))) / hy;
  for (int j = 0; j <= grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      u.uy(i, j) = -(psi(grid.x_node(i + 1), grid.y_node(j)) - psi(grid.x_node(i), grid.y_node(j))) / hx;
  u.enforce_boundary();
  return u;
}

void VelocityField::enforce_boundary() {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int j = 0; j < ny; ++j)
    for (int i : {0, nx})
      if (!grid_.ux_active(i)) ux(i, j) = 0.0;
  for (int i = 0; i < nx; ++i) {
    uy(i, 0) = 0.0;
    uy(i, ny) = 0.0;
  }
}

bool VelocityField::satisfies_boundary() const {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (int j = 0; j < ny; ++j)
    for (int i : {0, nx})
      if (!grid_.ux_active(i) && ux(i, j) != 0.0) return false;
  for (int i = 0; i < nx; ++i)
    if (uy(i, 0) != 0.0 || uy(i, ny) != 0.0) return false;
  return true;
}

double VelocityField::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------

TensorField::TensorField(const MacGrid& grid) : grid_(grid), values_(grid.n_cells()) {}

double TensorField::max_invariant() const {
  double m = 0.0;
  for (const auto& t : values_) m = std::max(m, second_invariant(t));
  return m;
}

// ---------------------------------------------------------------------------

double inner_product(const ScalarField& a, const ScalarField& b) {
  return a.grid().cell_area() * dot(a, b);
}

double inner_product(const VelocityField& a, const VelocityField& b) {
  return a.grid().cell_area() * dot(a, b);
}

double inner_product(const TensorField& a, const TensorField& b) {
  const auto x = a.values();
  const auto y = b.values();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += double_dot(x[k], y[k]);
  return a.grid().cell_area() * s;
}

double l2_norm(const ScalarField& a) { return std::sqrt(inner_product(a, a)); }
double l2_norm(const VelocityField& a) { return std::sqrt(inner_product(a, a)); }

double l2_norm(const TensorField& a) {
  double s = 0.0;
  for (const auto& t : a.values()) s += second_invariant_sq(t);
  return std::sqrt(a.grid().cell_area() * s);
}

}  // namespace bingham
