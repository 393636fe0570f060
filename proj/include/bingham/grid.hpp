#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bingham/tensor.hpp"

namespace bingham {

/// Uniform staggered grid on [0, lx] x [0, ly].
///
/// Scalars live at cell centres, ux on x-faces ((nx+1) x ny), uy on y-faces
/// (nx x (ny+1)). The y-boundaries are always no-slip walls. The x-boundaries
/// are walls too unless `periodic_x` is set, in which case x-face nx aliases
/// x-face 0 and is kept inactive (stored as zero).
class MacGrid {
 public:
  MacGrid(int nx, int ny, double lx, double ly, bool periodic_x = false);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double cell_area() const { return hx_ * hy_; }
  bool periodic_x() const { return periodic_x_; }

  std::size_t n_cells() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t n_ux() const { return static_cast<std::size_t>(nx_ + 1) * ny_; }
  std::size_t n_uy() const { return static_cast<std::size_t>(nx_) * (ny_ + 1); }
  std::size_t n_faces() const { return n_ux() + n_uy(); }
  /// Distinct shear nodes (node column nx is merged with column 0 when periodic).
  int node_columns() const { return periodic_x_ ? nx_ : nx_ + 1; }
  std::size_t n_nodes() const { return static_cast<std::size_t>(node_columns()) * (ny_ + 1); }

  std::size_t cell(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  /// Index of x-face (i, j) in the packed velocity storage.
  std::size_t ux(int i, int j) const { return static_cast<std::size_t>(j) * (nx_ + 1) + i; }
  /// Index of y-face (i, j) in the packed velocity storage (after all x-faces).
  std::size_t uy(int i, int j) const { return n_ux() + static_cast<std::size_t>(j) * nx_ + i; }
  std::size_t node(int i, int j) const {
    return static_cast<std::size_t>(j) * node_columns() + i;
  }

  /// Column index wrapped into [0, nx) for periodic grids; identity otherwise.
  int wrap(int i) const {
    if (!periodic_x_) return i;
    return ((i % nx_) + nx_) % nx_;
  }

  bool ux_active(int i) const { return periodic_x_ ? i < nx_ : (i > 0 && i < nx_); }
  bool uy_active(int j) const { return j > 0 && j < ny_; }

  double x_center(int i) const { return (i + 0.5) * hx_; }
  double y_center(int j) const { return (j + 0.5) * hy_; }
  double x_node(int i) const { return i * hx_; }
  double y_node(int j) const { return j * hy_; }

  friend bool operator==(const MacGrid&, const MacGrid&) = default;

 private:
  int nx_;
  int ny_;
  double lx_;
  double ly_;
  double hx_;
  double hy_;
  bool periodic_x_;
};

/// Cell-centred scalar (density, pressure, increment, viscosity, yield stress).
class ScalarField {
 public:
  explicit ScalarField(const MacGrid& grid, double value = 0.0);
  ScalarField(const MacGrid& grid, std::vector<double> values);

  static ScalarField sample(const MacGrid& grid, const std::function<double(double, double)>& f);

  const MacGrid& grid() const { return grid_; }
  double& operator()(int i, int j) { return values_[grid_.cell(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.cell(i, j)]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double min() const;
  double max() const;
  double mean() const;
  double max_abs() const;

 private:
  MacGrid grid_;
  std::vector<double> values_;
};

/// Face-centred velocity, ux then uy packed contiguously.
class VelocityField {
 public:
  explicit VelocityField(const MacGrid& grid);

  /// Samples fx at every x-face and fy at every y-face (boundary faces included).
  static VelocityField sample(const MacGrid& grid, const std::function<double(double, double)>& fx,
                              const std::function<double(double, double)>& fy);
  /// Discrete curl of a node-sampled stream function: exactly divergence-free,
  /// and no-slip in the normal direction whenever psi vanishes on the walls.
  static VelocityField from_stream_function(const MacGrid& grid,
                                            const std::function<double(double, double)>& psi);

  const MacGrid& grid() const { return grid_; }
  double& ux(int i, int j) { return data_[grid_.ux(i, j)]; }
  double ux(int i, int j) const { return data_[grid_.ux(i, j)]; }
  double& uy(int i, int j) { return data_[grid_.uy(i, j)]; }
  double uy(int i, int j) const { return data_[grid_.uy(i, j)]; }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  /// Zeroes every inactive face (wall-normal faces and the periodic alias column).
  void enforce_boundary();
  /// True if all inactive faces hold exactly zero.
  bool satisfies_boundary() const;

  double max_abs() const;

 private:
  MacGrid grid_;
  std::vector<double> data_;
};

/// Cell-centred symmetric tensor field (plastic tensor, strain rate).
class TensorField {
 public:
  explicit TensorField(const MacGrid& grid);

  const MacGrid& grid() const { return grid_; }
  SymTensor2& operator()(int i, int j) { return values_[grid_.cell(i, j)]; }
  const SymTensor2& operator()(int i, int j) const { return values_[grid_.cell(i, j)]; }
  std::span<SymTensor2> values() { return values_; }
  std::span<const SymTensor2> values() const { return values_; }

  /// max over cells of the second invariant.
  double max_invariant() const;

 private:
  MacGrid grid_;
  std::vector<SymTensor2> values_;
};

/// Area-weighted L2 inner products (the discrete counterparts of (.,.)).
double inner_product(const ScalarField& a, const ScalarField& b);
double inner_product(const VelocityField& a, const VelocityField& b);
/// Tensor inner product with the full contraction A:B.
double inner_product(const TensorField& a, const TensorField& b);

double l2_norm(const ScalarField& a);
double l2_norm(const VelocityField& a);
/// L2 norm of the pointwise second invariant, (sum_cells area |t|^2)^(1/2).
double l2_norm(const TensorField& a);

/// Linear algebra on the raw storage, shared by the Krylov solvers.
template <class Field>
double dot(const Field& a, const Field& b) {
  const auto x = a.values();
  const auto y = b.values();
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

/// y += c * x
template <class Field>
void axpy(double c, const Field& x, Field& y) {
  const auto xs = x.values();
  auto ys = y.values();
  for (std::size_t k = 0; k < xs.size(); ++k) ys[k] += c * xs[k];
}

template <class Field>
void scale(Field& x, double c) {
  for (double& v : x.values()) v *= c;
}

}  // namespace bingham
