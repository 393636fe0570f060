#pragma once

#include <array>
#include <vector>

#include "bingham/grid.hpp"

namespace bingham {

/// MAC divergence per cell: (ux_{i+1,j} - ux_{i,j})/hx + (uy_{i,j+1} - uy_{i,j})/hy.
ScalarField divergence(const VelocityField& u);

/// Face differences of cell values, zero on inactive (wall-normal) faces.
/// Negative adjoint of divergence for fields vanishing on inactive faces.
VelocityField gradient_to_faces(const ScalarField& s);

/// out = -div(grad s): the Neumann Laplacian, symmetric positive semidefinite.
void apply_neg_laplacian(const ScalarField& s, ScalarField& out);
ScalarField laplacian(const ScalarField& s);

/// Arithmetic mean of the two cells adjacent to each face (the single
/// adjacent cell on walls).
VelocityField face_average(const ScalarField& s);

/// Cell-centred velocity vector (x and y components) for output.
std::vector<std::array<double, 2>> cell_velocity(const VelocityField& u);

/// Linear map from face velocities to the nodal shear rate
/// 1/2 (d ux/dy + d uy/dx). Tangential velocity is reflected across walls.
class ShearStencil {
 public:
  struct Node {
    std::array<std::size_t, 4> face{};
    std::array<double, 4> coeff{};
    int size = 0;
  };

  explicit ShearStencil(const MacGrid& grid);

  const std::vector<Node>& nodes() const { return nodes_; }
  double evaluate(std::size_t node, std::span<const double> u) const;
  /// Column index of node i (wraps on periodic grids).
  int column(int i) const { return grid_.periodic_x() ? grid_.wrap(i) : i; }

 private:
  MacGrid grid_;
  std::vector<Node> nodes_;
};

/// Cell-centred strain rate. Diagonal entries from face differences, the shear
/// entry averaged from the four surrounding nodes.
TensorField strain_rate(const VelocityField& u);

/// Div(t) defined as the exact negative adjoint of strain_rate under the
/// contraction A:B, so that <Div t, v> = -<t, D v> for no-slip v.
VelocityField tensor_divergence(const TensorField& t);

/// The variable-viscosity operator v -> -Div(2 mu D v). Shear terms use the
/// harmonic mean of the adjacent cell viscosities at nodes, with trapezoidal
/// node weights on the boundary.
class ViscousOperator {
 public:
  explicit ViscousOperator(const ScalarField& mu);

  void apply(const VelocityField& v, VelocityField& out) const;
  VelocityField diagonal() const;
  /// ||sqrt(2 mu) D v||^2, equal to 1/2 <-Div(2 mu D v), v>.
  double dissipation(const VelocityField& v) const;

 private:
  MacGrid grid_;
  ShearStencil shear_;
  std::vector<double> cell_coeff_;  // 2 mu per cell
  std::vector<double> node_coeff_;  // 4 mu_node w_node per node
};

/// Skew-symmetric advection v -> (w . grad) v + (v/2) div w for a face mass
/// flux w with zero normal component on the walls. Built on face-centred
/// control volumes with centred flux interpolation, which makes the assembled
/// matrix exactly antisymmetric.
class SkewAdvection {
 public:
  explicit SkewAdvection(const VelocityField& mass_flux);

  /// out = B(w, v) when accumulate is false, out += B(w, v) otherwise.
  void apply(const VelocityField& v, VelocityField& out, bool accumulate = false) const;

 private:
  struct Row {
    std::array<std::size_t, 4> nb{};
    std::array<double, 4> coeff{};
    int size = 0;
  };
  MacGrid grid_;
  std::vector<std::size_t> rows_face_;
  std::vector<Row> rows_;
};

/// B(rho_conv * u_conv, v) evaluated at the faces.
VelocityField skew_advection(const ScalarField& rho_conv, const VelocityField& u_conv,
                             const VelocityField& v);

/// Face mass flux rho_face * u.
VelocityField mass_flux(const ScalarField& rho, const VelocityField& u);

}  // namespace bingham
