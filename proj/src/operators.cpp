#include "bingham/operators.hpp"

#include <cmath>

namespace bingham {

namespace {

void zero_inactive(VelocityField& v) { v.enforce_boundary(); }

}  // namespace

ScalarField divergence(const VelocityField& u) {
  const MacGrid& g = u.grid();
  ScalarField d(g);
  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      d(i, j) = (u.ux(g.wrap(i + 1), j) - u.ux(i, j)) * ihx + (u.uy(i, j + 1) - u.uy(i, j)) * ihy;
  return d;
}

VelocityField gradient_to_faces(const ScalarField& s) {
  const MacGrid& g = s.grid();
  VelocityField out(g);
  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i <= g.nx(); ++i)
      if (g.ux_active(i)) out.ux(i, j) = (s(i, j) - s(g.wrap(i - 1), j)) * ihx;
  for (int j = 1; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) out.uy(i, j) = (s(i, j) - s(i, j - 1)) * ihy;
  return out;
}

void apply_neg_laplacian(const ScalarField& s, ScalarField& out) {
  const MacGrid& g = s.grid();
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  const int nx = g.nx();
  const int ny = g.ny();
  const bool periodic = g.periodic_x();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double c = s(i, j);
      double acc = 0.0;
      if (periodic || i > 0) acc += (c - s(g.wrap(i - 1), j)) * ihx2;
      if (periodic || i < nx - 1) acc += (c - s(g.wrap(i + 1), j)) * ihx2;
      if (j > 0) acc += (c - s(i, j - 1)) * ihy2;
      if (j < ny - 1) acc += (c - s(i, j + 1)) * ihy2;
      out(i, j) = acc;
    }
  }
}

ScalarField laplacian(const ScalarField& s) {
  ScalarField out(s.grid());
  apply_neg_laplacian(s, out);
  scale(out, -1.0);
  return out;
}

VelocityField face_average(const ScalarField& s) {
  const MacGrid& g = s.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  VelocityField out(g);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      if (g.periodic_x()) {
        const int c = g.wrap(i);
        out.ux(i, j) = 0.5 * (s(g.wrap(c - 1), j) + s(c, j));
      } else if (i == 0) {
        out.ux(i, j) = s(0, j);
      } else if (i == nx) {
        out.ux(i, j) = s(nx - 1, j);
      } else {
        out.ux(i, j) = 0.5 * (s(i - 1, j) + s(i, j));
      }
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (j == 0)
        out.uy(i, j) = s(i, 0);
      else if (j == ny)
        out.uy(i, j) = s(i, ny - 1);
      else
        out.uy(i, j) = 0.5 * (s(i, j - 1) + s(i, j));
    }
  }
  return out;
}

std::vector<std::array<double, 2>> cell_velocity(const VelocityField& u) {
  const MacGrid& g = u.grid();
  std::vector<std::array<double, 2>> out(g.n_cells());
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      out[g.cell(i, j)] = {0.5 * (u.ux(i, j) + u.ux(g.wrap(i + 1), j)),
                           0.5 * (u.uy(i, j) + u.uy(i, j + 1))};
  return out;
}

// ---------------------------------------------------------------------------

ShearStencil::ShearStencil(const MacGrid& grid) : grid_(grid), nodes_(grid.n_nodes()) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const double half_ihx = 0.5 / grid.hx();
  const double half_ihy = 0.5 / grid.hy();

  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < grid.node_columns(); ++i) {
      Node& node = nodes_[grid.node(i, j)];
      auto add = [&node](std::size_t face, double c) {
        for (int k = 0; k < node.size; ++k) {
          if (node.face[k] == face) {
            node.coeff[k] += c;
            return;
          }
        }
        node.face[node.size] = face;
        node.coeff[node.size] = c;
        ++node.size;
      };
      // x-face value at column i, row jj, reflected across the y-walls.
      auto add_ux = [&](int jj, double c) {
        if (jj < 0)
          add(grid.ux(i, 0), -c);
        else if (jj >= ny)
          add(grid.ux(i, ny - 1), -c);
        else
          add(grid.ux(i, jj), c);
      };
      // y-face value at column ii, row j, reflected across the x-walls.
      auto add_uy = [&](int ii, double c) {
        if (grid.periodic_x())
          add(grid.uy(grid.wrap(ii), j), c);
        else if (ii < 0)
          add(grid.uy(0, j), -c);
        else if (ii >= nx)
          add(grid.uy(nx - 1, j), -c);
        else
          add(grid.uy(ii, j), c);
      };
      add_ux(j, half_ihy);
      add_ux(j - 1, -half_ihy);
      add_uy(i, half_ihx);
      add_uy(i - 1, -half_ihx);
    }
  }
}

double ShearStencil::evaluate(std::size_t node, std::span<const double> u) const {
  const Node& n = nodes_[node];
  double s = 0.0;
  for (int k = 0; k < n.size; ++k) s += n.coeff[k] * u[n.face[k]];
  return s;
}

TensorField strain_rate(const VelocityField& u) {
  const MacGrid& g = u.grid();
  const ShearStencil shear(g);
  const auto uv = u.values();

  std::vector<double> node_shear(g.n_nodes());
  for (std::size_t n = 0; n < node_shear.size(); ++n) node_shear[n] = shear.evaluate(n, uv);

  TensorField d(g);
  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const int ip = shear.column(i + 1);
      SymTensor2& t = d(i, j);
      t.xx = (u.ux(g.wrap(i + 1), j) - u.ux(i, j)) * ihx;
      t.yy = (u.uy(i, j + 1) - u.uy(i, j)) * ihy;
      t.xy = 0.25 * (node_shear[g.node(i, j)] + node_shear[g.node(ip, j)] +
                     node_shear[g.node(i, j + 1)] + node_shear[g.node(ip, j + 1)]);
    }
  }
  return d;
}

VelocityField tensor_divergence(const TensorField& t) {
  const MacGrid& g = t.grid();
  const ShearStencil shear(g);
  VelocityField adj(g);
  auto a = adj.values();

  // Each cell's shear entry appears as 2 * t_xy * (1/4) sum of its node values.
  std::vector<double> node_acc(g.n_nodes(), 0.0);
  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const SymTensor2& s = t(i, j);
      a[g.ux(g.wrap(i + 1), j)] += s.xx * ihx;
      a[g.ux(i, j)] -= s.xx * ihx;
      a[g.uy(i, j + 1)] += s.yy * ihy;
      a[g.uy(i, j)] -= s.yy * ihy;
      const double share = 0.5 * s.xy;
      const int ip = shear.column(i + 1);
      node_acc[g.node(i, j)] += share;
      node_acc[g.node(ip, j)] += share;
      node_acc[g.node(i, j + 1)] += share;
      node_acc[g.node(ip, j + 1)] += share;
    }
  }
  const auto& nodes = shear.nodes();
  for (std::size_t n = 0; n < nodes.size(); ++n)
    for (int k = 0; k < nodes[n].size; ++k) a[nodes[n].face[k]] += nodes[n].coeff[k] * node_acc[n];

  scale(adj, -1.0);
  zero_inactive(adj);
  return adj;
}

// ---------------------------------------------------------------------------

ViscousOperator::ViscousOperator(const ScalarField& mu)
    : grid_(mu.grid()), shear_(mu.grid()), cell_coeff_(grid_.n_cells()), node_coeff_(grid_.n_nodes()) {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  for (std::size_t c = 0; c < cell_coeff_.size(); ++c) cell_coeff_[c] = 2.0 * mu.values()[c];

  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < grid_.node_columns(); ++i) {
      double inv_sum = 0.0;
      int count = 0;
      for (int dj : {-1, 0}) {
        const int cj = j + dj;
        if (cj < 0 || cj >= ny) continue;
        for (int di : {-1, 0}) {
          int ci = i + di;
          if (grid_.periodic_x())
            ci = grid_.wrap(ci);
          else if (ci < 0 || ci >= nx)
            continue;
          inv_sum += 1.0 / mu(ci, cj);
          ++count;
        }
      }
      const double mu_node = count / inv_sum;
      const double wy = (j == 0 || j == ny) ? 0.5 : 1.0;
      const double wx = (!grid_.periodic_x() && (i == 0 || i == nx)) ? 0.5 : 1.0;
      node_coeff_[grid_.node(i, j)] = 4.0 * mu_node * wx * wy;
    }
  }
}

void ViscousOperator::apply(const VelocityField& v, VelocityField& out) const {
  const MacGrid& g = grid_;
  const auto u = v.values();
  auto o = out.values();
  std::fill(o.begin(), o.end(), 0.0);

  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const std::size_t e = g.ux(g.wrap(i + 1), j);
      const std::size_t w = g.ux(i, j);
      const std::size_t n = g.uy(i, j + 1);
      const std::size_t s = g.uy(i, j);
      const double c = cell_coeff_[g.cell(i, j)];
      const double txx = c * (u[e] - u[w]) * ihx * ihx;
      const double tyy = c * (u[n] - u[s]) * ihy * ihy;
      o[e] += txx;
      o[w] -= txx;
      o[n] += tyy;
      o[s] -= tyy;
    }
  }
  const auto& nodes = shear_.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& nd = nodes[k];
    double gval = 0.0;
    for (int m = 0; m < nd.size; ++m) gval += nd.coeff[m] * u[nd.face[m]];
    const double t = node_coeff_[k] * gval;
    for (int m = 0; m < nd.size; ++m) o[nd.face[m]] += nd.coeff[m] * t;
  }
  out.enforce_boundary();
}

VelocityField ViscousOperator::diagonal() const {
  const MacGrid& g = grid_;
  VelocityField d(g);
  auto o = d.values();
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double c = cell_coeff_[g.cell(i, j)];
      o[g.ux(g.wrap(i + 1), j)] += c * ihx2;
      o[g.ux(i, j)] += c * ihx2;
      o[g.uy(i, j + 1)] += c * ihy2;
      o[g.uy(i, j)] += c * ihy2;
    }
  }
  const auto& nodes = shear_.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k)
    for (int m = 0; m < nodes[k].size; ++m)
      o[nodes[k].face[m]] += node_coeff_[k] * nodes[k].coeff[m] * nodes[k].coeff[m];
  d.enforce_boundary();
  return d;
}

double ViscousOperator::dissipation(const VelocityField& v) const {
  const MacGrid& g = grid_;
  const auto u = v.values();
  const double ihx = 1.0 / g.hx();
  const double ihy = 1.0 / g.hy();
  double sum = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double dxx = (u[g.ux(g.wrap(i + 1), j)] - u[g.ux(i, j)]) * ihx;
      const double dyy = (u[g.uy(i, j + 1)] - u[g.uy(i, j)]) * ihy;
      sum += 0.5 * cell_coeff_[g.cell(i, j)] * (dxx * dxx + dyy * dyy);
    }
  }
  for (std::size_t k = 0; k < node_coeff_.size(); ++k) {
    const double gval = shear_.evaluate(k, u);
    sum += 0.5 * node_coeff_[k] * gval * gval;
  }
  return g.cell_area() * sum;
}

// ---------------------------------------------------------------------------

SkewAdvection::SkewAdvection(const VelocityField& w) : grid_(w.grid()) {
  const MacGrid& g = grid_;
  const int nx = g.nx();
  const int ny = g.ny();
  const double hx = g.hx();
  const double hy = g.hy();
  const double inv_2area = 0.5 / g.cell_area();

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!g.ux_active(i)) continue;
      Row row;
      auto add = [&](std::size_t nb, double flux) {
        row.nb[row.size] = nb;
        row.coeff[row.size] = flux * inv_2area;
        ++row.size;
      };
      const int ip = g.wrap(i + 1);
      const int im = g.wrap(i - 1);
      add(g.ux(ip, j), hy * 0.5 * (w.ux(i, j) + w.ux(ip, j)));
      add(g.ux(im, j), -hy * 0.5 * (w.ux(im, j) + w.ux(i, j)));
      if (j + 1 < ny) add(g.ux(i, j + 1), hx * 0.5 * (w.uy(im, j + 1) + w.uy(i, j + 1)));
      if (j > 0) add(g.ux(i, j - 1), -hx * 0.5 * (w.uy(im, j) + w.uy(i, j)));
      rows_face_.push_back(g.ux(i, j));
      rows_.push_back(row);
    }
  }
  for (int j = 1; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Row row;
      auto add = [&](std::size_t nb, double flux) {
        row.nb[row.size] = nb;
        row.coeff[row.size] = flux * inv_2area;
        ++row.size;
      };
      add(g.uy(i, j + 1), hx * 0.5 * (w.uy(i, j) + w.uy(i, j + 1)));
      add(g.uy(i, j - 1), -hx * 0.5 * (w.uy(i, j - 1) + w.uy(i, j)));
      if (g.periodic_x() || i + 1 < nx) {
        const int ip = g.wrap(i + 1);
        add(g.uy(ip, j), hy * 0.5 * (w.ux(ip, j - 1) + w.ux(ip, j)));
      }
      if (g.periodic_x() || i > 0) {
        add(g.uy(g.wrap(i - 1), j), -hy * 0.5 * (w.ux(i, j - 1) + w.ux(i, j)));
      }
      rows_face_.push_back(g.uy(i, j));
      rows_.push_back(row);
    }
  }
}

void SkewAdvection::apply(const VelocityField& v, VelocityField& out, bool accumulate) const {
  const auto u = v.values();
  auto o = out.values();
  if (!accumulate) std::fill(o.begin(), o.end(), 0.0);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    double s = 0.0;
    for (int k = 0; k < row.size; ++k) s += row.coeff[k] * u[row.nb[k]];
    o[rows_face_[r]] += s;
  }
}

VelocityField mass_flux(const ScalarField& rho, const VelocityField& u) {
  VelocityField w = face_average(rho);
  auto wv = w.values();
  const auto uv = u.values();
  for (std::size_t k = 0; k < wv.size(); ++k) wv[k] *= uv[k];
  return w;
}

VelocityField skew_advection(const ScalarField& rho_conv, const VelocityField& u_conv,
                             const VelocityField& v) {
  VelocityField out(v.grid());
  SkewAdvection(mass_flux(rho_conv, u_conv)).apply(v, out);
  return out;
}

}  // namespace bingham
