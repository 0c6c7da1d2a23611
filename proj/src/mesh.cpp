#include "oswr/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace oswr {

SubdomainMesh::SubdomainMesh(double x0, double y0, double hx, double hy, int nx, int ny,
                             bool interface_left, bool interface_right)
    : x0_(x0), y0_(y0), hx_(hx), hy_(hy), nx_(nx), ny_(ny), n_vertical_((nx + 1) * ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("SubdomainMesh: need at least one cell per direction");
  if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("SubdomainMesh: nonpositive cell size");
  if (interface_left && interface_right)
    throw std::invalid_argument("SubdomainMesh: interface on both sides is not supported");

  const int n_edges = edge_count();
  kind_.assign(n_edges, EdgeKind::Interior);
  cells_.assign(n_edges, {-1, -1});
  interior_index_.assign(n_edges, -1);

  auto attach = [this](int e, int cell) {
    if (cells_[e][0] < 0)
      cells_[e][0] = cell;
    else
      cells_[e][1] = cell;
  };
  // vertical edge (ix, iy): id = iy*(nx+1) + ix, between cells (ix-1,iy) and (ix,iy)
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix <= nx_; ++ix) {
      const int e = iy * (nx_ + 1) + ix;
      if (ix > 0) attach(e, cell_index(ix - 1, iy));
      if (ix < nx_) attach(e, cell_index(ix, iy));
      if (ix == 0)
        kind_[e] = interface_left ? EdgeKind::Interface : EdgeKind::Dirichlet;
      else if (ix == nx_)
        kind_[e] = interface_right ? EdgeKind::Interface : EdgeKind::Dirichlet;
    }
  }
  // horizontal edge (ix, iy): id = n_vertical + iy*nx + ix, between (ix,iy-1) and (ix,iy)
  for (int iy = 0; iy <= ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const int e = n_vertical_ + iy * nx_ + ix;
      if (iy > 0) attach(e, cell_index(ix, iy - 1));
      if (iy < ny_) attach(e, cell_index(ix, iy));
      if (iy == 0 || iy == ny_) kind_[e] = EdgeKind::Dirichlet;
    }
  }

  for (int e = 0; e < n_edges; ++e)
    if (kind_[e] == EdgeKind::Interior) interior_index_[e] = n_interior_++;

  if (interface_left || interface_right) {
    const int ix = interface_left ? 0 : nx_;
    interface_edges_.reserve(ny_);
    for (int iy = 0; iy < ny_; ++iy) interface_edges_.push_back(iy * (nx_ + 1) + ix);
  }
}

double SubdomainMesh::h() const { return std::hypot(hx_, hy_); }

std::array<int, 4> SubdomainMesh::cell_edges(int cell) const {
  const int ix = cell % nx_, iy = cell / nx_;
  return {iy * (nx_ + 1) + ix,          // left
          iy * (nx_ + 1) + ix + 1,      // right
          n_vertical_ + iy * nx_ + ix,  // bottom
          n_vertical_ + (iy + 1) * nx_ + ix};
}

Vec2 SubdomainMesh::edge_midpoint(int edge) const {
  if (edge < n_vertical_) {
    const int iy = edge / (nx_ + 1), ix = edge % (nx_ + 1);
    return {x0_ + ix * hx_, y0_ + (iy + 0.5) * hy_};
  }
  const int k = edge - n_vertical_;
  const int iy = k / nx_, ix = k % nx_;
  return {x0_ + (ix + 0.5) * hx_, y0_ + iy * hy_};
}

DecomposedMesh build_decomposed_mesh(const ProblemSpec& spec, int nx, int ny) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("build_decomposed_mesh: nx, ny must be >= 2");
  spec.validate();

  const double hx = spec.width() / nx;
  const double hy = spec.height() / ny;
  const double split = (spec.interface_x - spec.x_min) / hx;
  const int nx1 = static_cast<int>(std::lround(split));
  if (std::abs(split - nx1) > 1e-9 * nx || nx1 < 1 || nx1 >= nx)
    throw std::invalid_argument("build_decomposed_mesh: interface_x must lie on an interior mesh line");
  const int nx2 = nx - nx1;

  DecomposedMesh m{
      {SubdomainMesh(spec.x_min, spec.y_min, hx, hy, nx1, ny, false, true),
       SubdomainMesh(spec.interface_x, spec.y_min, hx, hy, nx2, ny, true, false)},
      {},
      std::hypot(hx, hy)};

  InterfaceMesh& g = m.interface;
  g.x = spec.interface_x;
  g.y0 = spec.y_min;
  g.hy = hy;
  g.n_edges = ny;
  for (int side = 0; side < 2; ++side) {
    g.adjacent_cell[side].resize(ny);
    g.subdomain_edge[side].resize(ny);
  }
  for (int iy = 0; iy < ny; ++iy) {
    g.adjacent_cell[0][iy] = m.sub[0].cell_index(nx1 - 1, iy);
    g.adjacent_cell[1][iy] = m.sub[1].cell_index(0, iy);
    g.subdomain_edge[0][iy] = m.sub[0].interface_edges()[iy];
    g.subdomain_edge[1][iy] = m.sub[1].interface_edges()[iy];
  }
  return m;
}

SubdomainMesh build_monodomain_mesh(const ProblemSpec& spec, int nx, int ny) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("build_monodomain_mesh: bad resolution");
  return SubdomainMesh(spec.x_min, spec.y_min, spec.width() / nx, spec.height() / ny, nx, ny,
                       false, false);
}

}  // namespace oswr
