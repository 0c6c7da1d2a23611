#ifndef OSWR_MESH_HPP
#define OSWR_MESH_HPP

#include <array>
#include <vector>

#include "oswr/problem.hpp"

namespace oswr {

enum class EdgeKind { Interior, Dirichlet, Interface };

/// Uniform tensor-product rectangle mesh with edge classification.  Cells
/// are indexed row-major (x fastest); edges are numbered with all vertical
/// edges first, then all horizontal ones.  Vertical edges are oriented with
/// normal +x and horizontal edges with normal +y; per-cell outward fluxes
/// are recovered through outward_sign().
class SubdomainMesh {
 public:
  SubdomainMesh(double x0, double y0, double hx, double hy, int nx, int ny,
                bool interface_left, bool interface_right);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double h() const;  // max cell diameter

  int cell_count() const { return nx_ * ny_; }
  int edge_count() const { return (nx_ + 1) * ny_ + nx_ * (ny_ + 1); }
  int interior_edge_count() const { return n_interior_; }

  int cell_index(int ix, int iy) const { return iy * nx_ + ix; }
  double cell_center_x(int cell) const { return x0_ + (cell % nx_ + 0.5) * hx_; }
  double cell_center_y(int cell) const { return y0_ + (cell / nx_ + 0.5) * hy_; }
  double cell_area() const { return hx_ * hy_; }

  // local edge order: left, right, bottom, top
  std::array<int, 4> cell_edges(int cell) const;
  static constexpr std::array<double, 4> outward_sign() { return {-1.0, +1.0, -1.0, +1.0}; }

  EdgeKind edge_kind(int edge) const { return kind_[edge]; }
  /// cells incident to an edge; second entry -1 on boundary/interface edges
  std::array<int, 2> edge_cells(int edge) const { return cells_[edge]; }
  double edge_length(int edge) const { return edge < n_vertical_ ? hy_ : hx_; }
  bool edge_is_vertical(int edge) const { return edge < n_vertical_; }
  Vec2 edge_midpoint(int edge) const;

  /// enumeration index among interior edges (-1 for other kinds)
  int interior_index(int edge) const { return interior_index_[edge]; }
  /// interface edges ordered bottom to top (empty when the mesh has none)
  const std::vector<int>& interface_edges() const { return interface_edges_; }

 private:
  double x0_, y0_, hx_, hy_;
  int nx_, ny_;
  int n_vertical_;
  int n_interior_ = 0;
  std::vector<EdgeKind> kind_;
  std::vector<std::array<int, 2>> cells_;
  std::vector<int> interior_index_;
  std::vector<int> interface_edges_;
};

/// The vertical interface shared by the two subdomain meshes: edges ordered
/// bottom to top, points 0..n_edges with the two endpoints of the interface
/// flagged as boundary.
struct InterfaceMesh {
  double x = 0.0;   // x coordinate of the interface
  double y0 = 0.0;
  double hy = 0.0;  // uniform edge length
  int n_edges = 0;

  std::array<std::vector<int>, 2> adjacent_cell;  // per side, per edge
  std::array<std::vector<int>, 2> subdomain_edge; // edge id within each side's mesh

  int point_count() const { return n_edges + 1; }
  bool point_on_boundary(int p) const { return p == 0 || p == n_edges; }
  /// enumeration of interior points (-1 at the interface endpoints)
  int interior_point_index(int p) const { return point_on_boundary(p) ? -1 : p - 1; }
  double point_y(int p) const { return y0 + p * hy; }
  double edge_mid_y(int e) const { return y0 + (e + 0.5) * hy; }
  double edge_length() const { return hy; }
};

struct DecomposedMesh {
  SubdomainMesh sub[2];
  InterfaceMesh interface;
  double h = 0.0;  // max cell diameter over both subdomains
};

/// Split the spec's rectangle at interface_x into two conforming uniform
/// meshes with nx x ny cells in total.  interface_x must lie on a mesh line.
DecomposedMesh build_decomposed_mesh(const ProblemSpec& spec, int nx, int ny);

/// Undecomposed mesh of the full rectangle (all boundary edges Dirichlet).
SubdomainMesh build_monodomain_mesh(const ProblemSpec& spec, int nx, int ny);

}  // namespace oswr

#endif
