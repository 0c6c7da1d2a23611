#include "oswr/mhfe.hpp"

#include <cmath>
#include <stdexcept>

#include "oswr/quadrature.hpp"

namespace oswr {

namespace {
constexpr double g2a = 0.21132486540518711775;  // (1 - 1/sqrt(3)) / 2
constexpr double g2b = 0.78867513459481288225;
constexpr double g3m = 0.11270166537925831148;  // (1 - sqrt(3/5)) / 2
constexpr double g3p = 0.88729833462074168852;

constexpr double nodes1[] = {0.5};
constexpr double weights1[] = {1.0};
constexpr double nodes2[] = {g2a, g2b};
constexpr double weights2[] = {0.5, 0.5};
constexpr double nodes3[] = {g3m, 0.5, g3p};
constexpr double weights3[] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
}  // namespace

GaussRule1D gauss_rule(int points) {
  switch (points) {
    case 1: return {nodes1, weights1, 1};
    case 2: return {nodes2, weights2, 2};
    case 3: return {nodes3, weights3, 3};
  }
  throw std::invalid_argument("gauss_rule: unsupported point count");
}

ElementMatrix2D element_matrix_2d(double hx, double hy, double d_xx, double d_yy) {
  if (!(hx > 0.0) || !(hy > 0.0)) throw std::invalid_argument("element_matrix_2d: nonpositive cell size");
  if (!(d_xx > 0.0) || !(d_yy > 0.0)) throw std::invalid_argument("element_matrix_2d: nonpositive diffusion");
  // closed-form integrals of the RT0 products; exact (the 2x2 Gauss rule
  // reproduces these quadratics exactly)
  const double ax = hx / (3.0 * d_xx * hy);
  const double ay = hy / (3.0 * d_yy * hx);
  ElementMatrix2D m;
  m.a[0][0] = ax;        m.a[0][1] = -0.5 * ax;
  m.a[1][0] = -0.5 * ax; m.a[1][1] = ax;
  m.a[2][2] = ay;        m.a[2][3] = -0.5 * ay;
  m.a[3][2] = -0.5 * ay; m.a[3][3] = ay;
  return m;
}

ElementMatrix1D element_matrix_1d(double edge_len, double d_tangential) {
  if (!(edge_len > 0.0)) throw std::invalid_argument("element_matrix_1d: nonpositive edge length");
  if (!(d_tangential > 0.0)) throw std::invalid_argument("element_matrix_1d: nonpositive diffusion");
  const double s = edge_len / (6.0 * d_tangential);
  return ElementMatrix1D{{{{2.0 * s, -s}, {-s, 2.0 * s}}}};
}

std::array<Vec2, 4> rt0_basis(double x, double y, double x0, double y0, double hx, double hy) {
  const double inv = 1.0 / (hx * hy);
  const double xr = x - x0, yr = y - y0;
  return {Vec2{-(hx - xr) * inv, 0.0},  // left
          Vec2{xr * inv, 0.0},          // right
          Vec2{0.0, -(hy - yr) * inv},  // bottom
          Vec2{0.0, yr * inv}};         // top
}

VelocityDOFs project_velocity(const VectorField& u, const SubdomainMesh& mesh,
                              const InterfaceMesh* interface) {
  VelocityDOFs dofs;
  dofs.cell.resize(mesh.cell_count());
  const auto sign = SubdomainMesh::outward_sign();
  for (int k = 0; k < mesh.cell_count(); ++k) {
    const auto edges = mesh.cell_edges(k);
    for (int a = 0; a < 4; ++a) {
      const Vec2 mid = mesh.edge_midpoint(edges[a]);
      double flux;
      if (a < 2) {  // vertical edge: integrate u_x over y
        flux = integrate_interval(
            [&](double y) { return u(mid.x, y).x; }, mid.y - 0.5 * mesh.hy(), mid.y + 0.5 * mesh.hy(), 2);
      } else {      // horizontal edge: integrate u_y over x
        flux = integrate_interval(
            [&](double x) { return u(x, mid.y).y; }, mid.x - 0.5 * mesh.hx(), mid.x + 0.5 * mesh.hx(), 2);
      }
      dofs.cell[k][a] = sign[a] * flux;
    }
  }
  if (interface != nullptr) {
    dofs.interface_tangent.resize(interface->n_edges);
    for (int e = 0; e < interface->n_edges; ++e) {
      // outward endpoint values of the tangential (y) component
      dofs.interface_tangent[e][0] = -u(interface->x, interface->point_y(e)).y;
      dofs.interface_tangent[e][1] = +u(interface->x, interface->point_y(e + 1)).y;
    }
  }
  return dofs;
}

}  // namespace oswr
