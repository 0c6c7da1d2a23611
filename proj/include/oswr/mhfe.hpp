#ifndef OSWR_MHFE_HPP
#define OSWR_MHFE_HPP

#include <array>
#include <vector>

#include "oswr/mesh.hpp"
#include "oswr/problem.hpp"

namespace oswr {

/// A_{KEE'} = int_K (D^-1 w_{KE'}) . w_{KE} for the lowest-order
/// Raviart-Thomas basis on a rectangle, edges ordered (left, right,
/// bottom, top) with unit outward normal-flux normalization.
struct ElementMatrix2D {
  std::array<std::array<double, 4>, 4> a{};
};

ElementMatrix2D element_matrix_2d(double hx, double hy, double d_xx, double d_yy);

/// (1/6) * |E| / d * [[2, -1], [-1, 2]]: mass matrix of the 1D RT basis on
/// an interface edge, with endpoint degrees of freedom taken as outward
/// values.
struct ElementMatrix1D {
  std::array<std::array<double, 2>, 2> a{};
};

ElementMatrix1D element_matrix_1d(double edge_len, double d_tangential);

/// RT0 projection of the Darcy velocity: per-cell outward normal fluxes
/// u_{KE} = int_E u.n_K, and on the interface the outward endpoint values of
/// the tangential component's 1D interpolant.
struct VelocityDOFs {
  std::vector<std::array<double, 4>> cell;              // per cell, local edge order
  std::vector<std::array<double, 2>> interface_tangent; // per interface edge (P1=bottom, P2=top)
};

VelocityDOFs project_velocity(const VectorField& u, const SubdomainMesh& mesh,
                              const InterfaceMesh* interface);

/// Values of the four RT0 basis functions at a point of the reference cell
/// placed at (x0, y0); used by error quadrature of the flux field.
std::array<Vec2, 4> rt0_basis(double x, double y, double x0, double y0, double hx, double hy);

}  // namespace oswr

#endif
