#include "oswr/local_ventcel.hpp"

#include <cmath>
#include <stdexcept>

#include "oswr/quadrature.hpp"

namespace oswr {

std::string to_string(ParamFlavor flavor) {
  switch (flavor) {
    case ParamFlavor::RobinTwoSided: return "robin2";
    case ParamFlavor::VentcelOneSided: return "ventcel1";
    case ParamFlavor::VentcelWeighted: return "ventcelw";
  }
  return "?";
}

ParamFlavor flavor_from_string(const std::string& s) {
  if (s == "robin2" || s == "robin") return ParamFlavor::RobinTwoSided;
  if (s == "ventcel1" || s == "one-sided") return ParamFlavor::VentcelOneSided;
  if (s == "ventcelw" || s == "weighted") return ParamFlavor::VentcelWeighted;
  throw std::invalid_argument("unknown transmission flavor '" + s + "'");
}

void TransmissionParams::validate(int n_interface_edges) const {
  if (static_cast<int>(alpha.size()) != n_interface_edges)
    throw std::invalid_argument("TransmissionParams: alpha count does not match interface edges");
  for (double a : alpha)
    if (!(a > 0.0)) throw std::invalid_argument("TransmissionParams: alpha must be positive");
  if (beta < 0.0) throw std::invalid_argument("TransmissionParams: beta must be nonnegative");
  if (flavor == ParamFlavor::RobinTwoSided && beta != 0.0)
    throw std::invalid_argument("TransmissionParams: Robin conditions require beta = 0");
}

VentcelBlockSystem::VentcelBlockSystem(const SubdomainMesh& mesh, const InterfaceMesh* interface,
                                       int side, const SubdomainCoefficients& coeffs,
                                       const VelocityDOFs& velocity, const InterfaceSideData& iface,
                                       const TransmissionParams& params, const TimeGrid& grid)
    : mesh_(&mesh),
      interface_(interface),
      side_(side),
      coeffs_(&coeffs),
      velocity_(&velocity),
      iface_(iface),
      params_(params),
      grid_(grid) {
  const int n_iface = interface_ ? interface_->n_edges : 0;
  params_.validate(n_iface);
  if (interface_ && static_cast<int>(mesh.interface_edges().size()) != n_iface)
    throw std::invalid_argument("VentcelBlockSystem: mesh/interface edge count mismatch");
  if (interface_ && params_.beta > 0.0 &&
      (static_cast<int>(iface_.d_tangent_neighbor.size()) != n_iface ||
       static_cast<int>(iface_.u_tangent_own.size()) != n_iface))
    throw std::invalid_argument("VentcelBlockSystem: interface side data incomplete");

  layout_.n_cells = mesh.cell_count();
  layout_.n_edges = mesh.edge_count();
  layout_.n_interior = mesh.interior_edge_count();
  layout_.n_interface = n_iface;
  layout_.n_interior_points = n_iface > 0 ? n_iface - 1 : 0;
  layout_.ventcel = params_.beta > 0.0;

  element_.resize(layout_.n_cells);
  omega_cell_.resize(layout_.n_cells);
  for (int k = 0; k < layout_.n_cells; ++k) {
    const double cx = mesh.cell_center_x(k), cy = mesh.cell_center_y(k);
    element_[k] = element_matrix_2d(mesh.hx(), mesh.hy(), coeffs.d_xx(cx, cy), coeffs.d_yy(cx, cy));
    omega_cell_[k] = coeffs.porosity(cx, cy);
    if (!(omega_cell_[k] > 0.0))
      throw std::invalid_argument("VentcelBlockSystem: nonpositive porosity");
  }
  omega_interface_.resize(n_iface);
  for (int e = 0; e < n_iface; ++e)
    omega_interface_[e] = omega_cell_[interface_->adjacent_cell[side_][e]];

  // group the intervals by step size so each distinct dt is factorized once
  group_of_interval_.resize(grid_.steps());
  std::vector<double> dts;
  for (int m = 0; m < grid_.steps(); ++m) {
    const double dt = grid_.dt(m);
    int g = -1;
    for (size_t j = 0; j < dts.size(); ++j)
      if (std::abs(dts[j] - dt) <= 1e-12 * grid_.horizon()) { g = static_cast<int>(j); break; }
    if (g < 0) {
      g = static_cast<int>(dts.size());
      dts.push_back(dt);
    }
    group_of_interval_[m] = g;
  }
  for (double dt : dts) {
    SparseMatrix m = assemble_matrix(dt);
    Factorization f = Factorization::compute(m);
    groups_.push_back({dt, std::move(m), std::move(f)});
  }
}

SparseMatrix VentcelBlockSystem::assemble_matrix(double dt) const {
  const SubdomainMesh& mesh = *mesh_;
  const BlockLayout& L = layout_;
  SparseMatrix M(L.dim());
  const auto sign = SubdomainMesh::outward_sign();

  // interface edges of the mesh are ordered bottom-to-top, matching the
  // InterfaceMesh ordinal
  std::vector<int> iface_ordinal(mesh.edge_count(), -1);
  for (size_t k = 0; k < mesh.interface_edges().size(); ++k)
    iface_ordinal[mesh.interface_edges()[k]] = static_cast<int>(k);

  auto lambda_col = [&](int edge) -> int {
    switch (mesh.edge_kind(edge)) {
      case EdgeKind::Interior: return L.lambda_interior_offset() + mesh.interior_index(edge);
      case EdgeKind::Interface: return L.lambda_interface_offset() + iface_ordinal[edge];
      case EdgeKind::Dirichlet: return -1;
    }
    return -1;
  };

  // flux equations: one row per (cell, local edge)
  for (int k = 0; k < L.n_cells; ++k) {
    const auto edges = mesh.cell_edges(k);
    const auto& A = element_[k].a;
    const auto& u = velocity_->cell[k];
    for (int a = 0; a < 4; ++a) {
      const int row = 4 * k + a;
      for (int b = 0; b < 4; ++b) {
        if (A[a][b] == 0.0) continue;
        M.add(row, edges[b], A[a][b] * sign[b]);
        const int lc = lambda_col(edges[b]);
        if (lc >= 0 && u[b] != 0.0) M.add(row, lc, -A[a][b] * u[b]);
      }
      M.add(row, L.concentration_offset() + k, -1.0);
      const int le = lambda_col(edges[a]);
      if (le >= 0) M.add(row, le, 1.0);
    }
  }

  // mass balance: one row per cell
  const double area = mesh.cell_area();
  for (int k = 0; k < L.n_cells; ++k) {
    const int row = 4 * L.n_cells + k;
    M.add(row, L.concentration_offset() + k, area * omega_cell_[k] / dt);
    const auto edges = mesh.cell_edges(k);
    for (int a = 0; a < 4; ++a) M.add(row, edges[a], sign[a]);
  }

  if (interface_ != nullptr) {
    const int row0 = 4 * L.n_cells + L.n_cells;
    const double len = interface_->edge_length();
    const double beta = params_.beta;
    const double flux_sign = side_ == 0 ? +1.0 : -1.0;  // outward sign of the oriented flux DOF

    // Ventcel interface condition: one row per interface edge
    for (int e = 0; e < L.n_interface; ++e) {
      const int row = row0 + e;
      M.add(row, mesh.interface_edges()[e], -flux_sign);
      M.add(row, L.lambda_interface_offset() + e,
            (params_.alpha[e] + beta * omega_interface_[e] / dt) * len);
      if (L.ventcel) {
        M.add(row, L.interface_flux_offset() + 2 * e, beta);
        M.add(row, L.interface_flux_offset() + 2 * e + 1, beta);
      }
    }

    if (L.ventcel) {
      // 1D flux equations: two rows per interface edge
      const int row1 = row0 + L.n_interface;
      for (int e = 0; e < L.n_interface; ++e) {
        const ElementMatrix1D m1 = element_matrix_1d(len, iface_.d_tangent_neighbor[e]);
        for (int r = 0; r < 2; ++r) {
          const int row = row1 + 2 * e + r;
          for (int p = 0; p < 2; ++p) {
            M.add(row, L.interface_flux_offset() + 2 * e + p, m1.a[r][p]);
            const int pi = interface_->interior_point_index(e + p);
            if (pi >= 0 && iface_.u_tangent_own[e][p] != 0.0)
              M.add(row, L.xi_offset() + pi, -m1.a[r][p] * iface_.u_tangent_own[e][p]);
          }
          M.add(row, L.lambda_interface_offset() + e, -1.0);
          const int pr = interface_->interior_point_index(e + r);
          if (pr >= 0) M.add(row, L.xi_offset() + pr, 1.0);
        }
      }
      // continuity of the 1D flux at interior interface points
      const int row2 = row1 + 2 * L.n_interface;
      for (int p = 1; p < L.n_interface; ++p) {
        const int row = row2 + (p - 1);
        M.add(row, L.interface_flux_offset() + 2 * (p - 1) + 1, 1.0);  // top endpoint of edge p-1
        M.add(row, L.interface_flux_offset() + 2 * p, 1.0);            // bottom endpoint of edge p
      }
    }
  }

  M.finalize();
  return M;
}

const SparseMatrix& VentcelBlockSystem::matrix(int interval) const {
  return groups_[group_of_interval_[interval]].matrix;
}

SubdomainState VentcelBlockSystem::step(const SubdomainState& previous, int interval,
                                        std::span<const double> zeta,
                                        const TimeScalarField* source) const {
  const BlockLayout& L = layout_;
  const SubdomainMesh& mesh = *mesh_;
  if (static_cast<int>(zeta.size()) != L.n_interface)
    throw std::invalid_argument("step: zeta size does not match interface edges");
  if (static_cast<int>(previous.concentration.size()) != L.n_cells)
    throw std::invalid_argument("step: previous state on a different mesh");

  const Group& g = groups_[group_of_interval_[interval]];
  const double dt = g.dt;
  const double t_new = grid_.time(interval + 1);
  std::vector<double> rhs(L.dim(), 0.0);

  const double area = mesh.cell_area();
  for (int k = 0; k < L.n_cells; ++k) {
    double load = 0.0;
    if (source != nullptr) {
      const double x0 = mesh.cell_center_x(k) - 0.5 * mesh.hx();
      const double y0 = mesh.cell_center_y(k) - 0.5 * mesh.hy();
      load = integrate_cell([&](double x, double y) { return (*source)(x, y, t_new); }, x0, y0,
                            mesh.hx(), mesh.hy(), 2);
    }
    rhs[4 * L.n_cells + k] = load + area * omega_cell_[k] / dt * previous.concentration[k];
  }
  if (interface_ != nullptr) {
    const double len = interface_->edge_length();
    const int row0 = 5 * L.n_cells;
    for (int e = 0; e < L.n_interface; ++e)
      rhs[row0 + e] = len * zeta[e] +
                      params_.beta * omega_interface_[e] * len * previous.lambda_interface[e] / dt;
  }

  const std::vector<double> x = g.factor.solve(rhs);

  SubdomainState next;
  next.flux.assign(x.begin(), x.begin() + L.n_edges);
  next.concentration.assign(x.begin() + L.concentration_offset(),
                            x.begin() + L.concentration_offset() + L.n_cells);
  next.lambda_interior.assign(x.begin() + L.lambda_interior_offset(),
                              x.begin() + L.lambda_interior_offset() + L.n_interior);
  next.lambda_interface.assign(x.begin() + L.lambda_interface_offset(),
                               x.begin() + L.lambda_interface_offset() + L.n_interface);
  if (L.ventcel) {
    next.interface_flux.assign(x.begin() + L.interface_flux_offset(),
                               x.begin() + L.interface_flux_offset() + 2 * L.n_interface);
    next.xi.assign(x.begin() + L.xi_offset(), x.begin() + L.xi_offset() + L.n_interior_points);
  } else {
    next.interface_flux.assign(2 * static_cast<size_t>(L.n_interface), 0.0);
    next.xi.assign(std::max(L.n_interior_points, 0), 0.0);
  }
  return next;
}

SubdomainState initial_state(const SubdomainMesh& mesh, const InterfaceMesh* interface,
                             const ScalarField& c0) {
  SubdomainState s;
  s.concentration.resize(mesh.cell_count());
  for (int k = 0; k < mesh.cell_count(); ++k) {
    const double x0 = mesh.cell_center_x(k) - 0.5 * mesh.hx();
    const double y0 = mesh.cell_center_y(k) - 0.5 * mesh.hy();
    s.concentration[k] =
        integrate_cell(c0, x0, y0, mesh.hx(), mesh.hy(), 3) / mesh.cell_area();
  }
  s.flux.assign(mesh.edge_count(), 0.0);
  s.lambda_interior.assign(mesh.interior_edge_count(), 0.0);
  const int n_iface = interface ? interface->n_edges : 0;
  s.lambda_interface.resize(n_iface);
  for (int e = 0; e < n_iface; ++e)
    s.lambda_interface[e] = c0(interface->x, interface->edge_mid_y(e));
  s.interface_flux.assign(2 * static_cast<size_t>(n_iface), 0.0);
  s.xi.assign(n_iface > 0 ? n_iface - 1 : 0, 0.0);
  return s;
}

SubdomainTrajectory solve_window(const VentcelBlockSystem& system, const SubdomainState& initial,
                                 const SpaceTimeTrace& zeta, const TimeScalarField* source) {
  if (!zeta.grid.same_breakpoints(system.grid()))
    throw std::invalid_argument("solve_window: zeta lives on a different time grid");
  SubdomainTrajectory traj;
  traj.grid = system.grid();
  traj.initial_concentration = initial.concentration;
  traj.initial_lambda_interface = initial.lambda_interface;
  traj.states.reserve(system.grid().steps());
  const SubdomainState* prev = &initial;
  for (int m = 0; m < system.grid().steps(); ++m) {
    const int ne = zeta.edge_count;
    std::span<const double> row(zeta.values.data() + static_cast<size_t>(m) * ne, ne);
    traj.states.push_back(system.step(*prev, m, row, source));
    prev = &traj.states.back();
  }
  return traj;
}

}  // namespace oswr
