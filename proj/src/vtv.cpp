#include "oswr/vtv.hpp"

#include <stdexcept>

namespace oswr {

std::vector<double> tangential_trace_sum(const SubdomainState& state, const VtvContext& ctx) {
  const InterfaceMesh& g = *ctx.interface;
  std::vector<double> sum(g.n_edges, 0.0);
  for (int e = 0; e < g.n_edges; ++e) {
    const double ratio = ctx.d_tangent_own[e] / ctx.d_tangent_neighbor[e];
    double own_u_xi = 0.0, nb_u_xi = 0.0;
    for (int p = 0; p < 2; ++p) {
      const int pi = g.interior_point_index(e + p);
      const double xi = pi >= 0 ? state.xi[pi] : 0.0;
      own_u_xi += ctx.u_tangent_own[e][p] * xi;
      nb_u_xi += ctx.u_tangent_neighbor[e][p] * xi;
    }
    sum[e] = own_u_xi - ratio * nb_u_xi +
             ratio * (state.interface_flux[2 * e] + state.interface_flux[2 * e + 1]);
  }
  return sum;
}

SpaceTimeTrace extract_vtv(const SubdomainTrajectory& trajectory, const VtvContext& ctx,
                           const TransmissionParams& receiving) {
  const InterfaceMesh& g = *ctx.interface;
  const int ne = g.n_edges;
  receiving.validate(ne);
  const double len = g.edge_length();
  const double beta = receiving.beta;
  const double flux_sign = ctx.side == 0 ? +1.0 : -1.0;  // outward flux of this side

  SpaceTimeTrace out = SpaceTimeTrace::zeros(trajectory.grid, ne);
  const std::vector<double>* lambda_prev = &trajectory.initial_lambda_interface;
  for (int m = 0; m < trajectory.grid.steps(); ++m) {
    const SubdomainState& s = trajectory.states[m];
    const double dt = trajectory.grid.dt(m);
    std::vector<double> trace_sum;
    if (beta > 0.0) trace_sum = tangential_trace_sum(s, ctx);
    for (int e = 0; e < ne; ++e) {
      const int edge = ctx.mesh->interface_edges()[e];
      // -phi_i . n_j integrated over the edge equals the outward flux of i
      double v = flux_sign * s.flux[edge] + receiving.alpha[e] * len * s.lambda_interface[e];
      if (beta > 0.0)
        v += beta * ctx.omega_adjacent[e] * len *
                 (s.lambda_interface[e] - (*lambda_prev)[e]) / dt +
             beta * trace_sum[e];
      out.at(m, e) = v / len;  // stored as an edge average
    }
    lambda_prev = &s.lambda_interface;
  }
  return out;
}

}  // namespace oswr
