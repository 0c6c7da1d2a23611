#ifndef OSWR_VTV_HPP
#define OSWR_VTV_HPP

#include <array>
#include <vector>

#include "oswr/local_ventcel.hpp"
#include "oswr/mesh.hpp"
#include "oswr/timegrid.hpp"

namespace oswr {

/// Interface-side data needed to turn a solved trajectory into the Ventcel
/// data furnished to the neighboring subdomain.
struct VtvContext {
  const SubdomainMesh* mesh = nullptr;
  const InterfaceMesh* interface = nullptr;
  int side = 0;
  std::vector<double> omega_adjacent;      // own porosity on the adjacent cells
  std::vector<double> d_tangent_own;       // D_{i,Gamma} per edge
  std::vector<double> d_tangent_neighbor;  // D_{j,Gamma} per edge
  std::vector<std::array<double, 2>> u_tangent_own;
  std::vector<std::array<double, 2>> u_tangent_neighbor;
};

/// Per-edge integral of the tangential divergence of the flux trace: the sum
/// of the two endpoint values of the trace field, obtained by row-summing
/// its defining mass system (no solve is needed since the row sums of the 1D
/// element matrix are equal).
std::vector<double> tangential_trace_sum(const SubdomainState& state, const VtvContext& ctx);

/// The space-time Ventcel data this subdomain sends to its neighbor,
/// evaluated from a solved trajectory with backward differences in time and
/// stored as edge averages on the trajectory's own grid.  `receiving` holds
/// the neighbor side's transmission coefficients.
SpaceTimeTrace extract_vtv(const SubdomainTrajectory& trajectory, const VtvContext& ctx,
                           const TransmissionParams& receiving);

}  // namespace oswr

#endif
