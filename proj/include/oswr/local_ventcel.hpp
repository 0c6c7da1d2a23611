#ifndef OSWR_LOCAL_VENTCEL_HPP
#define OSWR_LOCAL_VENTCEL_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "oswr/linalg.hpp"
#include "oswr/mesh.hpp"
#include "oswr/mhfe.hpp"
#include "oswr/problem.hpp"
#include "oswr/timegrid.hpp"

namespace oswr {

enum class ParamFlavor { RobinTwoSided, VentcelOneSided, VentcelWeighted };

std::string to_string(ParamFlavor flavor);
ParamFlavor flavor_from_string(const std::string& s);

/// One side's transmission coefficients alpha_{i,j} (per interface edge) and
/// beta_{i,j} (scalar).  Robin conditions are the beta = 0 case.
struct TransmissionParams {
  ParamFlavor flavor = ParamFlavor::RobinTwoSided;
  std::vector<double> alpha;
  double beta = 0.0;

  void validate(int n_interface_edges) const;
};

/// All unknowns of one subdomain at one time level.  Fluxes are stored one
/// value per mesh edge with the +x / +y orientation; outward per-cell values
/// follow from SubdomainMesh::outward_sign().
struct SubdomainState {
  std::vector<double> concentration;     // per cell
  std::vector<double> flux;              // per edge
  std::vector<double> lambda_interior;   // multiplier on interior edges
  std::vector<double> lambda_interface;  // multiplier (trace) on interface edges
  std::vector<double> interface_flux;    // 1D flux, 2 per interface edge (bottom, top endpoint)
  std::vector<double> xi;                // point multiplier on interior interface points
};

struct SubdomainTrajectory {
  TimeGrid grid;
  std::vector<double> initial_concentration;
  std::vector<double> initial_lambda_interface;
  std::vector<SubdomainState> states;  // one per time interval, at its right endpoint
};

/// Per-edge interface data the 1D blocks need from the two sides: the
/// neighbor's tangential diffusion D_{j,Gamma} and the subdomain's own
/// tangential velocity degrees of freedom.
struct InterfaceSideData {
  std::vector<double> d_tangent_neighbor;
  std::vector<std::array<double, 2>> u_tangent_own;
};

/// Offsets of the unknown blocks (flux, concentration, interior multiplier,
/// interface multiplier, 1D flux, point multiplier).
struct BlockLayout {
  int n_cells = 0, n_edges = 0, n_interior = 0, n_interface = 0, n_interior_points = 0;
  bool ventcel = false;

  int flux_offset() const { return 0; }
  int concentration_offset() const { return n_edges; }
  int lambda_interior_offset() const { return n_edges + n_cells; }
  int lambda_interface_offset() const { return n_edges + n_cells + n_interior; }
  int interface_flux_offset() const { return lambda_interface_offset() + n_interface; }
  int xi_offset() const { return interface_flux_offset() + (ventcel ? 2 * n_interface : 0); }
  int dim() const { return xi_offset() + (ventcel ? n_interior_points : 0); }
};

/// The time-stepping engine of one subdomain: the sparse block system of the
/// mixed hybrid discretization with a Ventcel (or Robin, beta = 0) interface
/// condition, assembled and factorized once per distinct time-step size and
/// reused across all steps and outer iterations.
class VentcelBlockSystem {
 public:
  VentcelBlockSystem(const SubdomainMesh& mesh, const InterfaceMesh* interface, int side,
                     const SubdomainCoefficients& coeffs, const VelocityDOFs& velocity,
                     const InterfaceSideData& iface, const TransmissionParams& params,
                     const TimeGrid& grid);

  const BlockLayout& layout() const { return layout_; }
  int dim() const { return layout_.dim(); }
  const TimeGrid& grid() const { return grid_; }
  const SubdomainMesh& mesh() const { return *mesh_; }
  const InterfaceMesh* interface() const { return interface_; }
  int side() const { return side_; }
  double beta() const { return params_.beta; }

  /// assembled matrix for time interval m (distinct step sizes share nothing,
  /// equal ones share one factorization)
  const SparseMatrix& matrix(int interval = 0) const;
  int factorization_count() const { return static_cast<int>(groups_.size()); }

  /// One backward Euler step over interval m: zeta holds the Ventcel data
  /// (edge averages) on that interval; source may be null for homogeneous
  /// sweeps.
  SubdomainState step(const SubdomainState& previous, int interval, std::span<const double> zeta,
                      const TimeScalarField* source) const;

 private:
  struct Group {
    double dt;
    SparseMatrix matrix;
    Factorization factor;
  };
  SparseMatrix assemble_matrix(double dt) const;

  const SubdomainMesh* mesh_;
  const InterfaceMesh* interface_;
  int side_;
  const SubdomainCoefficients* coeffs_;
  const VelocityDOFs* velocity_;
  InterfaceSideData iface_;
  TransmissionParams params_;
  TimeGrid grid_;
  BlockLayout layout_;
  std::vector<ElementMatrix2D> element_;   // per cell
  std::vector<double> omega_cell_;         // per cell
  std::vector<double> omega_interface_;    // per interface edge (adjacent cell value)
  std::vector<Group> groups_;
  std::vector<int> group_of_interval_;
};

/// Discrete initial data: cell averages of c0 and its interface-edge
/// midpoint values for the initial interface trace.
SubdomainState initial_state(const SubdomainMesh& mesh, const InterfaceMesh* interface,
                             const ScalarField& c0);

/// March the subdomain over its whole window.  zeta must live on the
/// system's grid (pass an all-zero trace for homogeneous sweeps).
SubdomainTrajectory solve_window(const VentcelBlockSystem& system, const SubdomainState& initial,
                                 const SpaceTimeTrace& zeta, const TimeScalarField* source);

}  // namespace oswr

#endif
