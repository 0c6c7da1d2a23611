#ifndef OSWR_INTERFACE_SOLVER_HPP
#define OSWR_INTERFACE_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oswr/local_ventcel.hpp"
#include "oswr/mesh.hpp"
#include "oswr/problem.hpp"
#include "oswr/timegrid.hpp"
#include "oswr/vtv.hpp"

namespace oswr {

/// Stacked pair of interface traces (zeta_1 on the first subdomain's grid,
/// zeta_2 on the second's); flattened subdomain-major, then time-major, then
/// edge index.
struct InterfaceVector {
  SpaceTimeTrace side[2];

  size_t size() const { return side[0].values.size() + side[1].values.size(); }
  std::vector<double> flatten() const;
  static InterfaceVector unflatten(const std::vector<double>& data, const TimeGrid& g1,
                                   const TimeGrid& g2, int edge_count);
};

enum class SolverKind { Jacobi, Gmres };
std::string to_string(SolverKind k);

struct IterationReport {
  SolverKind solver = SolverKind::Jacobi;
  bool converged = false;
  int iterations = 0;
  std::vector<double> relative_residuals;       // one entry per iteration
  std::vector<double> solution_errors;          // optional, per iteration
  std::optional<uint64_t> seed;                 // set for random initial guesses
};

/// Measures an iterate's solution quality for convergence-curve studies;
/// receives the two subdomain trajectories associated with the iterate.
using ErrorProbe =
    std::function<double(const SubdomainTrajectory&, const SubdomainTrajectory&)>;

/// The fully discrete space-time interface problem for one parameter choice:
/// owns the two factorized subdomain systems and evaluates the interface
/// operator (two window solves, Ventcel data extraction, time projection).
class InterfaceProblem {
 public:
  InterfaceProblem(const ProblemSpec& spec, const DecomposedMesh& mesh,
                   std::array<TransmissionParams, 2> params, TimeGrid grid1, TimeGrid grid2,
                   int threads = 1);

  int edge_count() const { return mesh_->interface.n_edges; }
  const TimeGrid& grid(int side) const { return side == 0 ? grid1_ : grid2_; }
  const DecomposedMesh& mesh() const { return *mesh_; }
  const ProblemSpec& spec() const { return *spec_; }
  const VentcelBlockSystem& system(int side) const { return *systems_[side]; }
  const TransmissionParams& params(int side) const { return params_[side]; }

  InterfaceVector zero_vector() const;
  InterfaceVector random_vector(uint64_t seed) const;  // entries uniform in [-1, 1]

  /// homogeneous interface operator S: zeta - projected neighbor data
  InterfaceVector apply_operator(const InterfaceVector& zeta) const;
  /// right-hand side from the physical source and initial condition
  InterfaceVector right_hand_side() const;

  /// one more subdomain sweep with the physical data and the given traces
  std::pair<SubdomainTrajectory, SubdomainTrajectory> reconstruct_solution(
      const InterfaceVector& zeta) const;

  /// weighted space-time inner product (dt * |E| weights per entry)
  double dot(const InterfaceVector& a, const InterfaceVector& b) const;
  double norm(const InterfaceVector& a) const;

  std::pair<InterfaceVector, IterationReport> solve_jacobi(
      const InterfaceVector& rhs, const InterfaceVector& guess, double tol, int max_iter,
      const ErrorProbe& probe = {}) const;
  std::pair<InterfaceVector, IterationReport> solve_gmres(
      const InterfaceVector& rhs, const InterfaceVector& guess, double tol, int max_iter,
      const ErrorProbe& probe = {}) const;

  /// trajectories produced by a homogeneous sweep with the given traces
  std::pair<SubdomainTrajectory, SubdomainTrajectory> homogeneous_sweep(
      const InterfaceVector& zeta) const;

 private:
  std::pair<SubdomainTrajectory, SubdomainTrajectory> sweep(const InterfaceVector& zeta,
                                                            bool homogeneous) const;
  InterfaceVector unflatten_flat(const std::vector<double>& data) const;
  InterfaceVector extract_and_project(const SubdomainTrajectory& t1,
                                      const SubdomainTrajectory& t2) const;

  const ProblemSpec* spec_;
  const DecomposedMesh* mesh_;
  std::array<TransmissionParams, 2> params_;
  TimeGrid grid1_, grid2_;
  int threads_;
  std::array<VelocityDOFs, 2> velocity_;
  std::array<VtvContext, 2> vtv_;
  std::array<std::unique_ptr<VentcelBlockSystem>, 2> systems_;
  std::array<SubdomainState, 2> initial_;
};

/// Deterministic uniform [-1, 1] samples (splitmix-based, platform stable).
std::vector<double> uniform_symmetric_samples(uint64_t seed, size_t count);

}  // namespace oswr

#endif
