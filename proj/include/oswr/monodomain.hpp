#ifndef OSWR_MONODOMAIN_HPP
#define OSWR_MONODOMAIN_HPP

#include "oswr/local_ventcel.hpp"
#include "oswr/mesh.hpp"
#include "oswr/problem.hpp"
#include "oswr/timegrid.hpp"

namespace oswr {

using MonodomainTrajectory = SubdomainTrajectory;

/// Reference solver on the undecomposed domain: the same element machinery
/// without interface blocks, one factorization for the whole march.  The
/// coefficient fields are taken per cell from the side of the interface the
/// cell center falls on.
MonodomainTrajectory solve_monodomain(const ProblemSpec& spec, const SubdomainMesh& mesh,
                                      const TimeGrid& grid);

struct ErrorPair {
  double concentration = 0.0;
  double flux = 0.0;
};

/// Running sums for relative L2 errors assembled over one or more meshes.
struct ErrorAccumulator {
  double err_c = 0.0, norm_c = 0.0, err_f = 0.0, norm_f = 0.0;  // squared sums
  ErrorPair relative() const;
};

/// Squared L2 distance between the discrete fields at time t and a closed
/// form solution, integrated with 3x3 Gauss per cell (or the midpoint rule
/// for the concentration when midpoint_sampling is set).
void accumulate_errors_exact(ErrorAccumulator& acc, const SubdomainMesh& mesh,
                             const SubdomainState& state, const ExactSolution& exact, double t,
                             bool midpoint_sampling = false);

/// Same against a reference state living on a finer-in-time monodomain mesh
/// covering this mesh (cell-to-cell comparison of the piecewise constants,
/// exact 2x2 Gauss for the RT0 flux difference).
void accumulate_errors_reference(ErrorAccumulator& acc, const SubdomainMesh& mesh,
                                 const SubdomainState& state, const SubdomainMesh& ref_mesh,
                                 const SubdomainState& ref_state);

/// Relative errors of a subdomain pair at final time against a closed form.
ErrorPair errors_vs_exact(const SubdomainMesh& m1, const SubdomainState& s1,
                          const SubdomainMesh& m2, const SubdomainState& s2,
                          const ExactSolution& exact, double t, bool midpoint_sampling = false);

/// Relative errors of a subdomain pair against a monodomain reference state.
ErrorPair errors_vs_reference(const SubdomainMesh& m1, const SubdomainState& s1,
                              const SubdomainMesh& m2, const SubdomainState& s2,
                              const SubdomainMesh& ref_mesh, const SubdomainState& ref_state);

}  // namespace oswr

#endif
