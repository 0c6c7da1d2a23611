#ifndef OSWR_PARAMS_HPP
#define OSWR_PARAMS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "oswr/interface_solver.hpp"
#include "oswr/local_ventcel.hpp"
#include "oswr/mesh.hpp"
#include "oswr/problem.hpp"

namespace oswr {

/// Build both sides' transmission coefficients from the free parameters
/// (p, q):
///   two-sided Robin:    alpha_{i,j} = p - (u_j.n_j)/2,  beta = 0
///   one-sided Ventcel:  alpha_{i,j} = p,                beta_{i,j} = q
///   weighted Ventcel:   alpha_{i,j} = p - (u_j.n_j)/2,  beta_{i,j} = d_j q
/// u_j.n_j is evaluated per interface edge from the projected normal flux.
/// Throws when any alpha comes out nonpositive.
std::array<TransmissionParams, 2> build_params(ParamFlavor flavor, double p_star, double q_star,
                                               const ProblemSpec& spec,
                                               const DecomposedMesh& mesh);

struct CalibrationSample {
  double p = 0.0, q = 0.0;
  double error = 0.0;  // solution error after the fixed iteration budget
};

struct CalibrationResult {
  double best_p = 0.0, best_q = 0.0;
  double best_error = 0.0;
  std::vector<CalibrationSample> surface;  // p-major scan order
};

/// Empirical parameter scan: for every (p, q) candidate run the interface
/// iteration on the error equation (zero data, seeded random interface
/// guess) for a fixed number of iterations and record the remaining L2 error
/// of the concentration at the final time.  Deterministic for a given seed.
CalibrationResult calibrate(const ProblemSpec& spec, const DecomposedMesh& mesh,
                            const TimeGrid& grid1, const TimeGrid& grid2, ParamFlavor flavor,
                            std::span<const double> p_range, std::span<const double> q_range,
                            int fixed_iters, uint64_t seed, SolverKind solver = SolverKind::Jacobi,
                            int threads = 1);

/// L2(Omega) norm of the concentration at the end of both trajectories;
/// the calibration objective (the exact solution of the error equation is 0).
double final_concentration_norm(const SubdomainMesh& m1, const SubdomainTrajectory& t1,
                                const SubdomainMesh& m2, const SubdomainTrajectory& t2);

}  // namespace oswr

#endif
