#include "oswr/params.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace oswr {

std::array<TransmissionParams, 2> build_params(ParamFlavor flavor, double p_star, double q_star,
                                               const ProblemSpec& spec,
                                               const DecomposedMesh& mesh) {
  if (!(p_star > 0.0)) throw std::invalid_argument("build_params: p* must be positive");
  if (q_star < 0.0) throw std::invalid_argument("build_params: q* must be nonnegative");
  const InterfaceMesh& g = mesh.interface;

  // mean normal velocity of each side on every interface edge, with that
  // side's outward normal (n_1 = +x, n_2 = -x)
  std::array<std::vector<double>, 2> u_dot_n;
  for (int i = 0; i < 2; ++i) {
    const VelocityDOFs dofs = project_velocity(spec.sub[i].velocity, mesh.sub[i], &g);
    u_dot_n[i].resize(g.n_edges);
    const int local = i == 0 ? 1 : 0;  // interface is the right edge of side 1, left of side 2
    for (int e = 0; e < g.n_edges; ++e)
      u_dot_n[i][e] = dofs.cell[g.adjacent_cell[i][e]][local] / g.edge_length();
  }

  std::array<TransmissionParams, 2> out;
  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    TransmissionParams& par = out[i];
    par.flavor = flavor;
    par.alpha.resize(g.n_edges);
    switch (flavor) {
      case ParamFlavor::RobinTwoSided:
        for (int e = 0; e < g.n_edges; ++e) par.alpha[e] = p_star - 0.5 * u_dot_n[j][e];
        par.beta = 0.0;
        break;
      case ParamFlavor::VentcelOneSided:
        for (int e = 0; e < g.n_edges; ++e) par.alpha[e] = p_star;
        par.beta = q_star;
        break;
      case ParamFlavor::VentcelWeighted: {
        if (!spec.sub[j].constant_d)
          throw std::invalid_argument("build_params: weighted flavor needs uniform isotropic D");
        for (int e = 0; e < g.n_edges; ++e) par.alpha[e] = p_star - 0.5 * u_dot_n[j][e];
        par.beta = *spec.sub[j].constant_d * q_star;
        break;
      }
    }
    for (double a : par.alpha)
      if (!(a > 0.0))
        throw std::invalid_argument(
            "build_params: alpha <= 0 after the velocity correction; increase p*");
  }
  return out;
}

double final_concentration_norm(const SubdomainMesh& m1, const SubdomainTrajectory& t1,
                                const SubdomainMesh& m2, const SubdomainTrajectory& t2) {
  double acc = 0.0;
  const auto add = [&acc](const SubdomainMesh& m, const SubdomainTrajectory& t) {
    const auto& c = t.states.back().concentration;
    for (double v : c) acc += m.cell_area() * v * v;
  };
  add(m1, t1);
  add(m2, t2);
  return std::sqrt(acc);
}

CalibrationResult calibrate(const ProblemSpec& spec, const DecomposedMesh& mesh,
                            const TimeGrid& grid1, const TimeGrid& grid2, ParamFlavor flavor,
                            std::span<const double> p_range, std::span<const double> q_range,
                            int fixed_iters, uint64_t seed, SolverKind solver, int threads) {
  if (p_range.empty() || q_range.empty())
    throw std::invalid_argument("calibrate: empty candidate range");

  std::vector<std::pair<double, double>> candidates;
  for (double p : p_range)
    for (double q : q_range) candidates.emplace_back(p, q);

  auto run_candidate = [&](double p, double q) -> double {
    const auto params = build_params(flavor, p, q, spec, mesh);
    const InterfaceProblem problem(spec, mesh, params, grid1, grid2, 1);
    const InterfaceVector guess = problem.random_vector(seed);
    const InterfaceVector rhs = problem.right_hand_side();
    // fixed iteration budget: tolerance 0 never triggers early
    const auto [zeta, report] =
        solver == SolverKind::Jacobi
            ? problem.solve_jacobi(rhs, guess, 0.0, fixed_iters)
            : problem.solve_gmres(rhs, guess, 0.0, fixed_iters);
    (void)report;
    auto [t1, t2] = problem.reconstruct_solution(zeta);
    return final_concentration_norm(mesh.sub[0], t1, mesh.sub[1], t2);
  };

  std::vector<double> errors(candidates.size());
  if (threads > 1) {
    std::vector<std::future<void>> workers;
    std::atomic<size_t> next{0};
    for (int t = 0; t < threads; ++t)
      workers.push_back(std::async(std::launch::async, [&] {
        for (size_t k = next.fetch_add(1); k < candidates.size(); k = next.fetch_add(1))
          errors[k] = run_candidate(candidates[k].first, candidates[k].second);
      }));
    for (auto& w : workers) w.get();
  } else {
    for (size_t k = 0; k < candidates.size(); ++k)
      errors[k] = run_candidate(candidates[k].first, candidates[k].second);
  }

  CalibrationResult result;
  result.surface.reserve(candidates.size());
  size_t best = 0;
  for (size_t k = 0; k < candidates.size(); ++k) {
    result.surface.push_back({candidates[k].first, candidates[k].second, errors[k]});
    if (errors[k] < errors[best]) best = k;
  }
  result.best_p = candidates[best].first;
  result.best_q = candidates[best].second;
  result.best_error = errors[best];
  return result;
}

}  // namespace oswr
