#include "oswr/interface_solver.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace oswr {

std::string to_string(SolverKind k) { return k == SolverKind::Jacobi ? "jacobi" : "gmres"; }

std::vector<double> InterfaceVector::flatten() const {
  std::vector<double> out;
  out.reserve(size());
  out.insert(out.end(), side[0].values.begin(), side[0].values.end());
  out.insert(out.end(), side[1].values.begin(), side[1].values.end());
  return out;
}

InterfaceVector InterfaceVector::unflatten(const std::vector<double>& data, const TimeGrid& g1,
                                           const TimeGrid& g2, int edge_count) {
  InterfaceVector v{{SpaceTimeTrace::zeros(g1, edge_count), SpaceTimeTrace::zeros(g2, edge_count)}};
  if (data.size() != v.size()) throw std::invalid_argument("InterfaceVector::unflatten: size mismatch");
  const size_t n1 = v.side[0].values.size();
  std::copy(data.begin(), data.begin() + n1, v.side[0].values.begin());
  std::copy(data.begin() + n1, data.end(), v.side[1].values.begin());
  return v;
}

namespace {
uint64_t splitmix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

std::vector<double> uniform_symmetric_samples(uint64_t seed, size_t count) {
  std::vector<double> out(count);
  uint64_t state = seed;
  for (double& v : out) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;  // [0, 1)
    v = 2.0 * u - 1.0;
  }
  return out;
}

InterfaceProblem::InterfaceProblem(const ProblemSpec& spec, const DecomposedMesh& mesh,
                                   std::array<TransmissionParams, 2> params, TimeGrid grid1,
                                   TimeGrid grid2, int threads)
    : spec_(&spec),
      mesh_(&mesh),
      params_(std::move(params)),
      grid1_(std::move(grid1)),
      grid2_(std::move(grid2)),
      threads_(threads) {
  if (std::abs(grid1_.horizon() - spec.final_time) > 1e-12 * spec.final_time ||
      std::abs(grid2_.horizon() - spec.final_time) > 1e-12 * spec.final_time)
    throw std::invalid_argument("InterfaceProblem: time grids must span (0, T)");

  const InterfaceMesh& g = mesh.interface;
  for (int i = 0; i < 2; ++i)
    velocity_[i] = project_velocity(spec.sub[i].velocity, mesh.sub[i], &g);

  for (int i = 0; i < 2; ++i) {
    const int j = 1 - i;
    VtvContext& ctx = vtv_[i];
    ctx.mesh = &mesh.sub[i];
    ctx.interface = &g;
    ctx.side = i;
    ctx.omega_adjacent.resize(g.n_edges);
    ctx.d_tangent_own.resize(g.n_edges);
    ctx.d_tangent_neighbor.resize(g.n_edges);
    for (int e = 0; e < g.n_edges; ++e) {
      const int cell = g.adjacent_cell[i][e];
      ctx.omega_adjacent[e] =
          spec.sub[i].porosity(mesh.sub[i].cell_center_x(cell), mesh.sub[i].cell_center_y(cell));
      ctx.d_tangent_own[e] = spec.sub[i].d_yy(g.x, g.edge_mid_y(e));
      ctx.d_tangent_neighbor[e] = spec.sub[j].d_yy(g.x, g.edge_mid_y(e));
    }
    ctx.u_tangent_own = velocity_[i].interface_tangent;
    ctx.u_tangent_neighbor = velocity_[j].interface_tangent;
  }

  for (int i = 0; i < 2; ++i) {
    InterfaceSideData side_data{vtv_[i].d_tangent_neighbor, vtv_[i].u_tangent_own};
    systems_[i] = std::make_unique<VentcelBlockSystem>(mesh.sub[i], &g, i, spec.sub[i],
                                                       velocity_[i], side_data, params_[i],
                                                       i == 0 ? grid1_ : grid2_);
    initial_[i] = initial_state(mesh.sub[i], &g, spec.initial);
  }
}

InterfaceVector InterfaceProblem::zero_vector() const {
  return {{SpaceTimeTrace::zeros(grid1_, edge_count()), SpaceTimeTrace::zeros(grid2_, edge_count())}};
}

InterfaceVector InterfaceProblem::random_vector(uint64_t seed) const {
  InterfaceVector v = zero_vector();
  return unflatten_flat(uniform_symmetric_samples(seed, v.size()));
}

InterfaceVector InterfaceProblem::unflatten_flat(const std::vector<double>& data) const {
  return InterfaceVector::unflatten(data, grid1_, grid2_, edge_count());
}

std::pair<SubdomainTrajectory, SubdomainTrajectory> InterfaceProblem::sweep(
    const InterfaceVector& zeta, bool homogeneous) const {
  auto run_side = [&](int i) {
    SubdomainState init;
    if (homogeneous) {
      init = initial_[i];
      std::fill(init.concentration.begin(), init.concentration.end(), 0.0);
      std::fill(init.lambda_interface.begin(), init.lambda_interface.end(), 0.0);
    } else {
      init = initial_[i];
    }
    const TimeScalarField* f = homogeneous ? nullptr : &spec_->source;
    return solve_window(*systems_[i], init, zeta.side[i], f);
  };
  if (threads_ > 1) {
    auto fut = std::async(std::launch::async, run_side, 1);
    SubdomainTrajectory t1 = run_side(0);
    return {std::move(t1), fut.get()};
  }
  return {run_side(0), run_side(1)};
}

std::pair<SubdomainTrajectory, SubdomainTrajectory> InterfaceProblem::homogeneous_sweep(
    const InterfaceVector& zeta) const {
  return sweep(zeta, true);
}

std::pair<SubdomainTrajectory, SubdomainTrajectory> InterfaceProblem::reconstruct_solution(
    const InterfaceVector& zeta) const {
  return sweep(zeta, false);
}

InterfaceVector InterfaceProblem::extract_and_project(const SubdomainTrajectory& t1,
                                                      const SubdomainTrajectory& t2) const {
  // data furnished to side i comes from the neighbor's trajectory and uses
  // side i's own transmission coefficients
  InterfaceVector out;
  out.side[0] = project(extract_vtv(t2, vtv_[1], params_[0]), grid1_);
  out.side[1] = project(extract_vtv(t1, vtv_[0], params_[1]), grid2_);
  return out;
}

InterfaceVector InterfaceProblem::apply_operator(const InterfaceVector& zeta) const {
  auto [t1, t2] = homogeneous_sweep(zeta);
  InterfaceVector data = extract_and_project(t1, t2);
  InterfaceVector out = zeta;
  for (int i = 0; i < 2; ++i)
    for (size_t k = 0; k < out.side[i].values.size(); ++k)
      out.side[i].values[k] -= data.side[i].values[k];
  return out;
}

InterfaceVector InterfaceProblem::right_hand_side() const {
  auto [t1, t2] = sweep(zero_vector(), false);
  return extract_and_project(t1, t2);
}

double InterfaceProblem::dot(const InterfaceVector& a, const InterfaceVector& b) const {
  const double len = mesh_->interface.edge_length();
  double acc = 0.0;
  for (int i = 0; i < 2; ++i) {
    const TimeGrid& g = i == 0 ? grid1_ : grid2_;
    const int ne = edge_count();
    for (int m = 0; m < g.steps(); ++m) {
      double row = 0.0;
      for (int e = 0; e < ne; ++e) row += a.side[i].at(m, e) * b.side[i].at(m, e);
      acc += g.dt(m) * len * row;
    }
  }
  return acc;
}

double InterfaceProblem::norm(const InterfaceVector& a) const { return std::sqrt(dot(a, a)); }

std::pair<InterfaceVector, IterationReport> InterfaceProblem::solve_jacobi(
    const InterfaceVector& rhs, const InterfaceVector& guess, double tol, int max_iter,
    const ErrorProbe& probe) const {
  IterationReport report;
  report.solver = SolverKind::Jacobi;

  InterfaceVector zeta = guess;
  const double rhs_norm = norm(rhs);
  double denom = rhs_norm;

  for (int k = 1; k <= max_iter; ++k) {
    if (probe) {
      auto [r1, r2] = reconstruct_solution(zeta);
      report.solution_errors.push_back(probe(r1, r2));
    }
    auto [t1, t2] = homogeneous_sweep(zeta);
    const InterfaceVector data = extract_and_project(t1, t2);
    // residual of the current iterate: rhs - S zeta = rhs + data - zeta
    InterfaceVector r = rhs;
    for (int i = 0; i < 2; ++i)
      for (size_t idx = 0; idx < r.side[i].values.size(); ++idx)
        r.side[i].values[idx] += data.side[i].values[idx] - zeta.side[i].values[idx];
    const double res = norm(r);
    if (k == 1 && denom == 0.0) denom = res > 0.0 ? res : 1.0;
    report.relative_residuals.push_back(res / denom);
    report.iterations = k;

    // Jacobi update doubles as the data exchange of the waveform iteration
    for (int i = 0; i < 2; ++i)
      for (size_t idx = 0; idx < zeta.side[i].values.size(); ++idx)
        zeta.side[i].values[idx] += r.side[i].values[idx];

    if (report.relative_residuals.back() <= tol) {
      report.converged = true;
      break;
    }
  }
  if (probe) {
    auto [r1, r2] = reconstruct_solution(zeta);
    report.solution_errors.push_back(probe(r1, r2));
  }
  return {std::move(zeta), std::move(report)};
}

std::pair<InterfaceVector, IterationReport> InterfaceProblem::solve_gmres(
    const InterfaceVector& rhs, const InterfaceVector& guess, double tol, int max_iter,
    const ErrorProbe& probe) const {
  IterationReport report;
  report.solver = SolverKind::Gmres;

  // precomputed dt * |E| weights in flat ordering
  std::vector<double> weights;
  weights.reserve(zero_vector().size());
  const double len = mesh_->interface.edge_length();
  for (int i = 0; i < 2; ++i) {
    const TimeGrid& g = i == 0 ? grid1_ : grid2_;
    for (int m = 0; m < g.steps(); ++m)
      for (int e = 0; e < edge_count(); ++e) weights.push_back(g.dt(m) * len);
  }
  InnerProduct inner = [&weights](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t k = 0; k < a.size(); ++k) acc += weights[k] * a[k] * b[k];
    return acc;
  };
  LinearOperator apply = [this](const std::vector<double>& x) {
    return apply_operator(unflatten_flat(x)).flatten();
  };
  std::function<void(int, const std::vector<double>&)> on_iterate;
  if (probe) {
    on_iterate = [this, &probe, &report](int, const std::vector<double>& x) {
      auto [r1, r2] = reconstruct_solution(unflatten_flat(x));
      report.solution_errors.push_back(probe(r1, r2));
    };
    auto [r1, r2] = reconstruct_solution(guess);
    report.solution_errors.push_back(probe(r1, r2));
  }

  const std::vector<double> x0 = guess.flatten();
  GmresResult res = gmres(apply, rhs.flatten(), inner, tol, max_iter, &x0, on_iterate);
  report.converged = res.converged;
  report.iterations = res.iterations;
  report.relative_residuals = std::move(res.residual_history);
  return {unflatten_flat(res.x), std::move(report)};
}

}  // namespace oswr
