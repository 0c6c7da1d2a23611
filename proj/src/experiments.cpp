#include "oswr/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oswr/mesh.hpp"
#include "oswr/monodomain.hpp"
#include "oswr/timegrid.hpp"

namespace oswr {

const FlavorParams& ParamChoices::of(ParamFlavor flavor) const {
  switch (flavor) {
    case ParamFlavor::RobinTwoSided: return robin2;
    case ParamFlavor::VentcelOneSided: return ventcel1;
    case ParamFlavor::VentcelWeighted: return ventcelw;
  }
  throw std::logic_error("ParamChoices::of");
}

FlavorParams& ParamChoices::of(ParamFlavor flavor) {
  return const_cast<FlavorParams&>(static_cast<const ParamChoices&>(*this).of(flavor));
}

// Pilot-run calibrated defaults (see the calibrate subcommand); the values
// minimize the Jacobi iteration count at the study tolerances.
ParamChoices default_params_testcase1() {
  ParamChoices p;
  p.robin2 = {3.0, 0.0};
  p.ventcel1 = {2.0, 0.10};
  p.ventcelw = {2.0, 0.10};
  return p;
}

ParamChoices default_params_testcase2(Regime regime) {
  ParamChoices p;
  switch (regime) {
    case Regime::DiffusionDominant:
      p.robin2 = {1.5, 0.0};
      p.ventcel1 = {1.0, 0.2};
      p.ventcelw = {1.5, 0.2};
      break;
    case Regime::MixedRegime:
      p.robin2 = {1.0, 0.0};
      p.ventcel1 = {0.8, 0.2};
      p.ventcelw = {1.2, 0.3};
      break;
    case Regime::AdvectionDominant:
      p.robin2 = {0.8, 0.0};
      p.ventcel1 = {0.6, 0.5};
      p.ventcelw = {0.9, 1.0};
      break;
  }
  return p;
}

std::string iteration_key(SolverKind solver, ParamFlavor flavor) {
  return to_string(solver) + "/" + to_string(flavor);
}

namespace {

std::pair<InterfaceVector, IterationReport> run_solver(const InterfaceProblem& problem,
                                                       SolverKind solver,
                                                       const InterfaceVector& rhs,
                                                       const InterfaceVector& guess, double tol,
                                                       int max_iter,
                                                       const ErrorProbe& probe = {}) {
  return solver == SolverKind::Jacobi ? problem.solve_jacobi(rhs, guess, tol, max_iter, probe)
                                      : problem.solve_gmres(rhs, guess, tol, max_iter, probe);
}

void fill_rates(AccuracyTable& table) {
  for (size_t r = 1; r < table.rows.size(); ++r) {
    AccuracyRow& cur = table.rows[r];
    const AccuracyRow& prev = table.rows[r - 1];
    if (cur.err_c > 0.0 && prev.err_c > 0.0) cur.rate_c = std::log2(prev.err_c / cur.err_c);
    if (cur.err_f > 0.0 && prev.err_f > 0.0) cur.rate_f = std::log2(prev.err_f / cur.err_f);
  }
}

std::ofstream open_out(const std::string& path) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

AccuracyTable run_table1(const Table1Options& opt, const StudyOptions& study) {
  AnalyticCase tc = testcase1();  // T = 0.1
  const double T = tc.spec.final_time;
  const TimeGrid g1 = TimeGrid::uniform(T, opt.m1);
  const TimeGrid g2 = TimeGrid::uniform(T, opt.m2);

  AccuracyTable table;
  for (int nx : opt.mesh_sizes) {
    const DecomposedMesh mesh = build_decomposed_mesh(tc.spec, nx, nx);
    AccuracyRow row;
    row.key = tc.spec.width() / nx;

    for (ParamFlavor flavor : opt.flavors) {
      const FlavorParams fp = opt.params.of(flavor);
      const auto params = build_params(flavor, fp.p, fp.q, tc.spec, mesh);
      const InterfaceProblem problem(tc.spec, mesh, params, g1, g2, study.threads);
      const InterfaceVector rhs = problem.right_hand_side();
      const InterfaceVector guess = problem.zero_vector();
      for (SolverKind solver : opt.solvers) {
        auto [zeta, report] = run_solver(problem, solver, rhs, guess, opt.tol, opt.max_iter);
        row.iterations[iteration_key(solver, flavor)] = report.iterations;
        if (flavor == ParamFlavor::VentcelWeighted && solver == opt.solvers.front()) {
          auto [t1, t2] = problem.reconstruct_solution(zeta);
          const ErrorPair err = errors_vs_exact(mesh.sub[0], t1.states.back(), mesh.sub[1],
                                                t2.states.back(), tc.exact, T);
          row.err_c = err.concentration;
          row.err_f = err.flux;
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  fill_rates(table);
  return table;
}

AccuracyTable run_table2(const Table2Options& opt, const StudyOptions& study) {
  AnalyticCase tc = testcase1();
  tc.spec.final_time = 1.0;
  const double T = tc.spec.final_time;
  const DecomposedMesh mesh = build_decomposed_mesh(tc.spec, opt.nx, opt.nx);

  AccuracyTable table;
  for (int m2 : opt.m2_list) {
    if ((4 * m2) % 3 != 0)
      throw std::invalid_argument("run_table2: m2 must keep m1 = (4/3) m2 integral");
    const int m1 = 4 * m2 / 3;
    const TimeGrid g1 = TimeGrid::uniform(T, m1);
    const TimeGrid g2 = TimeGrid::uniform(T, m2);
    AccuracyRow row;
    row.key = T / m2;

    for (ParamFlavor flavor : opt.flavors) {
      const FlavorParams fp = opt.params.of(flavor);
      const auto params = build_params(flavor, fp.p, fp.q, tc.spec, mesh);
      const InterfaceProblem problem(tc.spec, mesh, params, g1, g2, study.threads);
      const InterfaceVector rhs = problem.right_hand_side();
      const InterfaceVector guess = problem.zero_vector();
      for (SolverKind solver : opt.solvers) {
        auto [zeta, report] = run_solver(problem, solver, rhs, guess, opt.tol, opt.max_iter);
        row.iterations[iteration_key(solver, flavor)] = report.iterations;
        if (flavor == ParamFlavor::VentcelWeighted && solver == opt.solvers.front()) {
          auto [t1, t2] = problem.reconstruct_solution(zeta);
          const ErrorPair err = errors_vs_exact(mesh.sub[0], t1.states.back(), mesh.sub[1],
                                                t2.states.back(), tc.exact, T);
          row.err_c = err.concentration;
          row.err_f = err.flux;
        }
      }
    }
    table.rows.push_back(std::move(row));
  }
  fill_rates(table);
  return table;
}

std::vector<CurveSeries> run_convergence_curves(const CurvesOptions& opt,
                                                const StudyOptions& study) {
  std::vector<CurveSeries> out;
  for (Regime regime : opt.regimes) {
    const ProblemSpec spec = testcase2(regime, /*error_equation=*/true);
    const DecomposedMesh mesh = build_decomposed_mesh(spec, opt.nx, opt.nx);
    const TimeGrid g1 = TimeGrid::uniform(spec.final_time, opt.m1);
    const TimeGrid g2 = TimeGrid::uniform(spec.final_time, opt.m2);
    const ParamChoices defaults = default_params_testcase2(regime);

    ErrorProbe probe = [&mesh](const SubdomainTrajectory& t1, const SubdomainTrajectory& t2) {
      return final_concentration_norm(mesh.sub[0], t1, mesh.sub[1], t2);
    };

    for (ParamFlavor flavor : opt.flavors) {
      const FlavorParams fp = defaults.of(flavor);
      const auto params = build_params(flavor, fp.p, fp.q, spec, mesh);
      const InterfaceProblem problem(spec, mesh, params, g1, g2, study.threads);
      const InterfaceVector rhs = problem.right_hand_side();
      const InterfaceVector guess = problem.random_vector(opt.seed);
      for (SolverKind solver : opt.solvers) {
        auto [zeta, report] =
            run_solver(problem, solver, rhs, guess, 0.0, opt.iterations, probe);
        report.seed = opt.seed;
        out.push_back({regime, flavor, solver, std::move(report)});
      }
    }
  }
  return out;
}

TimegridResult run_timegrid_study(const TimegridOptions& opt, const StudyOptions& study) {
  ProblemSpec spec = testcase2(Regime::AdvectionDominant, /*error_equation=*/false);
  spec.final_time = opt.horizon;
  const double T = spec.final_time;
  const DecomposedMesh mesh = build_decomposed_mesh(spec, opt.nx, opt.nx);
  const SubdomainMesh mono = build_monodomain_mesh(spec, opt.nx, opt.nx);

  const MonodomainTrajectory reference =
      solve_monodomain(spec, mono, TimeGrid::uniform(T, opt.base_fine * opt.reference_refine));
  const SubdomainState& ref_final = reference.states.back();

  const auto params =
      build_params(ParamFlavor::VentcelWeighted, opt.weighted.p, opt.weighted.q, spec, mesh);

  const std::array<std::pair<int, int>, 4> pairings{{{opt.base_coarse, opt.base_coarse},
                                                     {opt.base_coarse, opt.base_fine},
                                                     {opt.base_fine, opt.base_coarse},
                                                     {opt.base_fine, opt.base_fine}}};

  TimegridResult result;
  for (int pairing = 0; pairing < 4; ++pairing) {
    for (int level = 0; level < opt.levels; ++level) {
      const int m1 = pairings[pairing].first << level;
      const int m2 = pairings[pairing].second << level;
      const TimeGrid g1 = TimeGrid::uniform(T, m1);
      const TimeGrid g2 = TimeGrid::uniform(T, m2);
      const InterfaceProblem problem(spec, mesh, params, g1, g2, study.threads);
      const InterfaceVector rhs = problem.right_hand_side();
      auto [zeta, report] =
          problem.solve_jacobi(rhs, problem.zero_vector(), opt.tol, opt.max_iter);
      if (!report.converged)
        throw std::runtime_error("run_timegrid_study: interface iteration did not converge");
      auto [t1, t2] = problem.reconstruct_solution(zeta);
      const ErrorPair err = errors_vs_reference(mesh.sub[0], t1.states.back(), mesh.sub[1],
                                                t2.states.back(), mono, ref_final);
      result.rows.push_back(
          {pairing + 1, level, std::max(T / m1, T / m2), err.concentration, err.flux});
    }
  }

  // least-squares slope of log(err) against log(dt) per pairing
  for (int pairing = 0; pairing < 4; ++pairing) {
    double sx = 0, sy_c = 0, sy_f = 0, sxx = 0, sxy_c = 0, sxy_f = 0;
    int n = 0;
    for (const TimegridRow& row : result.rows) {
      if (row.pairing != pairing + 1) continue;
      const double x = std::log(row.dt_max);
      sx += x;
      sxx += x * x;
      sy_c += std::log(row.err_c);
      sy_f += std::log(row.err_f);
      sxy_c += x * std::log(row.err_c);
      sxy_f += x * std::log(row.err_f);
      ++n;
    }
    const double det = n * sxx - sx * sx;
    result.slope_c[pairing] = (n * sxy_c - sx * sy_c) / det;
    result.slope_f[pairing] = (n * sxy_f - sx * sy_f) / det;
  }
  return result;
}

CalibrationStudy run_calibration(const CalibrationOptions& opt, const StudyOptions& study) {
  const ProblemSpec spec = testcase2(opt.regime, /*error_equation=*/true);
  const DecomposedMesh mesh = build_decomposed_mesh(spec, opt.nx, opt.nx);
  const TimeGrid g1 = TimeGrid::uniform(spec.final_time, opt.m1);
  const TimeGrid g2 = TimeGrid::uniform(spec.final_time, opt.m2);
  std::vector<double> p_range = opt.p_range, q_range = opt.q_range;
  if (p_range.empty()) p_range = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  if (q_range.empty()) q_range = {0.05, 0.15, 0.5, 1.5, 5.0};
  CalibrationStudy out;
  out.result = calibrate(spec, mesh, g1, g2, opt.flavor, p_range, q_range, opt.budget, opt.seed,
                         opt.solver, study.threads);
  return out;
}

void write_table_csv(const AccuracyTable& table, const std::string& key_name,
                     const std::string& path) {
  std::ofstream out = open_out(path);
  out << key_name << ",err_c,rate_c,err_phi,rate_phi";
  if (!table.rows.empty())
    for (const auto& [key, count] : table.rows.front().iterations) out << ',' << key;
  out << '\n';
  for (const AccuracyRow& row : table.rows) {
    out << row.key << ',' << row.err_c << ',' << row.rate_c << ',' << row.err_f << ','
        << row.rate_f;
    for (const auto& [key, count] : row.iterations) out << ',' << count;
    out << '\n';
  }
}

void write_curves_csv(const std::vector<CurveSeries>& curves, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const CurveSeries& series : curves) {
    std::ostringstream name;
    name << dir << "/curves_" << to_string(series.regime) << '_' << to_string(series.flavor) << '_'
         << to_string(series.solver) << ".csv";
    std::ofstream out = open_out(name.str());
    out << "iteration,relative_residual,error_c\n";
    const auto& residuals = series.report.relative_residuals;
    const auto& errors = series.report.solution_errors;
    const size_t n = std::max(residuals.size(), errors.size());
    for (size_t k = 0; k < n; ++k) {
      out << k << ',';
      if (k < residuals.size()) out << residuals[k];
      out << ',';
      if (k < errors.size()) out << errors[k];
      out << '\n';
    }
  }
}

void write_timegrid_csv(const TimegridResult& result, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "pairing,level,dt_max,err_c,err_phi\n";
  for (const TimegridRow& row : result.rows)
    out << row.pairing << ',' << row.level << ',' << row.dt_max << ',' << row.err_c << ','
        << row.err_f << '\n';
  out << "# slopes";
  for (int p = 0; p < 4; ++p)
    out << " pairing" << p + 1 << ": c " << result.slope_c[p] << " phi " << result.slope_f[p];
  out << '\n';
}

void write_calibration_csv(const CalibrationResult& result, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "p,q,error,log10_error\n";
  for (const CalibrationSample& s : result.surface)
    out << s.p << ',' << s.q << ',' << s.error << ',' << std::log10(s.error) << '\n';
}

namespace {

void read_params(const ConfigFile& cfg, ParamChoices& params) {
  params.robin2.p = cfg.get_double("params", "robin2_p", params.robin2.p);
  params.ventcel1.p = cfg.get_double("params", "ventcel1_p", params.ventcel1.p);
  params.ventcel1.q = cfg.get_double("params", "ventcel1_q", params.ventcel1.q);
  params.ventcelw.p = cfg.get_double("params", "ventcelw_p", params.ventcelw.p);
  params.ventcelw.q = cfg.get_double("params", "ventcelw_q", params.ventcelw.q);
}

std::vector<SolverKind> read_solvers(const ConfigFile& cfg, std::vector<SolverKind> fallback) {
  const std::string m = cfg.get("solver", "method", "");
  if (m == "jacobi") return {SolverKind::Jacobi};
  if (m == "gmres") return {SolverKind::Gmres};
  if (m == "both" || m.empty()) return fallback;
  throw std::invalid_argument("config: unknown solver method '" + m + "'");
}

}  // namespace

Table1Options table1_options_from_config(const ConfigFile& cfg) {
  Table1Options opt;
  if (cfg.has("mesh", "sizes")) {
    opt.mesh_sizes.clear();
    for (double v : cfg.get_list("mesh", "sizes")) opt.mesh_sizes.push_back(static_cast<int>(v));
  }
  opt.m1 = cfg.get_int("time", "m1", opt.m1);
  opt.m2 = cfg.get_int("time", "m2", opt.m2);
  opt.tol = cfg.get_double("solver", "tol", opt.tol);
  opt.max_iter = cfg.get_int("solver", "max_iter", opt.max_iter);
  opt.solvers = read_solvers(cfg, opt.solvers);
  read_params(cfg, opt.params);
  return opt;
}

Table2Options table2_options_from_config(const ConfigFile& cfg) {
  Table2Options opt;
  opt.nx = cfg.get_int("mesh", "nx", opt.nx);
  if (cfg.has("time", "m2_list")) {
    opt.m2_list.clear();
    for (double v : cfg.get_list("time", "m2_list")) opt.m2_list.push_back(static_cast<int>(v));
  }
  opt.tol = cfg.get_double("solver", "tol", opt.tol);
  opt.max_iter = cfg.get_int("solver", "max_iter", opt.max_iter);
  opt.solvers = read_solvers(cfg, opt.solvers);
  read_params(cfg, opt.params);
  return opt;
}

CurvesOptions curves_options_from_config(const ConfigFile& cfg) {
  CurvesOptions opt;
  opt.nx = cfg.get_int("mesh", "nx", opt.nx);
  opt.m1 = cfg.get_int("time", "m1", opt.m1);
  opt.m2 = cfg.get_int("time", "m2", opt.m2);
  opt.iterations = cfg.get_int("solver", "max_iter", opt.iterations);
  opt.seed = static_cast<uint64_t>(cfg.get_int("solver", "seed", static_cast<int>(opt.seed)));
  if (cfg.has("problem", "regime"))
    opt.regimes = {regime_from_string(cfg.get("problem", "regime", "c"))};
  opt.solvers = read_solvers(cfg, opt.solvers);
  return opt;
}

TimegridOptions timegrid_options_from_config(const ConfigFile& cfg) {
  TimegridOptions opt;
  opt.nx = cfg.get_int("mesh", "nx", opt.nx);
  opt.base_coarse = cfg.get_int("time", "base_coarse", opt.base_coarse);
  opt.base_fine = cfg.get_int("time", "base_fine", opt.base_fine);
  opt.levels = cfg.get_int("time", "levels", opt.levels);
  opt.reference_refine = cfg.get_int("time", "reference_refine", opt.reference_refine);
  opt.horizon = cfg.get_double("problem", "T", opt.horizon);
  opt.tol = cfg.get_double("solver", "tol", opt.tol);
  opt.max_iter = cfg.get_int("solver", "max_iter", opt.max_iter);
  opt.weighted.p = cfg.get_double("params", "ventcelw_p", opt.weighted.p);
  opt.weighted.q = cfg.get_double("params", "ventcelw_q", opt.weighted.q);
  return opt;
}

CalibrationOptions calibration_options_from_config(const ConfigFile& cfg) {
  CalibrationOptions opt;
  opt.regime = regime_from_string(cfg.get("problem", "regime", to_string(opt.regime)));
  opt.nx = cfg.get_int("mesh", "nx", opt.nx);
  opt.m1 = cfg.get_int("time", "m1", opt.m1);
  opt.m2 = cfg.get_int("time", "m2", opt.m2);
  opt.p_range = cfg.get_list("params", "p_range");
  opt.q_range = cfg.get_list("params", "q_range");
  opt.budget = cfg.get_int("solver", "budget", opt.budget);
  opt.seed = static_cast<uint64_t>(cfg.get_int("solver", "seed", static_cast<int>(opt.seed)));
  const std::string m = cfg.get("solver", "method", "jacobi");
  opt.solver = m == "gmres" ? SolverKind::Gmres : SolverKind::Jacobi;
  if (cfg.has("params", "flavor")) opt.flavor = flavor_from_string(cfg.get("params", "flavor", ""));
  return opt;
}

}  // namespace oswr
