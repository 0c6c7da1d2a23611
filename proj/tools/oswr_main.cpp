#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "oswr/config.hpp"
#include "oswr/experiments.hpp"
#include "oswr/mesh.hpp"
#include "oswr/monodomain.hpp"
#include "oswr/timegrid.hpp"

namespace {

using namespace oswr;

struct GlobalArgs {
  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  int threads = 1;
  std::optional<int> seed;
};

ConfigFile preset_config(const std::string& name) {
  ConfigFile cfg;
  if (name.empty()) return cfg;
  if (name == "table1") {
    cfg.set("problem", "testcase", "1");
    cfg.set("mesh", "sizes", "20 40 80 160");
    cfg.set("time", "m1", "80");
    cfg.set("time", "m2", "60");
    cfg.set("solver", "tol", "1e-6");
  } else if (name == "table2") {
    cfg.set("problem", "testcase", "1");
    cfg.set("problem", "T", "1.0");
    cfg.set("mesh", "nx", "200");
    cfg.set("time", "m2_list", "6 12 24 48");
    cfg.set("solver", "tol", "1e-6");
  } else if (name == "fig3") {
    cfg.set("problem", "testcase", "2");
    cfg.set("problem", "error_equation", "true");
    cfg.set("mesh", "nx", "100");
    cfg.set("time", "m1", "100");
    cfg.set("time", "m2", "75");
    cfg.set("solver", "max_iter", "40");
  } else if (name == "fig4") {
    cfg.set("problem", "testcase", "2");
    cfg.set("problem", "regime", "c");
    cfg.set("mesh", "nx", "100");
    cfg.set("time", "m1", "100");
    cfg.set("time", "m2", "75");
    cfg.set("solver", "budget", "12");
  } else if (name == "fig5") {
    cfg.set("problem", "testcase", "2");
    cfg.set("problem", "regime", "c");
    cfg.set("problem", "T", "0.5");
    cfg.set("mesh", "nx", "200");
    cfg.set("time", "base_coarse", "12");
    cfg.set("time", "base_fine", "16");
    cfg.set("solver", "tol", "1e-8");
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return cfg;
}

ConfigFile merged_config(const GlobalArgs& args) {
  ConfigFile cfg = preset_config(args.preset);
  if (!args.config_path.empty()) cfg.merge(ConfigFile::load(args.config_path));
  if (args.seed) cfg.set("solver", "seed", std::to_string(*args.seed));
  return cfg;
}

void print_accuracy_table(const AccuracyTable& table, const std::string& key_name) {
  std::printf("%10s %10s %7s %10s %7s", key_name.c_str(), "err_c", "rate", "err_phi", "rate");
  if (!table.rows.empty())
    for (const auto& [key, n] : table.rows.front().iterations) std::printf(" %18s", key.c_str());
  std::printf("\n");
  for (const AccuracyRow& row : table.rows) {
    std::printf("%10.5g %10.4g %7.2f %10.4g %7.2f", row.key, row.err_c, row.rate_c, row.err_f,
                row.rate_f);
    for (const auto& [key, n] : row.iterations) std::printf(" %18d", n);
    std::printf("\n");
  }
}

int run_table1_cmd(const GlobalArgs& args) {
  const ConfigFile cfg = merged_config(args);
  const Table1Options opt = table1_options_from_config(cfg);
  const StudyOptions study{args.out_dir, args.threads};
  const AccuracyTable table = run_table1(opt, study);
  write_table_csv(table, "h", args.out_dir + "/table1.csv");
  std::printf("spatial accuracy study (weighted Ventcel errors, all iteration counts)\n");
  print_accuracy_table(table, "h");
  std::printf("wrote %s/table1.csv\n", args.out_dir.c_str());
  return 0;
}

int run_table2_cmd(const GlobalArgs& args) {
  const ConfigFile cfg = merged_config(args);
  const Table2Options opt = table2_options_from_config(cfg);
  const StudyOptions study{args.out_dir, args.threads};
  const AccuracyTable table = run_table2(opt, study);
  write_table_csv(table, "dt2", args.out_dir + "/table2.csv");
  std::printf("temporal accuracy study (weighted Ventcel errors, all iteration counts)\n");
  print_accuracy_table(table, "dt2");
  std::printf("wrote %s/table2.csv\n", args.out_dir.c_str());
  return 0;
}

int run_curves_cmd(const GlobalArgs& args) {
  const ConfigFile cfg = merged_config(args);
  const CurvesOptions opt = curves_options_from_config(cfg);
  const StudyOptions study{args.out_dir, args.threads};
  const auto curves = run_convergence_curves(opt, study);
  write_curves_csv(curves, args.out_dir);
  for (const CurveSeries& s : curves) {
    const double last = s.report.solution_errors.empty() ? 0.0 : s.report.solution_errors.back();
    std::printf("regime %s %-8s %-6s  error after %3d iterations: %.3e\n",
                to_string(s.regime).c_str(), to_string(s.flavor).c_str(),
                to_string(s.solver).c_str(), s.report.iterations, last);
  }
  std::printf("wrote per-series CSV files under %s\n", args.out_dir.c_str());
  return 0;
}

int run_timegrids_cmd(const GlobalArgs& args) {
  const ConfigFile cfg = merged_config(args);
  const TimegridOptions opt = timegrid_options_from_config(cfg);
  const StudyOptions study{args.out_dir, args.threads};
  const TimegridResult result = run_timegrid_study(opt, study);
  write_timegrid_csv(result, args.out_dir + "/timegrids.csv");
  static const char* names[] = {"coarse-coarse", "coarse-fine", "fine-coarse", "fine-fine"};
  for (const TimegridRow& row : result.rows)
    std::printf("grid %d (%s) level %d  dt=%.5g  err_c=%.4e  err_phi=%.4e\n", row.pairing,
                names[row.pairing - 1], row.level, row.dt_max, row.err_c, row.err_f);
  for (int p = 0; p < 4; ++p)
    std::printf("pairing %d (%s): slope c %.3f, slope phi %.3f\n", p + 1, names[p],
                result.slope_c[p], result.slope_f[p]);
  std::printf("wrote %s/timegrids.csv\n", args.out_dir.c_str());
  return 0;
}

int run_calibrate_cmd(const GlobalArgs& args) {
  const ConfigFile cfg = merged_config(args);
  const CalibrationOptions opt = calibration_options_from_config(cfg);
  const StudyOptions study{args.out_dir, args.threads};
  const CalibrationStudy out = run_calibration(opt, study);
  write_calibration_csv(out.result, args.out_dir + "/calibration.csv");
  std::printf("calibrated (p*, q*) = (%.4g, %.4g), error %.4e after the fixed budget\n",
              out.result.best_p, out.result.best_q, out.result.best_error);
  std::printf("wrote %s/calibration.csv\n", args.out_dir.c_str());
  return 0;
}

int run_solve_cmd(const GlobalArgs& args) {
  const ConfigFile cfg = merged_config(args);
  const ProblemSpec spec = problem_from_config(cfg);
  const int nx = cfg.get_int("mesh", "nx", 40);
  const int ny = cfg.get_int("mesh", "ny", nx);
  const int m1 = cfg.get_int("time", "m1", 40);
  const int m2 = cfg.get_int("time", "m2", 30);
  const DecomposedMesh mesh = build_decomposed_mesh(spec, nx, ny);
  const TimeGrid g1 = TimeGrid::uniform(spec.final_time, m1);
  const TimeGrid g2 = TimeGrid::uniform(spec.final_time, m2);

  const ParamFlavor flavor = flavor_from_string(cfg.get("params", "flavor", "ventcelw"));
  ParamChoices defaults = spec.name == "testcase1"
                              ? default_params_testcase1()
                              : default_params_testcase2(regime_from_string(
                                    cfg.get("problem", "regime", "c")));
  FlavorParams fp = defaults.of(flavor);
  fp.p = cfg.get_double("params", "p_star", fp.p);
  fp.q = cfg.get_double("params", "q_star", fp.q);

  const auto params = build_params(flavor, fp.p, fp.q, spec, mesh);
  const InterfaceProblem problem(spec, mesh, params, g1, g2, args.threads);
  const double tol = cfg.get_double("solver", "tol", 1e-6);
  const int max_iter = cfg.get_int("solver", "max_iter", 400);
  const bool random_guess = cfg.get("solver", "initial_guess", "zero") == "random";
  const uint64_t seed = static_cast<uint64_t>(cfg.get_int("solver", "seed", 424242));

  const InterfaceVector rhs = problem.right_hand_side();
  const InterfaceVector guess =
      random_guess ? problem.random_vector(seed) : problem.zero_vector();
  const SolverKind solver =
      cfg.get("solver", "method", "jacobi") == "gmres" ? SolverKind::Gmres : SolverKind::Jacobi;
  auto [zeta, report] = solver == SolverKind::Jacobi
                            ? problem.solve_jacobi(rhs, guess, tol, max_iter)
                            : problem.solve_gmres(rhs, guess, tol, max_iter);
  auto [t1, t2] = problem.reconstruct_solution(zeta);

  std::filesystem::create_directories(args.out_dir);
  {
    std::ofstream out(args.out_dir + "/iterations.csv");
    out << "iteration,relative_residual\n";
    for (size_t k = 0; k < report.relative_residuals.size(); ++k)
      out << k + 1 << ',' << report.relative_residuals[k] << '\n';
  }
  {
    std::ofstream out(args.out_dir + "/concentration.csv");
    out << "x,y,c\n";
    for (int side = 0; side < 2; ++side) {
      const SubdomainMesh& m = mesh.sub[side];
      const auto& c = (side == 0 ? t1 : t2).states.back().concentration;
      for (int k = 0; k < m.cell_count(); ++k)
        out << m.cell_center_x(k) << ',' << m.cell_center_y(k) << ',' << c[k] << '\n';
    }
  }
  std::printf("%s %s: %d iterations, %s (final relative residual %.3e)\n",
              to_string(solver).c_str(), to_string(flavor).c_str(), report.iterations,
              report.converged ? "converged" : "NOT converged",
              report.relative_residuals.empty() ? 0.0 : report.relative_residuals.back());
  if (spec.name == "testcase1") {
    const ErrorPair err = errors_vs_exact(mesh.sub[0], t1.states.back(), mesh.sub[1],
                                          t2.states.back(), testcase1().exact, spec.final_time);
    std::printf("relative L2 errors at T: c %.4e, phi %.4e\n", err.concentration, err.flux);
  }
  std::printf("wrote %s/iterations.csv and %s/concentration.csv\n", args.out_dir.c_str(),
              args.out_dir.c_str());
  return report.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"global-in-time Ventcel-Schwarz solver for 2D advection-diffusion"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--config", args.config_path, "config file overriding study defaults");
  app.add_option("--preset", args.preset, "named preset: table1 table2 fig3 fig4 fig5");
  app.add_option("--out", args.out_dir, "output directory");
  app.add_option("--threads", args.threads, "worker threads (subdomain solves, calibration)");
  int seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "seed for random interface guesses");

  auto* table1 = app.add_subcommand("table1", "spatial accuracy and iteration counts");
  auto* table2 = app.add_subcommand("table2", "temporal accuracy and iteration counts");
  auto* curves = app.add_subcommand("curves", "error-equation convergence curves per regime");
  auto* calibrate = app.add_subcommand("calibrate", "parameter-plane scan on the error equation");
  auto* timegrids = app.add_subcommand("timegrids", "nonconforming time grid accuracy study");
  auto* solve = app.add_subcommand("solve", "single decomposed solve from a config file");
  for (CLI::App* sub : {table1, table2, curves, calibrate, timegrids, solve}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) args.seed = seed;

  try {
    if (table1->parsed()) return run_table1_cmd(args);
    if (table2->parsed()) return run_table2_cmd(args);
    if (curves->parsed()) return run_curves_cmd(args);
    if (calibrate->parsed()) return run_calibrate_cmd(args);
    if (timegrids->parsed()) return run_timegrids_cmd(args);
    if (solve->parsed()) return run_solve_cmd(args);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 1;
}
