#ifndef OSWR_EXPERIMENTS_HPP
#define OSWR_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "oswr/config.hpp"
#include "oswr/interface_solver.hpp"
#include "oswr/params.hpp"
#include "oswr/problem.hpp"

namespace oswr {

struct FlavorParams {
  double p = 1.0;
  double q = 0.0;
};

/// Free optimized parameters (p*, q*) per transmission flavor.  The shipped
/// defaults come from pilot-run calibration on the corresponding study
/// settings (see the calibrate subcommand); they can be overridden per run
/// from the [params] config section.
struct ParamChoices {
  FlavorParams robin2;
  FlavorParams ventcel1;
  FlavorParams ventcelw;

  const FlavorParams& of(ParamFlavor flavor) const;
  FlavorParams& of(ParamFlavor flavor);
};

ParamChoices default_params_testcase1();
ParamChoices default_params_testcase2(Regime regime);

struct StudyOptions {
  std::string out_dir = ".";
  int threads = 1;
};

struct AccuracyRow {
  double key = 0.0;  // mesh size h for the space study, dt_2 for the time study
  double err_c = 0.0, err_f = 0.0;
  double rate_c = 0.0, rate_f = 0.0;  // log2(previous/current), 0 on the first row
  std::map<std::string, int> iterations;  // "jacobi/robin2" ... -> count
};

struct AccuracyTable {
  std::vector<AccuracyRow> rows;
};

/// Spatial accuracy sweep: fixed nonconforming time grids, decreasing h;
/// errors against the closed-form solution with weighted Ventcel conditions,
/// iteration counts for every requested flavor and solver.
struct Table1Options {
  std::vector<int> mesh_sizes{20, 40, 80, 160};
  int m1 = 80, m2 = 60;
  double tol = 1e-6;
  int max_iter = 400;
  ParamChoices params = default_params_testcase1();
  std::vector<ParamFlavor> flavors{ParamFlavor::RobinTwoSided, ParamFlavor::VentcelOneSided,
                                   ParamFlavor::VentcelWeighted};
  std::vector<SolverKind> solvers{SolverKind::Jacobi, SolverKind::Gmres};
};
AccuracyTable run_table1(const Table1Options& opt, const StudyOptions& study);

/// Temporal accuracy sweep: fixed fine mesh, decreasing time steps with
/// dt_1 = (3/4) dt_2 and T = 1.
struct Table2Options {
  int nx = 200;
  std::vector<int> m2_list{6, 12, 24, 48};  // m1 = (4/3) m2
  double tol = 1e-6;
  int max_iter = 400;
  ParamChoices params = default_params_testcase1();
  std::vector<ParamFlavor> flavors{ParamFlavor::RobinTwoSided, ParamFlavor::VentcelOneSided,
                                   ParamFlavor::VentcelWeighted};
  std::vector<SolverKind> solvers{SolverKind::Jacobi, SolverKind::Gmres};
};
AccuracyTable run_table2(const Table2Options& opt, const StudyOptions& study);

/// Error-equation convergence curves: random interface guess, per-iteration
/// concentration error for three parameter flavors, two solvers and the
/// selected Peclet regimes.
struct CurvesOptions {
  std::vector<Regime> regimes{Regime::DiffusionDominant, Regime::MixedRegime,
                              Regime::AdvectionDominant};
  int nx = 100;
  int m1 = 100, m2 = 75;
  int iterations = 40;
  uint64_t seed = 424242;
  std::vector<ParamFlavor> flavors{ParamFlavor::RobinTwoSided, ParamFlavor::VentcelOneSided,
                                   ParamFlavor::VentcelWeighted};
  std::vector<SolverKind> solvers{SolverKind::Jacobi, SolverKind::Gmres};
};
struct CurveSeries {
  Regime regime;
  ParamFlavor flavor;
  SolverKind solver;
  IterationReport report;
};
std::vector<CurveSeries> run_convergence_curves(const CurvesOptions& opt,
                                                const StudyOptions& study);

/// Nonconforming-in-time accuracy study: four coarse/fine grid pairings
/// refined by factors of two, errors against a fine-time monodomain
/// reference at the final time, weighted Ventcel conditions.
struct TimegridOptions {
  int nx = 100;
  int base_coarse = 12, base_fine = 16;  // steps at level 0 (T/12 and T/16)
  int levels = 4;
  int reference_refine = 128;  // reference step = fine base step / 128
  double horizon = 0.5;
  double tol = 1e-8;
  int max_iter = 600;
  FlavorParams weighted = default_params_testcase2(Regime::AdvectionDominant).ventcelw;
};
struct TimegridRow {
  int pairing = 0;  // 1 coarse-coarse, 2 coarse-fine, 3 fine-coarse, 4 fine-fine
  int level = 0;
  double dt_max = 0.0;
  double err_c = 0.0, err_f = 0.0;
};
struct TimegridResult {
  std::vector<TimegridRow> rows;
  std::array<double, 4> slope_c{}, slope_f{};  // least-squares slopes per pairing
};
TimegridResult run_timegrid_study(const TimegridOptions& opt, const StudyOptions& study);

/// Parameter-plane scan on the error equation with a fixed iteration budget
/// (the calibration behind the shipped defaults).
struct CalibrationOptions {
  Regime regime = Regime::AdvectionDominant;
  int nx = 100;
  int m1 = 100, m2 = 75;
  std::vector<double> p_range;
  std::vector<double> q_range;
  int budget = 12;
  uint64_t seed = 424242;
  SolverKind solver = SolverKind::Jacobi;
  ParamFlavor flavor = ParamFlavor::VentcelWeighted;
};
struct CalibrationStudy {
  CalibrationResult result;
};
CalibrationStudy run_calibration(const CalibrationOptions& opt, const StudyOptions& study);

// CSV emission (one file per study, written under the output directory)
void write_table_csv(const AccuracyTable& table, const std::string& key_name,
                     const std::string& path);
void write_curves_csv(const std::vector<CurveSeries>& curves, const std::string& dir);
void write_timegrid_csv(const TimegridResult& result, const std::string& path);
void write_calibration_csv(const CalibrationResult& result, const std::string& path);

std::string iteration_key(SolverKind solver, ParamFlavor flavor);

// config-section overrides for the option structs
Table1Options table1_options_from_config(const ConfigFile& cfg);
Table2Options table2_options_from_config(const ConfigFile& cfg);
CurvesOptions curves_options_from_config(const ConfigFile& cfg);
TimegridOptions timegrid_options_from_config(const ConfigFile& cfg);
CalibrationOptions calibration_options_from_config(const ConfigFile& cfg);

}  // namespace oswr

#endif
