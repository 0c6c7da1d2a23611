#ifndef OSWR_PROBLEM_HPP
#define OSWR_PROBLEM_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace oswr {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using ScalarField = std::function<double(double, double)>;
using TimeScalarField = std::function<double(double, double, double)>;
using VectorField = std::function<Vec2(double, double)>;
using TimeVectorField = std::function<Vec2(double, double, double)>;

/// Coefficients of one subdomain.  Fields are sampled at cell centers and
/// edge quadrature points during assembly, so piecewise-constant-per-cell
/// data is supported; the constant_* members are set whenever the field is
/// uniform (all experiments shipped with the code use uniform coefficients)
/// and are required by the Peclet diagnostic and the weighted parameters.
struct SubdomainCoefficients {
  ScalarField porosity;  // omega > 0
  ScalarField d_xx;      // diagonal diffusion, both entries > 0
  ScalarField d_yy;
  VectorField velocity;  // Darcy velocity, time independent

  std::optional<double> constant_d;  // set when D = d*I with uniform d
  std::optional<Vec2> constant_velocity;
};

/// Continuous problem data on a rectangle split by a vertical interface.
/// Homogeneous Dirichlet conditions on the outer boundary.
struct ProblemSpec {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  double final_time = 1.0;   // T
  double interface_x = 0.5;  // x_min < interface_x < x_max

  SubdomainCoefficients sub[2];  // sub[0] left of the interface, sub[1] right

  TimeScalarField source;   // f(x, y, t)
  ScalarField initial;      // c0(x, y); must vanish on the outer boundary
  std::string name = "custom";

  void validate() const;  // throws std::invalid_argument on bad data
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

/// Closed-form solution used by manufactured-accuracy studies.  The flux is
/// the total one, -D grad c + u c, matching the discrete vector variable.
struct ExactSolution {
  TimeScalarField concentration;
  TimeVectorField flux;
};

struct AnalyticCase {
  ProblemSpec spec;
  ExactSolution exact;
};

/// Global Peclet number H*|u|/d of one subdomain (1 or 2).  Only defined for
/// uniform isotropic coefficients; throws otherwise.
double peclet_number(const ProblemSpec& spec, int subdomain_index);

/// Smooth test case on the unit square with known solution
/// exp(-4t) sin(pi x) sin(pi y), unit coefficients, u = (1,1).
AnalyticCase testcase1();

enum class Regime { DiffusionDominant, MixedRegime, AdvectionDominant };

/// Heterogeneous test case: coefficients with a jump across the interface,
/// selected by regime.  With error_equation = true the source and initial
/// data are zero (used to study pure iteration convergence).
ProblemSpec testcase2(Regime regime, bool error_equation = false);

Regime regime_from_string(const std::string& s);
std::string to_string(Regime r);

}  // namespace oswr

#endif
