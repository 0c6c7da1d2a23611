#include "oswr/problem.hpp"

#include <cmath>

namespace oswr {

void ProblemSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max))
    throw std::invalid_argument("ProblemSpec: degenerate domain rectangle");
  if (!(final_time > 0.0))
    throw std::invalid_argument("ProblemSpec: final time must be positive");
  if (!(x_min < interface_x && interface_x < x_max))
    throw std::invalid_argument("ProblemSpec: interface_x outside the domain");
  for (int i = 0; i < 2; ++i) {
    const auto& s = sub[i];
    if (!s.porosity || !s.d_xx || !s.d_yy || !s.velocity)
      throw std::invalid_argument("ProblemSpec: missing coefficient field");
    // spot check positivity at the subdomain center
    const double cx = (i == 0) ? 0.5 * (x_min + interface_x) : 0.5 * (interface_x + x_max);
    const double cy = 0.5 * (y_min + y_max);
    if (!(s.porosity(cx, cy) > 0.0) || !(s.d_xx(cx, cy) > 0.0) || !(s.d_yy(cx, cy) > 0.0))
      throw std::invalid_argument("ProblemSpec: nonpositive porosity or diffusion");
  }
  if (!source || !initial) throw std::invalid_argument("ProblemSpec: missing source or initial data");
}

double peclet_number(const ProblemSpec& spec, int subdomain_index) {
  if (subdomain_index != 1 && subdomain_index != 2)
    throw std::invalid_argument("peclet_number: subdomain index must be 1 or 2");
  const auto& s = spec.sub[subdomain_index - 1];
  if (!s.constant_d || !s.constant_velocity)
    throw std::invalid_argument(
        "peclet_number: requires uniform isotropic diffusion and uniform velocity");
  const double H = std::max(spec.width(), spec.height());
  const Vec2 u = *s.constant_velocity;
  return H * std::hypot(u.x, u.y) / *s.constant_d;
}

namespace {

SubdomainCoefficients uniform_coefficients(double omega, double d, Vec2 u) {
  SubdomainCoefficients c;
  c.porosity = [omega](double, double) { return omega; };
  c.d_xx = [d](double, double) { return d; };
  c.d_yy = [d](double, double) { return d; };
  c.velocity = [u](double, double) { return u; };
  c.constant_d = d;
  c.constant_velocity = u;
  return c;
}

}  // namespace

AnalyticCase testcase1() {
  constexpr double pi = 3.14159265358979323846;
  AnalyticCase tc;
  ProblemSpec& spec = tc.spec;
  spec.x_min = 0.0; spec.x_max = 1.0;
  spec.y_min = 0.0; spec.y_max = 1.0;
  spec.interface_x = 0.5;
  spec.final_time = 0.1;
  spec.name = "testcase1";
  spec.sub[0] = uniform_coefficients(1.0, 1.0, {1.0, 1.0});
  spec.sub[1] = uniform_coefficients(1.0, 1.0, {1.0, 1.0});

  auto conc = [pi](double x, double y, double t) {
    return std::exp(-4.0 * t) * std::sin(pi * x) * std::sin(pi * y);
  };
  // f = w dt(c) + div(u c - D grad c) with w = 1, u = (1,1), D = I:
  //   f = (2 pi^2 - 4) c + pi e^{-4t} (cos(pi x) sin(pi y) + sin(pi x) cos(pi y))
  spec.source = [pi](double x, double y, double t) {
    const double e = std::exp(-4.0 * t);
    const double sx = std::sin(pi * x), sy = std::sin(pi * y);
    const double cx = std::cos(pi * x), cy = std::cos(pi * y);
    return (2.0 * pi * pi - 4.0) * e * sx * sy + pi * e * (cx * sy + sx * cy);
  };
  spec.initial = [conc](double x, double y) { return conc(x, y, 0.0); };

  tc.exact.concentration = conc;
  tc.exact.flux = [pi, conc](double x, double y, double t) {
    const double e = std::exp(-4.0 * t);
    const double sx = std::sin(pi * x), sy = std::sin(pi * y);
    const double cx = std::cos(pi * x), cy = std::cos(pi * y);
    const double c = conc(x, y, t);
    return Vec2{-pi * e * cx * sy + c, -pi * e * sx * cy + c};
  };
  return tc;
}

ProblemSpec testcase2(Regime regime, bool error_equation) {
  ProblemSpec spec;
  spec.x_min = 0.0; spec.x_max = 1.0;
  spec.y_min = 0.0; spec.y_max = 1.0;
  spec.interface_x = 0.5;
  spec.final_time = 1.0;
  spec.name = "testcase2" + std::string(error_equation ? "_error_equation" : "");

  switch (regime) {
    case Regime::DiffusionDominant:
      spec.sub[0] = uniform_coefficients(1.0, 1.0, {-0.02, -0.5});
      spec.sub[1] = uniform_coefficients(1.0, 0.1, {-0.02, -0.05});
      break;
    case Regime::MixedRegime:
      spec.sub[0] = uniform_coefficients(1.0, 0.01, {-0.02, -0.5});
      spec.sub[1] = uniform_coefficients(1.0, 0.1, {-0.02, -0.05});
      break;
    case Regime::AdvectionDominant:
      spec.sub[0] = uniform_coefficients(1.0, 0.02, {0.5, 1.0});
      spec.sub[1] = uniform_coefficients(1.0, 0.002, {0.5, 0.1});
      break;
  }

  if (error_equation) {
    spec.source = [](double, double, double) { return 0.0; };
    spec.initial = [](double, double) { return 0.0; };
  } else {
    auto bump = [](double x, double y) {
      const double dx = x - 0.2, dy = y - 0.2;
      return std::exp(-100.0 * (dx * dx + dy * dy));
    };
    spec.source = [bump](double x, double y, double) { return bump(x, y); };
    spec.initial = [bump](double x, double y) {
      return x * y * (1.0 - x) * (1.0 - y) * bump(x, y);
    };
  }
  return spec;
}

Regime regime_from_string(const std::string& s) {
  if (s == "a" || s == "diffusion") return Regime::DiffusionDominant;
  if (s == "b" || s == "mixed") return Regime::MixedRegime;
  if (s == "c" || s == "advection") return Regime::AdvectionDominant;
  throw std::invalid_argument("unknown regime '" + s + "' (expected a, b or c)");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::DiffusionDominant: return "a";
    case Regime::MixedRegime: return "b";
    case Regime::AdvectionDominant: return "c";
  }
  return "?";
}

}  // namespace oswr
