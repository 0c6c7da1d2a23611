#include "oswr/monodomain.hpp"

#include <cmath>
#include <stdexcept>

#include "oswr/quadrature.hpp"

namespace oswr {

namespace {

/// Coefficients on the full rectangle, switching across the interface.
SubdomainCoefficients glue_coefficients(const ProblemSpec& spec) {
  const double xg = spec.interface_x;
  auto pick = [xg, &spec](double x) -> const SubdomainCoefficients& {
    return spec.sub[x < xg ? 0 : 1];
  };
  SubdomainCoefficients c;
  c.porosity = [pick](double x, double y) { return pick(x).porosity(x, y); };
  c.d_xx = [pick](double x, double y) { return pick(x).d_xx(x, y); };
  c.d_yy = [pick](double x, double y) { return pick(x).d_yy(x, y); };
  c.velocity = [pick](double x, double y) { return pick(x).velocity(x, y); };
  return c;
}

}  // namespace

MonodomainTrajectory solve_monodomain(const ProblemSpec& spec, const SubdomainMesh& mesh,
                                      const TimeGrid& grid) {
  if (!mesh.interface_edges().empty())
    throw std::invalid_argument("solve_monodomain: expected an undecomposed mesh");
  const SubdomainCoefficients coeffs = glue_coefficients(spec);
  const VelocityDOFs velocity = project_velocity(coeffs.velocity, mesh, nullptr);
  const VentcelBlockSystem system(mesh, nullptr, 0, coeffs, velocity, InterfaceSideData{},
                                  TransmissionParams{ParamFlavor::RobinTwoSided, {}, 0.0}, grid);
  const SubdomainState init = initial_state(mesh, nullptr, spec.initial);
  const SpaceTimeTrace zeta = SpaceTimeTrace::zeros(grid, 0);
  return solve_window(system, init, zeta, &spec.source);
}

ErrorPair ErrorAccumulator::relative() const {
  ErrorPair p;
  p.concentration = norm_c > 0.0 ? std::sqrt(err_c / norm_c) : std::sqrt(err_c);
  p.flux = norm_f > 0.0 ? std::sqrt(err_f / norm_f) : std::sqrt(err_f);
  return p;
}

void accumulate_errors_exact(ErrorAccumulator& acc, const SubdomainMesh& mesh,
                             const SubdomainState& state, const ExactSolution& exact, double t,
                             bool midpoint_sampling) {
  const auto sign = SubdomainMesh::outward_sign();
  for (int k = 0; k < mesh.cell_count(); ++k) {
    const double x0 = mesh.cell_center_x(k) - 0.5 * mesh.hx();
    const double y0 = mesh.cell_center_y(k) - 0.5 * mesh.hy();
    const double ck = state.concentration[k];
    if (midpoint_sampling) {
      const double ce = exact.concentration(mesh.cell_center_x(k), mesh.cell_center_y(k), t);
      acc.err_c += mesh.cell_area() * (ck - ce) * (ck - ce);
      acc.norm_c += mesh.cell_area() * ce * ce;
    } else {
      acc.err_c += integrate_cell(
          [&](double x, double y) {
            const double d = ck - exact.concentration(x, y, t);
            return d * d;
          },
          x0, y0, mesh.hx(), mesh.hy(), 3);
      acc.norm_c += integrate_cell(
          [&](double x, double y) {
            const double c = exact.concentration(x, y, t);
            return c * c;
          },
          x0, y0, mesh.hx(), mesh.hy(), 3);
    }

    const auto edges = mesh.cell_edges(k);
    std::array<double, 4> outward{};
    for (int a = 0; a < 4; ++a) outward[a] = sign[a] * state.flux[edges[a]];
    acc.err_f += integrate_cell(
        [&](double x, double y) {
          const auto w = rt0_basis(x, y, x0, y0, mesh.hx(), mesh.hy());
          Vec2 fh{0.0, 0.0};
          for (int a = 0; a < 4; ++a) {
            fh.x += outward[a] * w[a].x;
            fh.y += outward[a] * w[a].y;
          }
          const Vec2 fe = exact.flux(x, y, t);
          const double dx = fh.x - fe.x, dy = fh.y - fe.y;
          return dx * dx + dy * dy;
        },
        x0, y0, mesh.hx(), mesh.hy(), 3);
    acc.norm_f += integrate_cell(
        [&](double x, double y) {
          const Vec2 fe = exact.flux(x, y, t);
          return fe.x * fe.x + fe.y * fe.y;
        },
        x0, y0, mesh.hx(), mesh.hy(), 3);
  }
}

void accumulate_errors_reference(ErrorAccumulator& acc, const SubdomainMesh& mesh,
                                 const SubdomainState& state, const SubdomainMesh& ref_mesh,
                                 const SubdomainState& ref_state) {
  if (std::abs(mesh.hx() - ref_mesh.hx()) > 1e-12 || std::abs(mesh.hy() - ref_mesh.hy()) > 1e-12)
    throw std::invalid_argument("accumulate_errors_reference: incompatible meshes");
  const int off_x = static_cast<int>(std::lround((mesh.x0() - ref_mesh.x0()) / mesh.hx()));
  const int off_y = static_cast<int>(std::lround((mesh.y0() - ref_mesh.y0()) / mesh.hy()));
  const auto sign = SubdomainMesh::outward_sign();
  for (int k = 0; k < mesh.cell_count(); ++k) {
    const int ix = k % mesh.nx(), iy = k / mesh.nx();
    const int kr = ref_mesh.cell_index(ix + off_x, iy + off_y);
    const double d = state.concentration[k] - ref_state.concentration[kr];
    acc.err_c += mesh.cell_area() * d * d;
    acc.norm_c += mesh.cell_area() * ref_state.concentration[kr] * ref_state.concentration[kr];

    const auto edges = mesh.cell_edges(k);
    const auto ref_edges = ref_mesh.cell_edges(kr);
    std::array<double, 4> diff{}, ref_outward{};
    for (int a = 0; a < 4; ++a) {
      diff[a] = sign[a] * (state.flux[edges[a]] - ref_state.flux[ref_edges[a]]);
      ref_outward[a] = sign[a] * ref_state.flux[ref_edges[a]];
    }
    const double x0 = mesh.cell_center_x(k) - 0.5 * mesh.hx();
    const double y0 = mesh.cell_center_y(k) - 0.5 * mesh.hy();
    auto rt0_norm2 = [&](const std::array<double, 4>& dofs) {
      return integrate_cell(
          [&](double x, double y) {
            const auto w = rt0_basis(x, y, x0, y0, mesh.hx(), mesh.hy());
            Vec2 f{0.0, 0.0};
            for (int a = 0; a < 4; ++a) {
              f.x += dofs[a] * w[a].x;
              f.y += dofs[a] * w[a].y;
            }
            return f.x * f.x + f.y * f.y;
          },
          x0, y0, mesh.hx(), mesh.hy(), 2);  // exact for RT0 fields
    };
    acc.err_f += rt0_norm2(diff);
    acc.norm_f += rt0_norm2(ref_outward);
  }
}

ErrorPair errors_vs_exact(const SubdomainMesh& m1, const SubdomainState& s1,
                          const SubdomainMesh& m2, const SubdomainState& s2,
                          const ExactSolution& exact, double t, bool midpoint_sampling) {
  ErrorAccumulator acc;
  accumulate_errors_exact(acc, m1, s1, exact, t, midpoint_sampling);
  accumulate_errors_exact(acc, m2, s2, exact, t, midpoint_sampling);
  return acc.relative();
}

ErrorPair errors_vs_reference(const SubdomainMesh& m1, const SubdomainState& s1,
                              const SubdomainMesh& m2, const SubdomainState& s2,
                              const SubdomainMesh& ref_mesh, const SubdomainState& ref_state) {
  ErrorAccumulator acc;
  accumulate_errors_reference(acc, m1, s1, ref_mesh, ref_state);
  accumulate_errors_reference(acc, m2, s2, ref_mesh, ref_state);
  return acc.relative();
}

}  // namespace oswr
