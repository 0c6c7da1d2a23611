#include "oswr/timegrid.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace oswr {

TimeGrid::TimeGrid(std::vector<double> breakpoints) : t_(std::move(breakpoints)) {
  if (t_.size() < 2) throw std::invalid_argument("TimeGrid: need at least one interval");
  if (t_.front() != 0.0) throw std::invalid_argument("TimeGrid: first breakpoint must be 0");
  for (size_t k = 1; k < t_.size(); ++k)
    if (!(t_[k] > t_[k - 1])) throw std::invalid_argument("TimeGrid: breakpoints must increase");
}

TimeGrid TimeGrid::uniform(double horizon, int steps) {
  if (!(horizon > 0.0) || steps < 1) throw std::invalid_argument("TimeGrid::uniform: bad arguments");
  std::vector<double> t(steps + 1);
  for (int k = 0; k <= steps; ++k) t[k] = horizon * k / steps;
  t[0] = 0.0;
  t[steps] = horizon;  // exact horizon regardless of rounding
  return TimeGrid(std::move(t));
}

bool TimeGrid::refined_by(const TimeGrid& fine, double rel_tol) const {
  const double tol = rel_tol * horizon();
  size_t j = 0;
  for (double tc : t_) {
    while (j < fine.t_.size() && fine.t_[j] < tc - tol) ++j;
    if (j == fine.t_.size() || std::abs(fine.t_[j] - tc) > tol) return false;
  }
  return true;
}

SpaceTimeTrace SpaceTimeTrace::zeros(TimeGrid grid, int edge_count) {
  SpaceTimeTrace tr{std::move(grid), edge_count, {}};
  tr.values.assign(static_cast<size_t>(tr.grid.steps()) * edge_count, 0.0);
  return tr;
}

SpaceTimeTrace project(const SpaceTimeTrace& source, const TimeGrid& target) {
  const TimeGrid& sg = source.grid;
  if (std::abs(sg.horizon() - target.horizon()) > 1e-12 * sg.horizon())
    throw std::invalid_argument("project: time grids span different horizons");
  if (sg.same_breakpoints(target)) return source;  // bit-exact identity

  const int ne = source.edge_count;
  SpaceTimeTrace out = SpaceTimeTrace::zeros(target, ne);

  // merge sweep over the union of breakpoints; overlap lengths clamped at 0
  int i = 0, j = 0;
  double pos = 0.0;
  const int mi = sg.steps(), mj = target.steps();
  while (i < mi && j < mj) {
    const double stop = std::min(sg.time(i + 1), target.time(j + 1));
    const double w = std::max(stop - pos, 0.0);
    if (w > 0.0) {
      const double* src = &source.values[static_cast<size_t>(i) * ne];
      double* dst = &out.values[static_cast<size_t>(j) * ne];
      for (int e = 0; e < ne; ++e) dst[e] += w * src[e];
    }
    pos = stop;
    if (sg.time(i + 1) <= stop) ++i;
    if (target.time(j + 1) <= stop) ++j;
  }
  for (int m = 0; m < mj; ++m) {
    const double inv = 1.0 / target.dt(m);
    for (int e = 0; e < ne; ++e) out.values[static_cast<size_t>(m) * ne + e] *= inv;
  }
  return out;
}

void write_csv(const SpaceTimeTrace& trace, std::ostream& os) {
  os << "interval,t_mid,edge,value\n";
  for (int m = 0; m < trace.grid.steps(); ++m) {
    const double tm = 0.5 * (trace.grid.time(m) + trace.grid.time(m + 1));
    for (int e = 0; e < trace.edge_count; ++e)
      os << m << ',' << tm << ',' << e << ',' << trace.at(m, e) << '\n';
  }
}

}  // namespace oswr
