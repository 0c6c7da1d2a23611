#ifndef OSWR_TIMEGRID_HPP
#define OSWR_TIMEGRID_HPP

#include <iosfwd>
#include <vector>

namespace oswr {

/// Partition 0 = t_0 < t_1 < ... < t_M = T of the time window.  Interval m
/// (0-based) is (t_m, t_{m+1}].
class TimeGrid {
 public:
  TimeGrid() : t_{0.0, 1.0} {}
  explicit TimeGrid(std::vector<double> breakpoints);
  static TimeGrid uniform(double horizon, int steps);

  int steps() const { return static_cast<int>(t_.size()) - 1; }
  double horizon() const { return t_.back(); }
  double time(int k) const { return t_[k]; }             // k in [0, steps]
  double dt(int m) const { return t_[m + 1] - t_[m]; }   // m in [0, steps)
  const std::vector<double>& breakpoints() const { return t_; }

  bool same_breakpoints(const TimeGrid& other) const { return t_ == other.t_; }
  /// true when every breakpoint of this grid appears in `fine`
  bool refined_by(const TimeGrid& fine, double rel_tol = 1e-12) const;

 private:
  std::vector<double> t_;
};

/// Piecewise-constant-in-time, piecewise-constant-per-interface-edge data:
/// one value per (time interval, interface edge).
struct SpaceTimeTrace {
  TimeGrid grid;
  int edge_count = 0;
  std::vector<double> values;  // time-major: values[m * edge_count + e]

  static SpaceTimeTrace zeros(TimeGrid grid, int edge_count);
  double& at(int interval, int edge) { return values[static_cast<size_t>(interval) * edge_count + edge]; }
  double at(int interval, int edge) const { return values[static_cast<size_t>(interval) * edge_count + edge]; }
};

/// Average-valued projection between piecewise-constant-in-time traces:
/// on each target interval the value is the length-weighted average of the
/// source over that interval, computed by a merge sweep over the union of
/// breakpoints.  Identity when the grids coincide.
SpaceTimeTrace project(const SpaceTimeTrace& source, const TimeGrid& target);

/// columns: interval index, interval midpoint, edge index, value
void write_csv(const SpaceTimeTrace& trace, std::ostream& os);

}  // namespace oswr

#endif
