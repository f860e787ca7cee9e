#include "vifw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vifw {

Trajectory::Trajectory(std::vector<double> times, std::vector<Vector> points)
    : times_(std::move(times)), points_(std::move(points)) {
  if (times_.size() != points_.size())
    throw std::invalid_argument("trajectory: times and points lengths differ");
  if (times_.size() < 2) throw std::invalid_argument("trajectory: needs at least 2 breakpoints");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("trajectory: times must be strictly increasing");
    if (points_[i].size() != points_[0].size())
      throw std::invalid_argument("trajectory: point dimensions differ");
  }
}

Vector Trajectory::value(double t) const {
  if (t < times_.front() || t > times_.back())
    throw std::out_of_range("trajectory value: t outside the breakpoint range");
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin() - 1);
  if (k >= times_.size() - 1) k = times_.size() - 2;
  const double theta =
      std::clamp((t - times_[k]) / (times_[k + 1] - times_[k]), 0.0, 1.0);
  return (1.0 - theta) * points_[k] + theta * points_[k + 1];
}

Vector Trajectory::segment_slope(std::size_t k) const {
  if (k + 1 >= times_.size()) throw std::out_of_range("segment_slope: segment index out of range");
  return (points_[k + 1] - points_[k]) / (times_[k + 1] - times_[k]);
}

Trajectory interpolate(const SolverTrace& trace) {
  if (trace.thinned)
    throw std::invalid_argument("interpolate: trace is thinned; consecutive iterates required");
  if (trace.rows.size() < 2) throw std::invalid_argument("interpolate: needs at least 2 rows");
  std::vector<double> times;
  std::vector<Vector> points;
  times.reserve(trace.rows.size());
  points.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    times.push_back(row.tau);
    points.push_back(row.x);
  }
  return Trajectory(std::move(times), std::move(points));
}

PerturbationBound perturbation_bound(const SolverTrace& trace, const FeasibleSet& set) {
  if (trace.thinned)
    throw std::invalid_argument("perturbation_bound: trace is thinned");
  if (trace.rows.size() < 2)
    throw std::invalid_argument("perturbation_bound: needs at least 2 rows");
  const double diam = set.diameter();

  PerturbationBound out;
  out.deltas.reserve(trace.rows.size() - 1);
  out.min_margin = std::numeric_limits<double>::infinity();
  out.verified = true;
  // Interior sample fractions for the sup over each open segment; the sup is
  // approached as theta -> 1, so the largest sample dominates.
  static constexpr double kThetas[] = {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 0.984375};
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    const TraceRow& a = trace.rows[k];
    const TraceRow& b = trace.rows[k + 1];
    const double gamma_next = b.gamma;
    const double delta = gamma_next * diam;
    out.deltas.push_back(delta);
    double sup = 0.0;
    for (const double theta : kThetas) {
      const Vector w = (1.0 - theta) * a.x + theta * b.x;
      sup = std::max(sup, (a.x - w).norm());
    }
    const double margin = delta - sup;
    out.min_margin = std::min(out.min_margin, margin);
    if (delta > 0.0 ? sup >= delta : sup > 0.0) out.verified = false;
  }
  return out;
}

Trajectory integrate_br(const FeasibleSet& set, const Operator& op, const Vector& x0,
                        double t_end, double h, TieRule rule) {
  if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("integrate_br: h must be in (0, 1]");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate_br: t_end must be > 0");
  const auto steps = static_cast<std::int64_t>(std::ceil(t_end / h - 1e-12));
  if (steps < 1) throw std::invalid_argument("integrate_br: no steps in [0, t_end]");

  SolveOptions options;
  options.max_iter = steps;
  options.gap_tol = 0.0;
  options.tie_rule = rule;
  const StepSchedule constant =
      StepSchedule::explicit_list(std::vector<double>(static_cast<std::size_t>(steps), h));
  const SolverTrace trace = solve(set, op, constant, x0, options);

  std::vector<double> times;
  std::vector<Vector> points;
  times.reserve(trace.rows.size());
  points.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    times.push_back(static_cast<double>(row.k) * h);
    points.push_back(row.x);
  }
  return Trajectory(std::move(times), std::move(points));
}

DecayReport decay_check(const Trajectory& trajectory, const FeasibleSet& set, const Operator& op,
                        TieRule rule) {
  const std::size_t n = trajectory.size();
  std::vector<double> gaps(n);
  for (std::size_t j = 0; j < n; ++j) gaps[j] = fw_gap(set, op, trajectory.point(j), rule).gap;

  DecayReport report;
  report.max_gap = *std::max_element(gaps.begin(), gaps.end());
  report.final_gap = gaps.back();
  const double h = trajectory.time(1) - trajectory.time(0);
  report.tolerance = 10.0 * h * (1.0 + report.max_gap);

  report.max_increase = -std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  double u_prev = std::exp(trajectory.time(0)) * gaps[0];
  report.max_u = u_prev;
  for (std::size_t j = 1; j < n; ++j) {
    const double u = std::exp(trajectory.time(j)) * gaps[j];
    report.max_u = std::max(report.max_u, u);
    const double increase = u - u_prev;
    report.max_increase = std::max(report.max_increase, increase);
    if (increase > report.tolerance) ++violations;
    u_prev = u;
  }
  report.violation_fraction = static_cast<double>(violations) / static_cast<double>(n - 1);
  report.passed = violations == 0;
  return report;
}

}  // namespace vifw
