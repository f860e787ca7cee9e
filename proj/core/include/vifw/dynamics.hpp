#pragma once

#include <vector>

#include "vifw/feasible_set.hpp"
#include "vifw/operators.hpp"
#include "vifw/solver.hpp"
#include "vifw/trace.hpp"
#include "vifw/types.hpp"

namespace vifw {

/// Piecewise-linear curve through breakpoints (tau_k, x_k) with strictly
/// increasing times. Values between breakpoints are convex combinations of
/// the endpoints, so the curve never leaves the convex hull of its
/// breakpoints and is Lipschitz with constant diam(C).
class Trajectory {
 public:
  Trajectory(std::vector<double> times, std::vector<Vector> points);

  std::size_t size() const { return times_.size(); }
  double time(std::size_t i) const { return times_[i]; }
  const Vector& point(std::size_t i) const { return points_[i]; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }

  /// w(t); throws std::out_of_range outside [t_begin, t_end].
  Vector value(double t) const;

  /// Exact slope (x_{k+1} - x_k) / (tau_{k+1} - tau_k) of segment k.
  Vector segment_slope(std::size_t k) const;

 private:
  std::vector<double> times_;
  std::vector<Vector> points_;
};

/// The interpolating curve of a full (unthinned) solve trace: breakpoints
/// (tau_k, x_k). Thinned traces are rejected because interpolation needs
/// consecutive iterates.
Trajectory interpolate(const SolverTrace& trace);

/// Per-segment perturbation radii delta_k = gamma_{k+1} * diam(C) together
/// with a sampled verification that sup_t ||x_k - w(t)|| stays below
/// delta_k on each open segment.
struct PerturbationBound {
  std::vector<double> deltas;
  double min_margin = 0.0;  // min over segments of delta_k - sup_t ||x_k - w(t)||
  bool verified = false;    // every sampled sup was strictly below delta_k
};

PerturbationBound perturbation_bound(const SolverTrace& trace, const FeasibleSet& set);

/// Explicit Euler integration of the best-response dynamics
///   x' in lmo(F(x)) - x
/// with step h in (0, 1]: x_{j+1} = x_j + h (lmo(F(x_j)) - x_j). This is the
/// solve iteration under the constant schedule gamma = h and shares its code
/// path. Returns breakpoints (j*h, x_j), j = 0..ceil(t_end/h).
Trajectory integrate_br(const FeasibleSet& set, const Operator& op, const Vector& x0,
                        double t_end, double h, TieRule rule = TieRule::LexicographicMin);

/// Checks the discrete analogue of the exponential decay of the gap along
/// best-response trajectories: u_j = e^{t_j} V(x_j) must not increase by
/// more than tol(h) = 10 h (1 + max_j V(x_j)) across any step.
struct DecayReport {
  double max_increase = 0.0;        // max_j (u_{j+1} - u_j)
  double tolerance = 0.0;           // 10 h (1 + max_j V)
  double violation_fraction = 0.0;  // fraction of steps increasing past tol
  double max_gap = 0.0;             // max_j V(x_j)
  double max_u = 0.0;               // max_j e^{t_j} V(x_j)
  double final_gap = 0.0;           // V at the last breakpoint
  bool passed = false;              // violation_fraction == 0
};

DecayReport decay_check(const Trajectory& trajectory, const FeasibleSet& set, const Operator& op,
                        TieRule rule = TieRule::LexicographicMin);

}  // namespace vifw
