#include "vifw/solver.hpp"

#include <cmath>
#include <string>

namespace vifw {

namespace {

constexpr double kFeasTol = 1e-9;
constexpr std::int64_t kTraceCap = 100000;

void check_feasible(const FeasibleSet& set, const Vector& x, const char* what) {
  if (x.size() != set.dimension())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  if (!set.contains(x, kFeasTol))
    throw std::invalid_argument(std::string(what) + ": point is outside the feasible set");
}

// Interleaved block update: each factor's LMO sees the already-updated
// earlier blocks. Returns the concatenated per-block LMO outputs.
Vector gauss_seidel_targets(const FeasibleSet& set, const Operator& op, Vector& x, double gamma,
                            TieRule rule) {
  const auto& factors = set.factors();
  Vector s(set.dimension());
  Index offset = 0;
  for (const auto& factor : factors) {
    const Index d = factor.dimension();
    const Vector field = op(x);
    const Vector block = factor.lmo(field.segment(offset, d), rule);
    s.segment(offset, d) = block;
    x.segment(offset, d) += gamma * (block - x.segment(offset, d));
    offset += d;
  }
  return s;
}

}  // namespace

GapResult fw_gap(const FeasibleSet& set, const Operator& op, const Vector& x, TieRule rule) {
  check_feasible(set, x, "fw_gap");
  const Vector field = op(x);
  GapResult result;
  result.s = set.lmo(field, rule);
  result.gap = field.dot(x - result.s);
  return result;
}

std::pair<Vector, Vector> fw_step(const FeasibleSet& set, const Operator& op, const Vector& x_k,
                                  std::int64_t k, const StepSchedule& schedule, TieRule rule) {
  check_feasible(set, x_k, "fw_step");
  if (k < 0) throw std::invalid_argument("fw_step: k must be >= 0");
  const double gamma = schedule.step(k + 1);
  const Vector s = set.lmo(op(x_k), rule);
  Vector x_next = x_k + gamma * (s - x_k);
  if (!set.contains(x_next, kFeasTol))
    throw std::runtime_error("fw_step: update left the feasible set");
  return {std::move(x_next), s};
}

SolverTrace solve(const FeasibleSet& set, const Operator& op, const StepSchedule& schedule,
                  const Vector& x0, const SolveOptions& options) {
  if (options.max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");
  if (!(options.gap_tol >= 0.0)) throw std::invalid_argument("solve: gap_tol must be >= 0");
  if (set.dimension() != op.dimension())
    throw std::invalid_argument("solve: set and operator dimensions differ");
  check_feasible(set, x0, "solve");
  if (options.oracle_solution && options.oracle_solution->size() != set.dimension())
    throw std::invalid_argument("solve: oracle solution dimension mismatch");
  if (options.gauss_seidel && set.kind() != FeasibleSet::Kind::Product)
    throw std::invalid_argument("solve: gauss_seidel requires a product set");

  const std::int64_t stride =
      options.max_iter > kTraceCap ? (options.max_iter + kTraceCap - 1) / kTraceCap : 1;

  SolverTrace trace;
  trace.thinned = stride > 1;
  trace.rows.reserve(static_cast<std::size_t>(std::min(options.max_iter, kTraceCap) + 2));

  Vector x = x0;
  double tau = 0.0;
  double gamma_in = 0.0;  // step that produced the current iterate
  std::int64_t last_recorded = -1;

  for (std::int64_t k = 0;; ++k) {
    if (!x.allFinite())
      throw std::runtime_error("solve: non-finite iterate at k = " + std::to_string(k) +
                               " (operator or schedule configuration bug)");
    const Vector field = op(x);
    const Vector s = set.lmo(field, options.tie_rule);
    const double gap = field.dot(x - s);
    if (!std::isfinite(gap))
      throw std::runtime_error("solve: non-finite gap at k = " + std::to_string(k) +
                               " (operator or schedule configuration bug)");

    trace.min_gap = std::min(trace.min_gap, gap);
    trace.iterations = k;

    const bool gap_stop = options.gap_tol > 0.0 && trace.min_gap <= options.gap_tol;
    const bool last = k == options.max_iter || gap_stop;
    if (k % stride == 0 || last) {
      TraceRow row;
      row.k = k;
      row.tau = tau;
      row.gamma = gamma_in;
      row.x = x;
      row.s = s;
      row.gap = gap;
      if (options.oracle_solution) row.dist = (x - *options.oracle_solution).norm();
      if (row.k != last_recorded) {
        trace.rows.push_back(std::move(row));
        last_recorded = k;
      }
    }
    if (last) {
      trace.stopped_by_gap = gap_stop;
      break;
    }

    const double gamma = schedule.step(k + 1);
    if (options.gauss_seidel) {
      // The gap and the recorded s stay the plain certificates at x_k; only
      // the update directions are interleaved.
      gauss_seidel_targets(set, op, x, gamma, options.tie_rule);
    } else {
      x += gamma * (s - x);
    }
    tau += gamma;
    gamma_in = gamma;
  }
  return trace;
}

}  // namespace vifw
