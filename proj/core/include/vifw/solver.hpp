#pragma once

#include <optional>
#include <utility>

#include "vifw/feasible_set.hpp"
#include "vifw/operators.hpp"
#include "vifw/schedule.hpp"
#include "vifw/trace.hpp"
#include "vifw/types.hpp"

namespace vifw {

/// Frank-Wolfe gap V(x) = max_{s in C} <F(x), x - s> together with the
/// attaining vertex. Nonnegative on C and zero exactly at solutions of the
/// variational inequality.
struct GapResult {
  double gap = 0.0;
  Vector s;
};

GapResult fw_gap(const FeasibleSet& set, const Operator& op, const Vector& x,
                 TieRule rule = TieRule::LexicographicMin);

/// One iteration x_next = x_k + gamma_{k+1} (s_k - x_k), s_k = lmo(F(x_k)).
/// `k` is the 0-based index of the current iterate.
std::pair<Vector, Vector> fw_step(const FeasibleSet& set, const Operator& op, const Vector& x_k,
                                  std::int64_t k, const StepSchedule& schedule,
                                  TieRule rule = TieRule::LexicographicMin);

struct SolveOptions {
  std::int64_t max_iter = 1000;
  double gap_tol = 0.0;  // 0 means run to max_iter
  TieRule tie_rule = TieRule::LexicographicMin;
  std::optional<Vector> oracle_solution;
  /// Interleaved block updates on product sets: each factor's LMO sees the
  /// already-updated earlier blocks. Experimental; convergence unproven.
  bool gauss_seidel = false;
};

/// Runs the iteration from x0, recording every iterate (rows k = 0..K). The
/// run stops at max_iter or, when gap_tol > 0, as soon as the running
/// minimum of the gap drops to gap_tol. Traces longer than 10^5 rows are
/// thinned to every ceil(max_iter / 10^5)-th row plus the final row.
SolverTrace solve(const FeasibleSet& set, const Operator& op, const StepSchedule& schedule,
                  const Vector& x0, const SolveOptions& options = {});

}  // namespace vifw
