#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "vifw/types.hpp"

namespace vifw {

/// One recorded iterate. `gamma` is the step that produced this iterate
/// from its predecessor (gamma = 0 for the initial row), so
/// tau = sum of the gammas recorded up to and including this row.
struct TraceRow {
  std::int64_t k = 0;
  double tau = 0.0;
  double gamma = 0.0;
  Vector x;
  Vector s;                     // LMO output at x
  double gap = 0.0;             // Frank-Wolfe gap at x
  std::optional<double> dist;   // distance to a reference solution, if known
};

/// Per-iteration record of a solve run. Rows are in increasing k; when
/// `thinned` is set only every stride-th iterate (plus the final one) was
/// kept and consecutive rows are no longer adjacent iterates.
struct SolverTrace {
  std::vector<TraceRow> rows;
  bool thinned = false;
  std::int64_t iterations = 0;  // index of the last iterate
  double min_gap = std::numeric_limits<double>::infinity();
  bool stopped_by_gap = false;
};

}  // namespace vifw
