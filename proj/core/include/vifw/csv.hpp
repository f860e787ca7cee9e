#pragma once

#include <ostream>
#include <string>

#include "vifw/dynamics.hpp"
#include "vifw/trace.hpp"

namespace vifw {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double value);

/// Trace CSV: header `k,tau,gamma,gap,dist,x0..x{n-1},s0..s{n-1}`; the dist
/// cell is empty when no reference solution was supplied.
void write_trace_csv(std::ostream& out, const SolverTrace& trace);
void write_trace_csv_file(const std::string& path, const SolverTrace& trace);

/// Trajectory CSV: same layout with the s columns omitted, the gamma column
/// fixed to the integration step and the gap recomputed at each breakpoint.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const FeasibleSet& set,
                          const Operator& op, TieRule rule);
void write_trajectory_csv_file(const std::string& path, const Trajectory& trajectory,
                               const FeasibleSet& set, const Operator& op, TieRule rule);

}  // namespace vifw
