#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vifw/config.hpp"
#include "vifw/feasible_set.hpp"
#include "vifw/operators.hpp"
#include "vifw/oracle.hpp"
#include "vifw/schedule.hpp"
#include "vifw/types.hpp"

namespace vifw {

enum class RunMode { Solve, Dynamics, Oracle, Compare };

std::string to_string(RunMode mode);

/// A fully resolved experiment: sets, operator, schedule and run parameters
/// wired together with dimensions checked and the start point materialized.
struct ExperimentConfig {
  ExperimentConfig(FeasibleSet set_in, Operator op_in, StepSchedule schedule_in)
      : set(std::move(set_in)), op(std::move(op_in)), schedule(std::move(schedule_in)) {}

  std::string name = "experiment";
  FeasibleSet set;
  Operator op;
  StepSchedule schedule;
  TieRule tie_rule = TieRule::LexicographicMin;
  Vector x0;
  std::int64_t max_iter = 1000;
  double gap_tol = 0.0;
  std::uint64_t seed = 0;
  bool gauss_seidel = false;
  RunMode mode = RunMode::Solve;

  std::string trace_path;    // empty: no trace artifact
  std::string summary_path;  // empty: summary only returned, not written

  // mode == Dynamics
  double h = 1e-3;
  double t_end = 8.0;

  // mode == Oracle
  ExtragradientOptions oracle_options;

  // mode == Compare (falls back to `schedule` alone when empty)
  std::vector<StepSchedule> compare_schedules;
};

/// Parses the JSON experiment document. Field errors are reported as
/// ConfigError with the JSON path of the offending field. `x0` may be an
/// explicit array, "centroid", or "vertex:<i>".
ExperimentConfig parse_experiment(const Json& j);
ExperimentConfig load_experiment(const std::string& path);

/// Runs the experiment, writes the configured artifacts and returns the
/// summary document (also written to summary_path when set).
Json run_experiment(const ExperimentConfig& config);

}  // namespace vifw
