#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vifw/feasible_set.hpp"
#include "vifw/operators.hpp"
#include "vifw/types.hpp"

namespace vifw {

/// Ground-truth solution of the variational inequality on one instance,
/// produced by a method whose convergence mechanism (projections, fixed
/// step) is disjoint from the main solver's (LMO, vanishing steps).
struct OracleResult {
  Vector x_star;
  double residual = 0.0;  // Frank-Wolfe gap at x_star
  std::int64_t iterations = 0;
  std::string method;     // "extragradient" or "extragradient_ergodic"
};

struct ExtragradientOptions {
  /// Step size; defaults to 0.5 / ||J||_2 estimated by power iteration.
  std::optional<double> eta;
  double tol = 1e-8;
  std::int64_t max_iter = 2000000;
};

/// Projected extragradient iteration y = P(x - eta F(x)), x+ = P(x - eta F(y))
/// run until the Frank-Wolfe gap at x (or, for merely monotone operators, at
/// the running average of the y iterates) drops to tol. Throws when max_iter
/// is exhausted first.
OracleResult extragradient(const FeasibleSet& set, const Operator& op, const Vector& x0,
                           const ExtragradientOptions& options = {});

/// Exact gap max_{s in C} <F(x), x - s> by full enumeration of the canonical
/// vertex set (the maximum of a linear functional is attained at a vertex).
/// Rejects instances with more than 10^6 vertices.
double brute_force_gap(const FeasibleSet& set, const Operator& op, const Vector& x);

/// Runs extragradient from `trials` random starts of a strongly monotone
/// instance and reports the maximum pairwise distance among the returned
/// solutions; passes when it is at most 10 * tol.
struct UniquenessReport {
  double max_pairwise_distance = 0.0;
  double tol = 0.0;
  int trials = 0;
  bool passed = false;
};

UniquenessReport uniqueness_check(const FeasibleSet& set, const Operator& op, int trials,
                                  std::uint64_t rng_seed, double tol = 1e-8);

/// File-backed oracle cache, one JSON file per instance keyed by a hash of
/// the canonical instance serialization. The directory comes from the
/// VIFW_CACHE_DIR environment variable (default ".vifw_cache").
std::string oracle_cache_dir();
std::optional<OracleResult> oracle_cache_load(const FeasibleSet& set, const Operator& op);
std::string oracle_cache_store(const FeasibleSet& set, const Operator& op,
                               const OracleResult& result);

}  // namespace vifw
