#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "vifw/feasible_set.hpp"
#include "vifw/operators.hpp"
#include "vifw/schedule.hpp"
#include "vifw/types.hpp"

namespace vifw {

/// Configuration error carrying the JSON path of the offending field,
/// e.g. "operator.A[1]".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

using Json = nlohmann::json;

// Feasible sets:
//   {"type":"simplex","n":3}
//   {"type":"box","lower":[...],"upper":[...]}
//   {"type":"vertices","points":[[...],...]}
//   {"type":"product","factors":[...]}
FeasibleSet parse_set(const Json& j, const std::string& field = "set");
Json set_to_json(const FeasibleSet& set);

// Operators:
//   {"type":"fictitious_play","A":[[...]]}
//   {"type":"affine","M":[[...]],"q":[...],"mu":optional}
//   {"type":"lp_saddle","A":[[...]],"b":[...],"c":[...]}
//   {"type":"saddle_quadratic","Qx":[[...]],"Qy":[[...]],"B":[[...]],"q":[...],"mu":optional}
Operator parse_operator(const Json& j, const std::string& field = "operator");
Json operator_to_json(const Operator& op);

// Schedules:
//   {"type":"harmonic"} | {"type":"power_law","a":0.7,"c":1.0}
//   {"type":"explicit","gammas":[...]}
StepSchedule parse_schedule(const Json& j, const std::string& field = "schedule");
Json schedule_to_json(const StepSchedule& schedule);

// "lexicographic_min" | "first_vertex"
TieRule parse_tie_rule(const Json& j, const std::string& field = "tie_rule");

Vector parse_vector(const Json& j, const std::string& field);
Matrix parse_matrix(const Json& j, const std::string& field);
Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);

/// FNV-1a 64-bit hash of a string; used for oracle cache file names.
std::uint64_t fnv1a64(const std::string& text);

/// Canonical identity string for a (set, operator) instance; equal instances
/// serialize identically.
std::string instance_key(const FeasibleSet& set, const Operator& op);

}  // namespace vifw
