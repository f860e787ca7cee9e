#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vifw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Deterministic selection rule for linear minimization oracles whose
/// minimizer set contains more than one vertex.
///
/// LexicographicMin resolves ties toward the canonical first vertex for
/// simplices and boxes; on vertex-list polytopes it picks the minimizing
/// vertex that is smallest in coordinate-lexicographic order, so the result
/// does not depend on the order the vertices were supplied in.
/// FirstVertex always picks the lowest index in the canonical enumeration.
enum class TieRule {
  LexicographicMin,
  FirstVertex,
};

inline std::string to_string(TieRule rule) {
  switch (rule) {
    case TieRule::LexicographicMin: return "lexicographic_min";
    case TieRule::FirstVertex: return "first_vertex";
  }
  throw std::logic_error("unknown TieRule");
}

}  // namespace vifw
