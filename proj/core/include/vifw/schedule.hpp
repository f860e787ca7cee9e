#pragma once

#include <string>
#include <vector>

#include "vifw/types.hpp"

namespace vifw {

/// Step-size sequence gamma_k with gamma_k in (0, 1], gamma_k -> 0 and
/// sum gamma_k = infinity. Harmonic and PowerLaw satisfy the hypotheses by
/// construction; Explicit schedules are validated entrywise on their finite
/// horizon only and carry a caveat flag.
class StepSchedule {
 public:
  enum class Kind { Harmonic, PowerLaw, Explicit };

  /// gamma_k = 1/k.
  static StepSchedule harmonic();
  /// gamma_k = min(1, c * k^-a), a in (0, 1], c > 0.
  static StepSchedule power_law(double a, double c);
  /// Explicit finite list, 1-indexed; every entry must lie in (0, 1].
  static StepSchedule explicit_list(std::vector<double> gammas);

  Kind kind() const { return kind_; }
  double exponent() const { return a_; }
  double coefficient() const { return c_; }
  const std::vector<double>& gammas() const { return gammas_; }

  /// gamma_k for k >= 1. Throws when k is out of range for Explicit.
  double step(std::int64_t k) const;

  /// True when the hypotheses (vanishing, nonsummable) hold by construction.
  bool nonsummable_by_construction() const { return kind_ != Kind::Explicit; }

  std::string label() const;

 private:
  StepSchedule() = default;
  Kind kind_ = Kind::Harmonic;
  double a_ = 1.0;
  double c_ = 1.0;
  std::vector<double> gammas_;
};

}  // namespace vifw
