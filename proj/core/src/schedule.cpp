#include "vifw/schedule.hpp"

#include <cmath>
#include <sstream>

namespace vifw {

StepSchedule StepSchedule::harmonic() {
  StepSchedule s;
  s.kind_ = Kind::Harmonic;
  return s;
}

StepSchedule StepSchedule::power_law(double a, double c) {
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("power_law: a must be in (0, 1]");
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("power_law: c must be > 0");
  StepSchedule s;
  s.kind_ = Kind::PowerLaw;
  s.a_ = a;
  s.c_ = c;
  return s;
}

StepSchedule StepSchedule::explicit_list(std::vector<double> gammas) {
  if (gammas.empty()) throw std::invalid_argument("explicit schedule: list must be nonempty");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double g = gammas[i];
    if (!(g > 0.0 && g <= 1.0)) {
      throw std::invalid_argument("explicit schedule: gamma_" + std::to_string(i + 1) +
                                  " outside (0, 1]");
    }
  }
  StepSchedule s;
  s.kind_ = Kind::Explicit;
  s.gammas_ = std::move(gammas);
  return s;
}

double StepSchedule::step(std::int64_t k) const {
  if (k < 1) throw std::out_of_range("step: k must be >= 1");
  double g = 0.0;
  switch (kind_) {
    case Kind::Harmonic:
      g = 1.0 / static_cast<double>(k);
      break;
    case Kind::PowerLaw:
      g = std::min(1.0, c_ * std::pow(static_cast<double>(k), -a_));
      break;
    case Kind::Explicit:
      if (static_cast<std::size_t>(k) > gammas_.size())
        throw std::out_of_range("step: k beyond explicit schedule horizon");
      g = gammas_[static_cast<std::size_t>(k - 1)];
      break;
  }
  if (!(g > 0.0 && g <= 1.0)) throw std::logic_error("step: gamma_k outside (0, 1]");
  return g;
}

std::string StepSchedule::label() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Harmonic:
      out << "harmonic";
      break;
    case Kind::PowerLaw:
      out << "power_law_a" << a_ << "_c" << c_;
      break;
    case Kind::Explicit:
      out << "explicit_" << gammas_.size();
      break;
  }
  return out.str();
}

}  // namespace vifw
