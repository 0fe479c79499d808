#include "cast/cooling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cast {

void Schedule::validate() const {
  if (!(t0 > 0.0)) throw std::invalid_argument("schedule t0 must be positive");
  if (kind == Kind::Geometric && !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("geometric alpha must be in (0,1)");
}

double schedule_temperature(const Schedule& s, long n) {
  if (n < 0) throw std::invalid_argument("schedule step index must be >= 0");
  switch (s.kind) {
    case Schedule::Kind::Logarithmic:
      return s.t0 / std::log(static_cast<double>(n) + std::numbers::e);
    case Schedule::Kind::Geometric:
      return s.t0 * std::pow(s.alpha, static_cast<double>(n));
    case Schedule::Kind::Fixed:
      return s.t0;
  }
  throw std::logic_error("unreachable schedule kind");
}

void apply_schedule(SwarmState& state, const Schedule& s, long n) {
  const double t = schedule_temperature(s, n);
  for (double& ti : state.temperatures) ti = t;
}

}  // namespace cast
