#pragma once

#include <string_view>

#include "cast/swarm.hpp"

namespace cast {

// Prescribed cooling schedule for the classic multi-particle SA baseline:
// T^n = theta^n * T0 with theta^n = 1/ln(n+e) (logarithmic), alpha^n
// (geometric), or 1 (fixed).
struct Schedule {
  enum class Kind { Logarithmic, Geometric, Fixed };

  Kind kind = Kind::Logarithmic;
  double t0 = 0.05;
  double alpha = 0.999;  // geometric only

  void validate() const;
};

double schedule_temperature(const Schedule& s, long n);

// Broadcasts schedule_temperature(s, n) to every particle; positions and
// cached values are untouched.
void apply_schedule(SwarmState& state, const Schedule& s, long n);

}  // namespace cast
