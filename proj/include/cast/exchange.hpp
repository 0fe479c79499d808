#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cast/rng.hpp"
#include "cast/swarm.hpp"

namespace cast {

// The CAST hyperparameters. lambda and mu set the alignment strengths of the
// binary temperature interaction, kappa scales the multiplicative interaction
// noise as a fraction of the positivity bound 1-lambda, gamma sets the
// expected number of interactions per particle per step, and t_var controls
// the initial temperature spread around the base temperature t_bar.
struct CastParams {
  double lambda = 0.7;
  double mu = 0.2;
  double kappa = 0.03;
  double gamma = 1.0;
  double t_var = 0.02;
  double t_bar = 0.05;
  // By default the noise term applies whether or not an indicator fired;
  // setting noise_gated suppresses it on no-interaction pairs.
  bool noise_gated = false;

  double noise_support() const { return kappa * (1.0 - lambda); }
  double temp_high() const { return 2.0 * t_bar - t_var; }  // T_h' = 2*T_bar - T_var
  double temp_low() const { return t_var; }                 // T_l' = T_var

  // Throws std::invalid_argument on violation. mu <= lambda and kappa <= 1
  // together guarantee nonnegative post-interaction temperatures; mu < lambda
  // is additionally required for the mean temperature to decay.
  void validate() const;
};

// Interaction indicator: 1 iff the first particle is strictly better
// positioned AND strictly hotter than its partner.
inline bool chi(double f_x, double f_xstar, double t, double t_star) {
  return f_x < f_xstar && t_star < t;
}

// One binary temperature interaction. The noise intensity is each particle's
// own pre-interaction temperature; xi, xi* are independent uniforms on
// [-a, a] with a = kappa*(1-lambda). Outputs are clamped at zero; a clamp
// beyond rounding magnitude (1e-12 * t_bar) signals invalid parameters and
// throws std::logic_error.
std::pair<double, double> interact_pair(double t, double t_star, double f_x,
                                        double f_xstar,
                                        const CastParams& params,
                                        RngStream& rng);

using PairRound = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Nanbu-Babovsky pair selection for interaction strength gamma = K + r:
// K full rounds (each a uniform random perfect matching of floor(N/2) pairs)
// plus one partial round of Iround(r*N/2) disjoint pairs from a fresh
// shuffle. Within a round no particle appears twice. Requires N >= 2.
std::vector<PairRound> select_pairs(int n, double gamma, RngStream& rng);

// Applies interact_pair to every selected pair, round by round; later rounds
// see temperatures already updated by earlier rounds. Unselected particles
// keep their temperature. Positions and cached values are untouched.
void exchange_step(SwarmState& state, const CastParams& params, RngStream& rng);

}  // namespace cast
