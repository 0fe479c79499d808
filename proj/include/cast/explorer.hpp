#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cast/objective.hpp"
#include "cast/rng.hpp"
#include "cast/swarm.hpp"

namespace cast {

// Proposal density for the candidate move x + eta(T) * xi.
// Cauchy: eta(T) = 1 with a scale-T Lorentzian; the fat tails allow large
// jumps at warm temperatures. Gaussian: eta(T) = sqrt(2T) with unit normal.
enum class ProposalKind { Cauchy, Gaussian };

ProposalKind proposal_from_string(std::string_view name);
std::string_view to_string(ProposalKind kind);

void propose_fill(std::span<const double> x, double temperature,
                  ProposalKind kind, RngStream& rng, std::span<double> out);
std::vector<double> propose(std::span<const double> x, double temperature,
                            ProposalKind kind, RngStream& rng);

// Metropolis acceptance: 1 if the candidate improves, else
// exp(-(f_candidate - f_current)/T). At T = 0 only strict improvement
// is accepted.
double accept_probability(double f_current, double f_candidate,
                          double temperature);

// One fixed-temperature Metropolis sweep over all particles. Rejected
// particles are left bitwise untouched; temperatures are never modified here.
void explore_step(SwarmState& state, const ObjectiveSpec& spec,
                  ProposalKind kind, RngStream& rng);

}  // namespace cast
