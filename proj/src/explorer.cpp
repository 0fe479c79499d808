#include "cast/explorer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cast {

ProposalKind proposal_from_string(std::string_view name) {
  if (name == "cauchy") return ProposalKind::Cauchy;
  if (name == "gaussian") return ProposalKind::Gaussian;
  throw std::invalid_argument("unknown proposal '" + std::string(name) +
                              "' (expected cauchy|gaussian)");
}

std::string_view to_string(ProposalKind kind) {
  return kind == ProposalKind::Cauchy ? "cauchy" : "gaussian";
}

void propose_fill(std::span<const double> x, double temperature,
                  ProposalKind kind, RngStream& rng, std::span<double> out) {
  if (kind == ProposalKind::Cauchy) {
    cauchy_fill(temperature, out, rng);
  } else {
    gaussian_fill(temperature, out, rng);
  }
  for (std::size_t j = 0; j < x.size(); ++j) out[j] += x[j];
}

std::vector<double> propose(std::span<const double> x, double temperature,
                            ProposalKind kind, RngStream& rng) {
  std::vector<double> out(x.size());
  propose_fill(x, temperature, kind, rng, out);
  return out;
}

double accept_probability(double f_current, double f_candidate,
                          double temperature) {
  if (f_candidate < f_current) return 1.0;
  if (temperature <= 0.0) return 0.0;
  return std::exp(-(f_candidate - f_current) / temperature);
}

void explore_step(SwarmState& state, const ObjectiveSpec& spec,
                  ProposalKind kind, RngStream& rng) {
  std::vector<double> candidate(static_cast<std::size_t>(state.dim));
  for (int i = 0; i < state.n_particles; ++i) {
    const auto x = state.position(i);
    propose_fill(x, state.temperatures[i], kind, rng, candidate);
    double f_candidate;
    try {
      f_candidate = eval(spec, candidate);
    } catch (const std::exception& e) {
      throw std::runtime_error("objective evaluation failed for particle " +
                               std::to_string(i) + ": " + e.what());
    }
    const double p =
        accept_probability(state.cached_values[i], f_candidate,
                           state.temperatures[i]);
    // One uniform per particle regardless of p, so the stream layout does not
    // depend on the acceptance pattern.
    const double u = rng.uniform01();
    if (u < p) {
      auto xi = state.position(i);
      for (int j = 0; j < state.dim; ++j) xi[j] = candidate[j];
      state.cached_values[i] = f_candidate;
    }
  }
}

}  // namespace cast
