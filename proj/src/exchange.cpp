#include "cast/exchange.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cast {

void CastParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must be in [0,1]");
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("mu must be in [0,1]");
  if (mu > lambda)
    throw std::invalid_argument("mu must not exceed lambda");
  if (!(kappa >= 0.0 && kappa <= 1.0))
    throw std::invalid_argument("kappa must be in [0,1]");
  if (!(gamma > 0.0))
    throw std::invalid_argument("gamma must be positive");
  if (!(t_bar > 0.0))
    throw std::invalid_argument("t_bar must be positive");
  if (!(t_var > 0.0 && t_var < t_bar))
    throw std::invalid_argument("t_var must satisfy 0 < t_var < t_bar");
}

namespace {

double clamp_nonnegative(double t, double t_bar) {
  if (t >= 0.0) return t;
  if (-t >= 1e-12 * t_bar)
    throw std::logic_error(
        "interact_pair: temperature went negative beyond rounding; "
        "parameters violate the positivity bound");
  return 0.0;
}

}  // namespace

std::pair<double, double> interact_pair(double t, double t_star, double f_x,
                                        double f_xstar,
                                        const CastParams& params,
                                        RngStream& rng) {
  const double a = params.noise_support();
  const double xi = uniform_symmetric(a, rng);
  const double xi_star = uniform_symmetric(a, rng);

  const double chi_first = chi(f_x, f_xstar, t, t_star) ? 1.0 : 0.0;
  const double chi_second = chi(f_xstar, f_x, t_star, t) ? 1.0 : 0.0;
  const double gate =
      params.noise_gated ? (chi_first != 0.0 || chi_second != 0.0 ? 1.0 : 0.0)
                         : 1.0;

  double t_new = t - params.lambda * (t - t_star) * chi_first -
                 params.mu * (t - t_star) * chi_second + gate * t * xi;
  double t_star_new = t_star - params.lambda * (t_star - t) * chi_second -
                      params.mu * (t_star - t) * chi_first +
                      gate * t_star * xi_star;

  return {clamp_nonnegative(t_new, params.t_bar),
          clamp_nonnegative(t_star_new, params.t_bar)};
}

std::vector<PairRound> select_pairs(int n, double gamma, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("select_pairs: need at least 2 particles");
  if (!(gamma > 0.0)) throw std::invalid_argument("select_pairs: gamma must be > 0");

  const auto full_rounds = static_cast<std::uint64_t>(std::floor(gamma));
  const double remainder = gamma - std::floor(gamma);

  std::vector<std::uint32_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0u);
  auto shuffle = [&] {
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.bounded(i + 1));
      std::swap(order[i], order[j]);
    }
  };

  std::vector<PairRound> rounds;
  const std::size_t max_pairs = static_cast<std::size_t>(n) / 2;
  for (std::uint64_t k = 0; k < full_rounds; ++k) {
    shuffle();
    PairRound round;
    round.reserve(max_pairs);
    for (std::size_t p = 0; p < max_pairs; ++p)
      round.emplace_back(order[2 * p], order[2 * p + 1]);
    rounds.push_back(std::move(round));
  }
  if (remainder > 0.0) {
    std::uint64_t n_pairs = iround(remainder * n / 2.0, rng);
    if (n_pairs > max_pairs) n_pairs = max_pairs;  // odd-N rounding guard
    shuffle();
    PairRound round;
    round.reserve(n_pairs);
    for (std::uint64_t p = 0; p < n_pairs; ++p)
      round.emplace_back(order[2 * p], order[2 * p + 1]);
    rounds.push_back(std::move(round));
  }
  return rounds;
}

void exchange_step(SwarmState& state, const CastParams& params,
                   RngStream& rng) {
  const auto rounds = select_pairs(state.n_particles, params.gamma, rng);
  for (const auto& round : rounds) {
    for (const auto& [i, j] : round) {
      const auto [ti, tj] =
          interact_pair(state.temperatures[i], state.temperatures[j],
                        state.cached_values[i], state.cached_values[j], params,
                        rng);
      state.temperatures[i] = ti;
      state.temperatures[j] = tj;
    }
  }
}

}  // namespace cast
