// Statistical checks on the temperature moment dynamics. Ensemble sizes are
// desk-scale; the full-budget versions run in the acceptance suite.
#include <doctest.h>

#include <cmath>
#include <vector>

#include "cast/analysis.hpp"
#include "cast/engine.hpp"

using namespace cast;

namespace {

RunConfig moment_config(double lambda, double mu, double kappa, int particles) {
  RunConfig config;
  config.objective = make_objective("ackley", 1);
  config.n_particles = particles;
  config.n_steps = 750;
  CastParams params;
  params.lambda = lambda;
  params.mu = mu;
  params.kappa = kappa;
  params.gamma = 1.0;
  params.t_var = 0.02;
  params.t_bar = 0.05;
  config.mode = params;
  config.record.hist_bins = 0;
  return config;
}

std::vector<double> ensemble_mean_m2(const std::vector<RunTrace>& traces) {
  std::vector<double> m2(traces.front().records.size(), 0.0);
  for (const auto& trace : traces)
    for (std::size_t k = 0; k < m2.size(); ++k)
      m2[k] += trace.records[k].m2;
  for (double& v : m2) v /= static_cast<double>(traces.size());
  return m2;
}

double fitted_slope(const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) {
    const double x = static_cast<double>(k);
    sx += x;
    sy += y[k];
    sxx += x * x;
    sxy += x * y[k];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("noise-free exchange makes M2 non-increasing pathwise" *
          doctest::timeout(300)) {
  const auto config = moment_config(0.7, 0.2, 0.0, 500);
  const auto traces = run_batch(config, 5, 31);
  for (const auto& trace : traces) {
    double previous = trace.initial.m2;
    for (const auto& rec : trace.records) {
      CHECK(rec.m2 <= previous + 1e-15);
      previous = rec.m2;
    }
  }
}

TEST_CASE("small multiplicative noise still trends M2 downward" *
          doctest::timeout(300)) {
  const auto config = moment_config(0.7, 0.2, 0.02, 500);
  const auto traces = run_batch(config, 20, 32);
  const auto m2 = ensemble_mean_m2(traces);
  CHECK(fitted_slope(m2) < 0.0);
  CHECK(m2.back() < m2.front());
}

TEST_CASE("mean temperature decays when mu < lambda" * doctest::timeout(300)) {
  const auto config = moment_config(0.7, 0.2, 0.03, 500);
  const auto traces = run_batch(config, 20, 33);
  std::vector<double> m1(traces.front().records.size(), 0.0);
  for (const auto& trace : traces)
    for (std::size_t k = 0; k < m1.size(); ++k)
      m1[k] += trace.records[k].m1 / static_cast<double>(traces.size());
  CHECK(fitted_slope(m1) < 0.0);
  CHECK(m1.back() < 0.5 * m1.front());
}
