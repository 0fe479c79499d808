#include "cast/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cast/analysis.hpp"
#include "cast/parallel.hpp"

namespace cast {

double RunConfig::t_bar() const {
  return is_cast() ? cast_params().t_bar : schedule().t0;
}

void RunConfig::validate() const {
  if (!objective.eval_scaled) throw std::invalid_argument("objective not set");
  if (objective.dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (record.stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (record.hist_bins < 0) throw std::invalid_argument("hist_bins must be >= 0");
  if (!(basin_shrink > 0.0 && basin_shrink <= 1.0))
    throw std::invalid_argument("shrink must be in (0,1]");
  if (is_cast()) {
    if (n_particles < 2)
      throw std::invalid_argument("CAST mode needs at least 2 particles");
    cast_params().validate();
  } else {
    if (n_particles < 1)
      throw std::invalid_argument("need at least 1 particle");
    schedule().validate();
  }
}

SwarmState init_state(const RunConfig& config, RngStream& rng) {
  config.validate();
  SwarmState state;
  state.n_particles = config.n_particles;
  state.dim = config.objective.dim;
  state.step = 0;

  const std::size_t n = static_cast<std::size_t>(config.n_particles);
  state.positions.resize(n * config.objective.dim);
  for (double& p : state.positions) p = uniform_symmetric(1.0, rng);

  state.temperatures.resize(n);
  if (config.is_cast()) {
    const auto& params = config.cast_params();
    const double lo = params.temp_low();
    const double hi = params.temp_high();
    for (double& t : state.temperatures) t = lo + rng.uniform01() * (hi - lo);
  } else {
    const double t0 = schedule_temperature(config.schedule(), 0);
    for (double& t : state.temperatures) t = t0;
  }

  state.cached_values.resize(n);
  for (int i = 0; i < config.n_particles; ++i)
    state.cached_values[i] = eval(config.objective, state.position(i));
  return state;
}

namespace {

StepRecord make_record(const SwarmState& state, const RunConfig& config) {
  StepRecord rec;
  rec.step = state.step;

  const auto best = best_particle(state);
  rec.best_index = best.index;
  rec.best_value = best.value;
  rec.best_temperature = best.temperature;
  rec.best_mse = mse(best.position, config.objective.global_min);
  double inf_dist = 0.0;
  for (std::size_t j = 0; j < best.position.size(); ++j)
    inf_dist = std::max(inf_dist,
                        std::abs(best.position[j] - config.objective.global_min[j]));
  rec.best_inf_dist = inf_dist;

  if (auto avg = admissible_average(state))
    rec.avg_mse = mse(*avg, config.objective.global_min);
  else
    rec.avg_mse = std::numeric_limits<double>::quiet_NaN();

  const auto n = static_cast<double>(state.n_particles);
  double sum = 0.0, sum_sq = 0.0, sum_log = 0.0;
  for (double t : state.temperatures) {
    sum += t;
    sum_sq += t * t;
    sum_log += std::log(t + 1e-30);  // tolerate exact zeros
  }
  rec.m1 = sum / n;
  rec.m2 = sum_sq / n;
  rec.temp_variance = std::max(0.0, rec.m2 - rec.m1 * rec.m1);
  rec.geo_mean_temp = std::exp(sum_log / n);

  if (config.record.hist_bins > 0) {
    const int bins = config.record.hist_bins;
    rec.histogram.assign(static_cast<std::size_t>(bins), 0);
    const double range = 2.0 * config.t_bar();
    for (double t : state.temperatures) {
      auto b = static_cast<long>(t / range * bins);
      if (b >= bins) b = bins - 1;  // clip overflow into the top bin
      if (b < 0) b = 0;
      ++rec.histogram[static_cast<std::size_t>(b)];
    }
  }
  return rec;
}

}  // namespace

RunTrace run(const RunConfig& config, RngStream& rng) {
  SwarmState state = init_state(config, rng);

  RunTrace trace;
  trace.n_steps = config.n_steps;
  trace.stride = config.record.stride;
  trace.initial = make_record(state, config);

  const double basin_threshold =
      config.basin_shrink * config.objective.basin_radius_rescaled;

  for (long n = 1; n <= config.n_steps; ++n) {
    explore_step(state, config.objective, config.proposal, rng);
    if (config.is_cast()) {
      exchange_step(state, config.cast_params(), rng);
    } else {
      apply_schedule(state, config.schedule(), n);
    }
    state.step = n;
    if ((n - 1) % config.record.stride == 0) {
      trace.records.push_back(make_record(state, config));
      if (config.stop_on_basin &&
          trace.records.back().best_inf_dist < basin_threshold) {
        break;
      }
    }
  }
  trace.final_state = std::move(state);
  return trace;
}

std::vector<RunTrace> run_batch(const RunConfig& config, int n_runs,
                                std::uint64_t master_seed, int jobs) {
  if (n_runs < 1) throw std::invalid_argument("run_batch: n_runs must be >= 1");
  config.validate();
  std::vector<RunTrace> traces(static_cast<std::size_t>(n_runs));
  parallel_for(static_cast<std::size_t>(n_runs), jobs, [&](std::size_t i) {
    RngStream stream = derive_stream(master_seed, "run", i);
    traces[i] = run(config, stream);
  });
  return traces;
}

}  // namespace cast
