#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "cast/cooling.hpp"
#include "cast/exchange.hpp"
#include "cast/explorer.hpp"
#include "cast/objective.hpp"
#include "cast/rng.hpp"
#include "cast/swarm.hpp"

namespace cast {

struct RecordOptions {
  int stride = 1;      // record every stride-th step
  int hist_bins = 50;  // 0 disables histograms; range is [0, 2*t_bar]
};

// One experiment: an objective, a swarm size and step budget, a proposal
// kind, and either the CAST interaction dynamic or a baseline SA schedule.
struct RunConfig {
  ObjectiveSpec objective;
  int n_particles = 100;
  long n_steps = 100;
  ProposalKind proposal = ProposalKind::Cauchy;
  std::variant<CastParams, Schedule> mode = CastParams{};
  RecordOptions record;
  // Sweeps stop a run at the first recorded half-basin entry; the step budget
  // is then a cap rather than a fixed length.
  bool stop_on_basin = false;
  double basin_shrink = 0.5;

  bool is_cast() const { return std::holds_alternative<CastParams>(mode); }
  const CastParams& cast_params() const { return std::get<CastParams>(mode); }
  const Schedule& schedule() const { return std::get<Schedule>(mode); }
  // Base temperature: t_bar in CAST mode, the schedule's T0 otherwise.
  double t_bar() const;
  void validate() const;
};

struct StepRecord {
  long step = 0;
  int best_index = 0;
  double best_value = 0.0;
  double best_temperature = 0.0;
  double best_mse = 0.0;
  double best_inf_dist = 0.0;  // ||x_best - x*||_inf, for basin tests
  double avg_mse = 0.0;        // NaN when no particle is inside [-1,1]^d
  double m1 = 0.0;             // mean temperature
  double m2 = 0.0;             // mean squared temperature
  double temp_variance = 0.0;
  double geo_mean_temp = 0.0;
  std::vector<std::uint32_t> histogram;  // empty when hist_bins == 0
};

struct RunTrace {
  StepRecord initial;               // state after init, before step 1
  std::vector<StepRecord> records;  // ceil(steps_run / stride) entries
  SwarmState final_state;
  long n_steps = 0;  // configured budget
  int stride = 1;
};

// Positions i.i.d. uniform on [-1,1]^d. CAST mode draws temperatures
// uniformly on [T_var, 2*T_bar - T_var]; baseline mode starts every particle
// at the schedule's step-0 temperature.
SwarmState init_state(const RunConfig& config, RngStream& rng);

// Algorithm 1: per step, an exploration sweep followed by the temperature
// interaction (CAST) or the schedule broadcast (baseline).
RunTrace run(const RunConfig& config, RngStream& rng);

// n_runs independent replays with streams derived as (master_seed, "run", i).
// Results are identical whatever the worker count.
std::vector<RunTrace> run_batch(const RunConfig& config, int n_runs,
                                std::uint64_t master_seed, int jobs = 1);

}  // namespace cast
