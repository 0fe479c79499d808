#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cast/engine.hpp"
#include "cast/objective.hpp"
#include "cast/swarm.hpp"

namespace cast {

// Mean squared error to a reference point: (1/d) sum_j (y_j - x*_j)^2.
double mse(std::span<const double> y, std::span<const double> x_star);

struct BestParticle {
  int index = 0;
  std::vector<double> position;
  double temperature = 0.0;
  double value = 0.0;
};

// argmin over cached values; ties broken by lowest index.
BestParticle best_particle(const SwarmState& state);

// Mean of positions with ||X||_inf <= 1; nullopt when every particle has
// left the domain.
std::optional<std::vector<double>> admissible_average(const SwarmState& state);

struct RunSummary {
  bool success = false;
  std::optional<long> steps_to_basin;
  double final_best_mse = 0.0;
  double final_avg_mse = 0.0;  // NaN when admissible set empty at the end
};

// Success iff the best particle sits inside the shrink-scaled basin at any
// recorded step; steps is the first such recorded step index.
std::pair<bool, std::optional<long>> success_and_steps(
    const RunTrace& trace, const ObjectiveSpec& spec, double shrink = 0.5);

RunSummary summarize(const RunTrace& trace, const ObjectiveSpec& spec,
                     double shrink = 0.5);

enum class CurveKind { Best, Average };

// Per recorded step, the mean over runs of log10(MSE), with MSE floored at
// 1e-30. The Average variant skips runs whose admissible set is empty at a
// step (NaN if none remain). All traces must be recorded on the same grid.
std::vector<double> expected_log_mse(const std::vector<RunTrace>& traces,
                                     CurveKind kind);

// One cell of a hyperparameter sweep.
struct SweepCell {
  double mu = 0.0;
  double lambda = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double t_var = 0.0;
  std::uint64_t ordinal = 0;
  bool valid = true;  // false when mu > lambda; no runs are spent there
  int runs = 0;
  double success_rate = 0.0;
  std::optional<double> mean_steps;  // over successful runs
  std::optional<double> normalized_weighted_steps;
};

// For every valid cell with success_rate > 0, computes
// w = mean_steps / success_rate and min-max normalizes w to [0,1] across
// those cells (a single qualifying cell maps to 0). Zero-success and invalid
// cells keep an unset metric. Throws if no cell qualifies.
std::vector<SweepCell> normalized_weighted_steps(std::vector<SweepCell> cells);

// Arithmetic mean of the normalized-weighted-steps metric over the two axes
// other than `axis` ("t_var" | "kappa" | "gamma"); cells without the metric
// are excluded with count adjustment. Returns (axis value, mean) sorted by
// axis value; a slice with no defined cells yields NaN.
std::vector<std::pair<double, double>> marginalize(
    const std::vector<SweepCell>& cells, std::string_view axis);

}  // namespace cast
