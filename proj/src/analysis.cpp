#include "cast/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cast {

double mse(std::span<const double> y, std::span<const double> x_star) {
  if (y.size() != x_star.size())
    throw std::invalid_argument("mse: dimension mismatch");
  double sum = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double diff = y[j] - x_star[j];
    sum += diff * diff;
  }
  return sum / static_cast<double>(y.size());
}

BestParticle best_particle(const SwarmState& state) {
  if (state.n_particles < 1)
    throw std::invalid_argument("best_particle: empty swarm");
  int best = 0;
  for (int i = 1; i < state.n_particles; ++i)
    if (state.cached_values[i] < state.cached_values[best]) best = i;
  const auto pos = state.position(best);
  return {best,
          {pos.begin(), pos.end()},
          state.temperatures[best],
          state.cached_values[best]};
}

std::optional<std::vector<double>> admissible_average(const SwarmState& state) {
  std::vector<double> sum(static_cast<std::size_t>(state.dim), 0.0);
  long count = 0;
  for (int i = 0; i < state.n_particles; ++i) {
    const auto x = state.position(i);
    bool inside = true;
    for (double xj : x) {
      if (std::abs(xj) > 1.0) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    for (int j = 0; j < state.dim; ++j) sum[j] += x[j];
    ++count;
  }
  if (count == 0) return std::nullopt;
  for (double& s : sum) s /= static_cast<double>(count);
  return sum;
}

std::pair<bool, std::optional<long>> success_and_steps(
    const RunTrace& trace, const ObjectiveSpec& spec, double shrink) {
  if (!(shrink > 0.0 && shrink <= 1.0))
    throw std::invalid_argument("success_and_steps: shrink must be in (0,1]");
  const double threshold = shrink * spec.basin_radius_rescaled;
  for (const auto& rec : trace.records)
    if (rec.best_inf_dist < threshold) return {true, rec.step};
  return {false, std::nullopt};
}

RunSummary summarize(const RunTrace& trace, const ObjectiveSpec& spec,
                     double shrink) {
  RunSummary summary;
  std::tie(summary.success, summary.steps_to_basin) =
      success_and_steps(trace, spec, shrink);
  if (!trace.records.empty()) {
    summary.final_best_mse = trace.records.back().best_mse;
    summary.final_avg_mse = trace.records.back().avg_mse;
  }
  return summary;
}

std::vector<double> expected_log_mse(const std::vector<RunTrace>& traces,
                                     CurveKind kind) {
  if (traces.empty())
    throw std::invalid_argument("expected_log_mse: no traces");
  const std::size_t len = traces.front().records.size();
  for (const auto& trace : traces)
    if (trace.records.size() != len)
      throw std::invalid_argument("expected_log_mse: trace lengths differ");

  std::vector<double> curve(len);
  for (std::size_t k = 0; k < len; ++k) {
    double sum = 0.0;
    long count = 0;
    for (const auto& trace : traces) {
      const auto& rec = trace.records[k];
      const double value =
          kind == CurveKind::Best ? rec.best_mse : rec.avg_mse;
      if (std::isnan(value)) continue;  // empty admissible set this run
      sum += std::log10(std::max(value, 1e-30));
      ++count;
    }
    curve[k] = count > 0 ? sum / static_cast<double>(count)
                         : std::numeric_limits<double>::quiet_NaN();
  }
  return curve;
}

std::vector<SweepCell> normalized_weighted_steps(std::vector<SweepCell> cells) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  long qualifying = 0;
  for (auto& cell : cells) {
    cell.normalized_weighted_steps.reset();
    if (!cell.valid || cell.success_rate <= 0.0 || !cell.mean_steps) continue;
    const double w = *cell.mean_steps / cell.success_rate;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
    ++qualifying;
  }
  if (qualifying == 0)
    throw std::invalid_argument(
        "normalized_weighted_steps: every cell has zero success");
  const double span = hi - lo;
  for (auto& cell : cells) {
    if (!cell.valid || cell.success_rate <= 0.0 || !cell.mean_steps) continue;
    const double w = *cell.mean_steps / cell.success_rate;
    cell.normalized_weighted_steps = span > 0.0 ? (w - lo) / span : 0.0;
  }
  return cells;
}

std::vector<std::pair<double, double>> marginalize(
    const std::vector<SweepCell>& cells, std::string_view axis) {
  double SweepCell::* field = nullptr;
  if (axis == "t_var")
    field = &SweepCell::t_var;
  else if (axis == "kappa")
    field = &SweepCell::kappa;
  else if (axis == "gamma")
    field = &SweepCell::gamma;
  else
    throw std::invalid_argument("marginalize: unknown axis '" +
                                std::string(axis) + "'");

  std::map<double, std::pair<double, long>> slices;  // value -> (sum, count)
  for (const auto& cell : cells) {
    auto& slice = slices[cell.*field];
    if (cell.normalized_weighted_steps) {
      slice.first += *cell.normalized_weighted_steps;
      slice.second += 1;
    } else {
      slices[cell.*field];  // keep the slice present even if all-undefined
    }
  }
  std::vector<std::pair<double, double>> curve;
  curve.reserve(slices.size());
  for (const auto& [value, acc] : slices) {
    curve.emplace_back(value,
                       acc.second > 0
                           ? acc.first / static_cast<double>(acc.second)
                           : std::numeric_limits<double>::quiet_NaN());
  }
  return curve;
}

}  // namespace cast
