#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cast/analysis.hpp"
#include "cast/explorer.hpp"

namespace cast {

// One swept parameter: a scalar, an explicit value list, or an endpoint-
// inclusive linear/logarithmic range matching the [a,b]_{type=n} notation.
struct AxisSpec {
  enum class Spacing { Fixed, List, Lin, Log };

  Spacing spacing = Spacing::Fixed;
  double a = 0.0, b = 0.0;
  int count = 1;               // Lin/Log only
  std::vector<double> values;  // List only

  static AxisSpec fixed(double v) { return {Spacing::Fixed, v, v, 1, {}}; }
  static AxisSpec list(std::vector<double> v) {
    return {Spacing::List, 0, 0, 1, std::move(v)};
  }
  static AxisSpec lin(double a, double b, int count) {
    return {Spacing::Lin, a, b, count, {}};
  }
  static AxisSpec log(double a, double b, int count) {
    return {Spacing::Log, a, b, count, {}};
  }

  std::vector<double> expand() const;  // throws on invalid specs
};

// Full-factorial hyperparameter search over the five CAST parameters. Cells
// iterate with mu outermost and t_var innermost; runs inside a cell derive
// from (master_seed, "sweep", cell ordinal).
struct SweepPlan {
  std::string objective = "ackley";
  int dim = 5;
  int n_particles = 500;
  long max_steps = 1000;
  AxisSpec mu = AxisSpec::fixed(0.2);
  AxisSpec lambda = AxisSpec::fixed(0.7);
  AxisSpec kappa = AxisSpec::fixed(0.03);
  AxisSpec gamma = AxisSpec::fixed(1.0);
  AxisSpec t_var = AxisSpec::fixed(0.02);
  double t_bar = 0.05;
  ProposalKind proposal = ProposalKind::Cauchy;
  bool noise_gated = false;
  int runs_per_cell = 20;
  double shrink = 0.5;
  std::uint64_t master_seed = 0;

  void validate() const;
};

// Cartesian product of the five axes; tuples with mu > lambda are retained
// but marked invalid.
std::vector<SweepCell> expand_grid(const SweepPlan& plan);

// Runs every valid cell (runs_per_cell repeats capped at max_steps each),
// fills success_rate / mean_steps, and attaches the normalized-weighted-steps
// metric when at least one cell succeeded.
std::vector<SweepCell> run_sweep(
    const SweepPlan& plan, int jobs = 1,
    const std::function<void(std::size_t, std::size_t)>& progress = {});

}  // namespace cast
