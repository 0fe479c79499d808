#include "cast/sweep.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "cast/engine.hpp"
#include "cast/parallel.hpp"

namespace cast {

std::vector<double> AxisSpec::expand() const {
  switch (spacing) {
    case Spacing::Fixed:
      return {a};
    case Spacing::List:
      if (values.empty()) throw std::invalid_argument("empty axis value list");
      return values;
    case Spacing::Lin: {
      if (count < 1) throw std::invalid_argument("axis count must be >= 1");
      if (count == 1) {
        if (a != b) throw std::invalid_argument("count must be >= 2 when a != b");
        return {a};
      }
      std::vector<double> out(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i)
        out[i] = a + (b - a) * static_cast<double>(i) /
                         static_cast<double>(count - 1);
      out.back() = b;  // endpoint-inclusive
      return out;
    }
    case Spacing::Log: {
      if (count < 1) throw std::invalid_argument("axis count must be >= 1");
      if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("log spacing needs positive endpoints");
      if (count == 1) {
        if (a != b) throw std::invalid_argument("count must be >= 2 when a != b");
        return {a};
      }
      std::vector<double> out(static_cast<std::size_t>(count));
      const double ratio = std::log(b / a);
      for (int i = 0; i < count; ++i)
        out[i] = a * std::exp(ratio * static_cast<double>(i) /
                              static_cast<double>(count - 1));
      out.back() = b;
      return out;
    }
  }
  throw std::logic_error("unreachable axis spacing");
}

void SweepPlan::validate() const {
  if (dim < 1) throw std::invalid_argument("sweep: dim must be >= 1");
  if (n_particles < 2) throw std::invalid_argument("sweep: need >= 2 particles");
  if (max_steps < 1) throw std::invalid_argument("sweep: max_steps must be >= 1");
  if (runs_per_cell < 1)
    throw std::invalid_argument("sweep: runs_per_cell must be >= 1");
  if (!(t_bar > 0.0)) throw std::invalid_argument("sweep: t_bar must be positive");
  // Axis errors (log spacing over a nonpositive range, empty lists) surface
  // here rather than mid-sweep.
  mu.expand();
  lambda.expand();
  kappa.expand();
  gamma.expand();
  t_var.expand();
}

std::vector<SweepCell> expand_grid(const SweepPlan& plan) {
  plan.validate();
  const auto mus = plan.mu.expand();
  const auto lambdas = plan.lambda.expand();
  const auto kappas = plan.kappa.expand();
  const auto gammas = plan.gamma.expand();
  const auto t_vars = plan.t_var.expand();

  std::vector<SweepCell> cells;
  cells.reserve(mus.size() * lambdas.size() * kappas.size() * gammas.size() *
                t_vars.size());
  std::uint64_t ordinal = 0;
  for (double mu : mus)
    for (double lambda : lambdas)
      for (double kappa : kappas)
        for (double gamma : gammas)
          for (double t_var : t_vars) {
            SweepCell cell;
            cell.mu = mu;
            cell.lambda = lambda;
            cell.kappa = kappa;
            cell.gamma = gamma;
            cell.t_var = t_var;
            cell.ordinal = ordinal++;
            cell.valid = mu <= lambda;
            cells.push_back(cell);
          }
  return cells;
}

std::vector<SweepCell> run_sweep(
    const SweepPlan& plan, int jobs,
    const std::function<void(std::size_t, std::size_t)>& progress) {
  auto cells = expand_grid(plan);
  const ObjectiveSpec objective = make_objective(plan.objective, plan.dim);

  std::atomic<std::size_t> done{0};
  parallel_for(cells.size(), jobs, [&](std::size_t idx) {
    SweepCell& cell = cells[idx];
    if (cell.valid) {
      RunConfig config;
      config.objective = objective;
      config.n_particles = plan.n_particles;
      config.n_steps = plan.max_steps;
      config.proposal = plan.proposal;
      CastParams params;
      params.mu = cell.mu;
      params.lambda = cell.lambda;
      params.kappa = cell.kappa;
      params.gamma = cell.gamma;
      params.t_var = cell.t_var;
      params.t_bar = plan.t_bar;
      params.noise_gated = plan.noise_gated;
      config.mode = params;
      config.record.stride = 1;  // exact step counting
      config.record.hist_bins = 0;
      config.stop_on_basin = true;
      config.basin_shrink = plan.shrink;

      const std::uint64_t cell_seed =
          derive_seed(plan.master_seed, "sweep", cell.ordinal);
      const auto traces = run_batch(config, plan.runs_per_cell, cell_seed);

      long successes = 0;
      double step_sum = 0.0;
      for (const auto& trace : traces) {
        const auto [ok, steps] = success_and_steps(trace, objective, plan.shrink);
        if (ok) {
          ++successes;
          step_sum += static_cast<double>(*steps);
        }
      }
      cell.runs = plan.runs_per_cell;
      cell.success_rate =
          static_cast<double>(successes) / static_cast<double>(plan.runs_per_cell);
      if (successes > 0)
        cell.mean_steps = step_sum / static_cast<double>(successes);
    }
    if (progress) progress(done.fetch_add(1) + 1, cells.size());
  });

  bool any_success = false;
  for (const auto& cell : cells)
    if (cell.valid && cell.success_rate > 0.0) any_success = true;
  if (any_success) cells = normalized_weighted_steps(std::move(cells));
  return cells;
}

}  // namespace cast
