#include "cast/objective.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace cast {

namespace {

// Written so that F(0) = 0 exactly: the constant e is taken as exp(1.0) and
// cancels against exp(mean cos) at the minimizer, and the first exponential
// term is grouped as 20*(1 - exp(.)).
double ackley_scaled(std::span<const double> x, double s) {
  const double d = static_cast<double>(x.size());
  double sum_sq = 0.0;
  double sum_cos = 0.0;
  for (double xj : x) {
    const double p = s * xj;
    sum_sq += p * p;
    sum_cos += std::cos(2.0 * std::numbers::pi * p);
  }
  static const double kE = std::exp(1.0);
  return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sum_sq / d))) +
         (kE - std::exp(sum_cos / d));
}

double rastrigin_scaled(std::span<const double> x, double s) {
  double sum = 0.0;
  for (double xj : x) {
    const double p = s * xj;
    sum += p * p - 10.0 * std::cos(2.0 * std::numbers::pi * p);
  }
  return 10.0 * static_cast<double>(x.size()) + sum;
}

ObjectiveSpec make_ackley(int dim) {
  ObjectiveSpec spec;
  spec.id = ObjectiveId::Ackley;
  spec.name = "ackley";
  spec.dim = dim;
  spec.domain_scale = 32.768;
  spec.basin_radius_rescaled = 0.67 / 32.768;
  spec.global_min.assign(static_cast<std::size_t>(dim), 0.0);
  spec.eval_scaled = ackley_scaled;
  return spec;
}

ObjectiveSpec make_rastrigin(int dim) {
  ObjectiveSpec spec;
  spec.id = ObjectiveId::Rastrigin;
  spec.name = "rastrigin";
  spec.dim = dim;
  spec.domain_scale = 5.12;
  spec.basin_radius_rescaled = 0.5 / 5.12;
  spec.global_min.assign(static_cast<std::size_t>(dim), 0.0);
  spec.eval_scaled = rastrigin_scaled;
  return spec;
}

std::map<std::string, std::function<ObjectiveSpec(int)>, std::less<>>& registry() {
  static std::map<std::string, std::function<ObjectiveSpec(int)>, std::less<>> reg{
      {"ackley", make_ackley},
      {"rastrigin", make_rastrigin},
  };
  return reg;
}

}  // namespace

double eval(const ObjectiveSpec& spec, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(spec.dim))
    throw std::invalid_argument("eval: dimension mismatch");
  for (double xj : x)
    if (!std::isfinite(xj))
      throw std::domain_error("eval: non-finite coordinate");
  return spec.eval_scaled(x, spec.domain_scale);
}

bool in_basin(const ObjectiveSpec& spec, std::span<const double> x,
              double shrink) {
  if (!(shrink > 0.0 && shrink <= 1.0))
    throw std::invalid_argument("in_basin: shrink must be in (0,1]");
  if (x.size() != spec.global_min.size())
    throw std::invalid_argument("in_basin: dimension mismatch");
  const double radius = shrink * spec.basin_radius_rescaled;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!(std::abs(x[j] - spec.global_min[j]) < radius)) return false;
  }
  return true;
}

ObjectiveSpec make_objective(std::string_view name, int dim) {
  if (dim < 1) throw std::invalid_argument("objective dimension must be >= 1");
  const auto& reg = registry();
  auto it = reg.find(name);
  if (it == reg.end())
    throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
  return it->second(dim);
}

void register_objective(const std::string& name,
                        std::function<ObjectiveSpec(int)> factory) {
  registry()[name] = std::move(factory);
}

std::vector<std::string> objective_names() {
  std::vector<std::string> names;
  for (const auto& [name, factory] : registry()) names.push_back(name);
  return names;
}

}  // namespace cast
