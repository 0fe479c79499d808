#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cast {

enum class ObjectiveId { Ackley, Rastrigin, Custom };

// A benchmark objective on the rescaled hypercube [-1,1]^d. The evaluator
// receives rescaled coordinates plus the domain half-width s and computes the
// physical-domain formula at s*x, so no scaled copy of x is ever materialized.
struct ObjectiveSpec {
  ObjectiveId id = ObjectiveId::Custom;
  std::string name;
  int dim = 1;
  double domain_scale = 1.0;       // physical half-width s
  double basin_radius_rescaled = 0.0;  // physical basin radius / s
  std::vector<double> global_min;      // in rescaled coordinates
  std::function<double(std::span<const double>, double)> eval_scaled;
};

// F(s*x). Evaluation outside [-1,1]^d is permitted; a non-finite coordinate
// raises std::domain_error.
double eval(const ObjectiveSpec& spec, std::span<const double> x);

// True iff max_j |x_j - x*_j| < shrink * basin_radius_rescaled (open ball).
// shrink must lie in (0, 1]; success counting uses shrink = 0.5.
bool in_basin(const ObjectiveSpec& spec, std::span<const double> x,
              double shrink = 0.5);

// Registry keyed by string id ("ackley" | "rastrigin" plus user additions).
ObjectiveSpec make_objective(std::string_view name, int dim);
void register_objective(const std::string& name,
                        std::function<ObjectiveSpec(int)> factory);
std::vector<std::string> objective_names();

}  // namespace cast
