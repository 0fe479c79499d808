#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cast {

// The simulation state: N particle positions in rescaled coordinates, one
// temperature per particle, and the objective value cached at each position.
// The caches are updated only on accepted moves, so a step costs exactly N
// objective evaluations.
struct SwarmState {
  int n_particles = 0;
  int dim = 0;
  std::vector<double> positions;      // n_particles x dim, row-major
  std::vector<double> temperatures;   // n_particles, all >= 0
  std::vector<double> cached_values;  // objective at positions
  long step = 0;

  std::span<const double> position(int i) const {
    return {positions.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }
  std::span<double> position(int i) {
    return {positions.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }
};

}  // namespace cast
