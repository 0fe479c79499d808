#include "cast/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cast {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view tag,
                          std::uint64_t run_index) {
  // Absorb the triple sequentially through the splitmix permutation.
  std::uint64_t state = master_seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ fnv1a(tag);
  h = splitmix64(state);
  state = h ^ run_index;
  return splitmix64(state);
}

RngStream derive_stream(std::uint64_t master_seed, std::string_view tag,
                        std::uint64_t run_index) {
  std::uint64_t state = derive_seed(master_seed, tag, run_index);
  std::array<std::uint64_t, 4> s;
  for (auto& word : s) word = splitmix64(state);
  if (s[0] == 0 && s[1] == 0 && s[2] == 0 && s[3] == 0) s[0] = 1;
  return RngStream(s);
}

void cauchy_fill(double temperature, std::span<double> out, RngStream& rng) {
  for (double& v : out) {
    // tan() of a nearest-double multiple of pi/2 is huge but finite, so
    // temperature = 0 yields an exact 0 rather than a NaN.
    v = temperature * std::tan(std::numbers::pi * (rng.uniform01() - 0.5));
  }
}

std::vector<double> cauchy_step(double temperature, int dim, RngStream& rng) {
  std::vector<double> out(static_cast<std::size_t>(dim));
  cauchy_fill(temperature, out, rng);
  return out;
}

void gaussian_fill(double temperature, std::span<double> out, RngStream& rng) {
  const double scale = std::sqrt(2.0 * temperature);
  for (double& v : out) {
    const double u1 = rng.uniform01_pos();
    const double u2 = rng.uniform01();
    v = scale * std::sqrt(-2.0 * std::log(u1)) *
        std::cos(2.0 * std::numbers::pi * u2);
  }
}

std::vector<double> gaussian_step(double temperature, int dim, RngStream& rng) {
  std::vector<double> out(static_cast<std::size_t>(dim));
  gaussian_fill(temperature, out, rng);
  return out;
}

double uniform_symmetric(double a, RngStream& rng) {
  return a * (2.0 * rng.uniform01() - 1.0);
}

std::uint64_t iround(double x, RngStream& rng) {
  if (!(x >= 0.0)) throw std::invalid_argument("iround: x must be >= 0");
  const double floor_x = std::floor(x);
  const double frac = x - floor_x;
  auto base = static_cast<std::uint64_t>(floor_x);
  return base + (rng.uniform01() < frac ? 1 : 0);
}

}  // namespace cast
