#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cast {

// Seedable, splittable random stream (xoshiro256++ core).
//
// Streams are derived from a (master seed, purpose tag, run index) triple and
// reproduce the same sample sequence bit-exactly on every platform: all
// conversions from raw 64-bit words to doubles are done here, without going
// through std:: distributions.
class RngStream {
 public:
  RngStream() = default;
  explicit RngStream(const std::array<std::uint64_t, 4>& state) : s_(state) {}

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl_(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl_(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform01_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0. Multiply-high method; the modulo bias
  // is O(n / 2^64) and irrelevant at any sample size used here.
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static std::uint64_t rotl_(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{0x9E3779B97F4A7C15ULL, 0xBF58476D1CE4E5B9ULL,
                                  0x94D049BB133111EBULL, 0x2545F4914F6CDD1DULL};
};

// Deterministic sub-seed for handing a whole batch to another component.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view tag,
                          std::uint64_t run_index);

// Deterministic, collision-resistant stream derivation. Identical triples give
// identical streams; distinct triples give statistically independent ones.
RngStream derive_stream(std::uint64_t master_seed, std::string_view tag,
                        std::uint64_t run_index);

// d i.i.d. draws from the Cauchy density with location 0 and scale T,
// via the inverse CDF: T * tan(pi * (u - 1/2)). T = 0 gives the zero vector.
void cauchy_fill(double temperature, std::span<double> out, RngStream& rng);
std::vector<double> cauchy_step(double temperature, int dim, RngStream& rng);

// d i.i.d. draws of sqrt(2T) * z with z standard normal (Box-Muller).
void gaussian_fill(double temperature, std::span<double> out, RngStream& rng);
std::vector<double> gaussian_step(double temperature, int dim, RngStream& rng);

// Uniform on [-a, a]; mean 0, variance a^2/3.
double uniform_symmetric(double a, RngStream& rng);

// Stochastic integer rounding: floor(x)+1 with probability x-floor(x), else
// floor(x), so E[iround(x)] = x. Requires x >= 0.
std::uint64_t iround(double x, RngStream& rng);

}  // namespace cast
