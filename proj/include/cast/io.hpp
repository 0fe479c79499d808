#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cast {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Shortest decimal representation that parses back to the same double
// (locale-independent). NaN prints as "nan".
std::string format_double(double value);

// Comment header stamped at the top of every output file: tool version, the
// fully resolved experiment configuration, and the master seed.
void write_artifact_header(std::ostream& os,
                           const std::vector<std::pair<std::string, std::string>>& config,
                           std::uint64_t seed, char comment = '#');

}  // namespace cast
