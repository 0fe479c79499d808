#include "cast/io.hpp"

#include <charconv>
#include <cmath>

namespace cast {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return {buffer, result.ptr};
}

void write_artifact_header(
    std::ostream& os,
    const std::vector<std::pair<std::string, std::string>>& config,
    std::uint64_t seed, char comment) {
  os << comment << " cast " << kToolVersion << '\n';
  os << comment << " seed = " << seed << '\n';
  for (const auto& [key, value] : config)
    os << comment << ' ' << key << " = " << value << '\n';
}

}  // namespace cast
