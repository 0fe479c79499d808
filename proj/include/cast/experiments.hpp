#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cast/config.hpp"

namespace cast {

struct CliOptions {
  std::optional<std::uint64_t> seed_override;
  int jobs = 1;
  std::filesystem::path out_dir = ".";
  std::vector<std::string> overrides;  // key=value or section.key=value
  bool progress = false;
};

// Applies --set overrides onto a parsed document (replace or append).
ConfigDoc apply_overrides(ConfigDoc doc, const std::vector<std::string>& overrides);

// Subcommand bodies. Each validates its document (unknown keys rejected),
// runs the experiment, and writes the artifact files into out_dir. Config
// problems throw ConfigError; runtime failures throw std::runtime_error.
void cmd_run(const ConfigDoc& doc, const CliOptions& options);
void cmd_compare(const ConfigDoc& doc, const CliOptions& options);
void cmd_sweep(const ConfigDoc& doc, const CliOptions& options);
void cmd_decay_study(const ConfigDoc& doc, const CliOptions& options);

}  // namespace cast
