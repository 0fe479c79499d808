#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cast {

// Configuration problem with a file/line pointer; the CLI maps it to exit 2.
struct ConfigError : std::runtime_error {
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

// Flat `key = value` document with optional [sections] (used for compare
// arms). '#' starts a comment; keys may not repeat within a scope.
struct ConfigDoc {
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
  };

  std::string filename;
  std::vector<Entry> top;
  std::vector<Section> sections;
};

ConfigDoc parse_config_text(std::string_view text, std::string_view filename);
ConfigDoc parse_config_file(const std::filesystem::path& path);

// Typed access over one scope's entries with unknown-key rejection.
class KeyReader {
 public:
  KeyReader(const ConfigDoc& doc, const std::vector<ConfigDoc::Entry>& entries)
      : doc_(doc), entries_(entries) {}

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key);
  std::string get_string(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  long get_long(const std::string& key);
  long get_long(const std::string& key, long fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);

  // Throws ConfigError naming the first entry never asked for.
  void reject_unknown() const;

 private:
  const ConfigDoc::Entry* find(const std::string& key) const;
  std::string where(const ConfigDoc::Entry& entry) const;

  const ConfigDoc& doc_;
  const std::vector<ConfigDoc::Entry>& entries_;
  std::set<std::string> consumed_;
};

}  // namespace cast
