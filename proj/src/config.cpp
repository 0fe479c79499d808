#include "cast/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace cast {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

ConfigDoc parse_config_text(std::string_view text, std::string_view filename) {
  ConfigDoc doc;
  doc.filename = filename;
  std::vector<ConfigDoc::Entry>* scope = &doc.top;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where =
        std::string(filename) + ":" + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(where, "malformed section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(where, "empty section name");
      for (const auto& section : doc.sections)
        if (section.name == name)
          throw ConfigError(where, "duplicate section '" + std::string(name) + "'");
      doc.sections.push_back({std::string(name), line_no, {}});
      scope = &doc.sections.back().entries;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(where, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where, "empty key");
    for (const auto& entry : *scope)
      if (entry.key == key)
        throw ConfigError(where, "duplicate key '" + std::string(key) + "'");
    scope->push_back({std::string(key), std::string(value), line_no});
  }
  return doc;
}

ConfigDoc parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

const ConfigDoc::Entry* KeyReader::find(const std::string& key) const {
  for (const auto& entry : entries_)
    if (entry.key == key) return &entry;
  return nullptr;
}

std::string KeyReader::where(const ConfigDoc::Entry& entry) const {
  return doc_.filename + ":" + std::to_string(entry.line);
}

bool KeyReader::has(const std::string& key) const { return find(key) != nullptr; }

std::string KeyReader::get_string(const std::string& key) {
  consumed_.insert(key);
  const auto* entry = find(key);
  if (!entry)
    throw ConfigError(doc_.filename, "missing required key '" + key + "'");
  return entry->value;
}

std::string KeyReader::get_string(const std::string& key,
                                  const std::string& fallback) {
  consumed_.insert(key);
  const auto* entry = find(key);
  return entry ? entry->value : fallback;
}

double KeyReader::get_double(const std::string& key) {
  consumed_.insert(key);
  const auto* entry = find(key);
  if (!entry)
    throw ConfigError(doc_.filename, "missing required key '" + key + "'");
  const std::string& text = entry->value;
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw ConfigError(where(*entry), "'" + key + "' is not a number");
  return value;
}

double KeyReader::get_double(const std::string& key, double fallback) {
  consumed_.insert(key);
  return find(key) ? get_double(key) : fallback;
}

long KeyReader::get_long(const std::string& key) {
  const double value = get_double(key);
  const auto rounded = static_cast<long>(value);
  if (static_cast<double>(rounded) != value)
    throw ConfigError(doc_.filename, "'" + key + "' must be an integer");
  return rounded;
}

long KeyReader::get_long(const std::string& key, long fallback) {
  consumed_.insert(key);
  return find(key) ? get_long(key) : fallback;
}

std::uint64_t KeyReader::get_u64(const std::string& key, std::uint64_t fallback) {
  consumed_.insert(key);
  const auto* entry = find(key);
  if (!entry) return fallback;
  const std::string& text = entry->value;
  std::uint64_t value = 0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size())
    throw ConfigError(where(*entry), "'" + key + "' is not an unsigned integer");
  return value;
}

bool KeyReader::get_bool(const std::string& key, bool fallback) {
  consumed_.insert(key);
  const auto* entry = find(key);
  if (!entry) return fallback;
  if (entry->value == "true") return true;
  if (entry->value == "false") return false;
  throw ConfigError(where(*entry), "'" + key + "' must be true or false");
}

void KeyReader::reject_unknown() const {
  for (const auto& entry : entries_)
    if (!consumed_.contains(entry.key))
      throw ConfigError(where(entry), "unknown key '" + entry.key + "'");
}

}  // namespace cast
