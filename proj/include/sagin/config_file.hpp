#ifndef SAGIN_CONFIG_FILE_HPP
#define SAGIN_CONFIG_FILE_HPP

#include <optional>
#include <string>
#include <vector>

namespace sagin {

// Minimal INI-style reader shared by the topology and scenario file formats:
//
//   # comment
//   [section]          <- sections may repeat; order is preserved
//   key = value
//
// Parse errors and typed lookups report "<file>:<line>" so a bad field can be
// found in the source file.

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(const std::string& key) const;
  bool has(const std::string& key) const { return find(key) != nullptr; }

  // Typed lookups; throw ConfigError with file:line context when the key is
  // missing (no default) or the value does not parse.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;

  std::string context(const std::string& key) const;  // "<file>:<line>"
  std::string file;                                   // set by the parser
};

struct ConfigFile {
  std::string path;
  std::vector<ConfigSection> sections;

  std::vector<const ConfigSection*> all(const std::string& name) const;
  // At most one section with this name; throws ConfigError on duplicates.
  const ConfigSection* unique(const std::string& name) const;
};

ConfigFile parse_config_file(const std::string& path);
ConfigFile parse_config_text(const std::string& text, const std::string& display_name);

}  // namespace sagin

#endif  // SAGIN_CONFIG_FILE_HPP
