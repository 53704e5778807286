#include "sagin/config_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sagin/error.hpp"

namespace sagin {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

std::string ConfigSection::context(const std::string& key) const {
  const ConfigEntry* e = find(key);
  std::ostringstream os;
  os << file << ":" << (e ? e->line : line);
  return os.str();
}

std::string ConfigSection::get_string(const std::string& key) const {
  const ConfigEntry* e = find(key);
  if (!e) {
    throw ConfigError(file + ": section [" + name + "] (line " + std::to_string(line) +
                      ") is missing required key '" + key + "'");
  }
  return e->value;
}

std::string ConfigSection::get_string(const std::string& key, const std::string& fallback) const {
  const ConfigEntry* e = find(key);
  return e ? e->value : fallback;
}

double ConfigSection::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(context(key) + ": key '" + key + "' expects a number, got '" + v + "'");
  }
}

double ConfigSection::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

int ConfigSection::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(context(key) + ": key '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

int ConfigSection::get_int(const std::string& key, int fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool ConfigSection::get_bool(const std::string& key) const {
  const std::string v = get_string(key);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError(context(key) + ": key '" + key + "' expects a boolean, got '" + v + "'");
}

bool ConfigSection::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::vector<const ConfigSection*> ConfigFile::all(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

const ConfigSection* ConfigFile::unique(const std::string& name) const {
  auto matches = all(name);
  if (matches.size() > 1) {
    throw ConfigError(path + ":" + std::to_string(matches[1]->line) + ": duplicate section [" +
                      name + "]");
  }
  return matches.empty() ? nullptr : matches.front();
}

ConfigFile parse_config_text(const std::string& text, const std::string& display_name) {
  ConfigFile cfg;
  cfg.path = display_name;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(display_name + ":" + std::to_string(line_no) + ": unterminated section header '" + line + "'");
      }
      ConfigSection s;
      s.name = trim(line.substr(1, line.size() - 2));
      s.line = line_no;
      s.file = display_name;
      if (s.name.empty()) {
        throw ConfigError(display_name + ":" + std::to_string(line_no) + ": empty section name");
      }
      cfg.sections.push_back(std::move(s));
      current = &cfg.sections.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(display_name + ":" + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
    }
    if (!current) {
      throw ConfigError(display_name + ":" + std::to_string(line_no) + ": key-value pair outside any [section]");
    }
    ConfigEntry e;
    e.key = trim(line.substr(0, eq));
    e.value = trim(line.substr(eq + 1));
    e.line = line_no;
    if (e.key.empty()) {
      throw ConfigError(display_name + ":" + std::to_string(line_no) + ": empty key");
    }
    if (current->has(e.key)) {
      throw ConfigError(display_name + ":" + std::to_string(line_no) + ": duplicate key '" + e.key +
                        "' in section [" + current->name + "]");
    }
    current->entries.push_back(std::move(e));
  }
  return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace sagin
