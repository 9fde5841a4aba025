#include "divlab/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace divlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

const std::string& ExperimentConfig::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing required key: " + key);
  return it->second;
}

std::string ExperimentConfig::get_or(const std::string& key,
                                     const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key) const {
  try {
    return std::stod(get(key));
  } catch (const std::invalid_argument&) {
    throw ConfigError("key " + key + " is not a number: " + get(key));
  }
}

std::int64_t ExperimentConfig::get_int(const std::string& key) const {
  try {
    return std::stoll(get(key));
  } catch (const std::invalid_argument&) {
    throw ConfigError("key " + key + " is not an integer: " + get(key));
  }
}

void ExperimentConfig::restrict_keys(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values) {
    if (!allowed.count(key)) throw ConfigError("unknown config key: " + key);
  }
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [key, value] : values) {
    feed(key);
    feed("=");
    feed(value);
    feed("\n");
  }
  feed("seed=" + std::to_string(seed));
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

ExperimentConfig parse_config_file(const std::string& path, bool allow_missing) {
  ExperimentConfig cfg;
  std::ifstream in(path);
  if (!in) {
    if (allow_missing) return cfg;
    throw ConfigError("cannot open config file: " + path);
  }
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("bad section header at line " + std::to_string(lineno));
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    }
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("empty key at line " + std::to_string(lineno));
    }
    if (!section.empty()) key = section + "." + key;
    if (cfg.values.count(key)) {
      throw ConfigError("duplicate key " + key + " at line " + std::to_string(lineno));
    }
    cfg.values.emplace(std::move(key), value);
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  cfg.values[key] = value;
}

}  // namespace divlab
