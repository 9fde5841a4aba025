#pragma once

// Plain key = value configuration files with [section] headers, strict about
// unknown and duplicate keys so experiment configs stay reproducible.

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "divlab/errors.hpp"

namespace divlab {

struct ExperimentConfig {
  // Keys are "key" or "section.key"; values raw strings.
  std::map<std::string, std::string> values;
  std::uint64_t seed = 0;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;

  // Rejects keys outside the allowed set (names the offender).
  void restrict_keys(const std::set<std::string>& allowed) const;

  // FNV-1a over the sorted canonical "key=value" lines plus the seed.
  std::string hash() const;
};

// Parses a config file; duplicate keys and malformed lines raise ConfigError
// naming the key and line. Missing path with allow_missing yields an empty
// config.
ExperimentConfig parse_config_file(const std::string& path, bool allow_missing = false);

// Flag overrides: later assignments win over file contents.
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

}  // namespace divlab
