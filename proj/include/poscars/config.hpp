#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "poscars/sim.hpp"

#include <json.hpp>

namespace poscars {

struct ConfigNotFound : ConfigError {
  using ConfigError::ConfigError;
};

// Sectioned key-value text. Keys may repeat inside a section (ordered);
// lookups take the last occurrence unless all are requested.
class IniDoc {
 public:
  using Entry = std::pair<std::string, std::string>;

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::vector<std::string> get_all(const std::string& section, const std::string& key) const;
  const std::vector<Entry>* section(const std::string& name) const;

  // Replaces every existing occurrence of the key (appends when absent).
  void set(const std::string& section, const std::string& key, const std::string& value);
  void append(const std::string& section, const std::string& key, const std::string& value);

  // Per-section merge: keys present in `over` displace all same-named
  // entries here; unknown sections and keys are taken as-is.
  void overlay(const IniDoc& over);

  const std::map<std::string, std::vector<Entry>>& sections() const { return sections_; }

 private:
  std::map<std::string, std::vector<Entry>> sections_;
};

// Lines: `[section]`, `key = value`, blank, or comment (# or ;). Inline
// comments are not stripped; values keep inner spaces. Throws ConfigError
// with a line number on malformed input.
IniDoc parse_ini(std::istream& is, const std::string& origin = "<config>");
IniDoc parse_ini_file(const std::string& path);  // ConfigNotFound when unreadable

// Desk-scale defaults; every recognised key appears here once.
const char* default_config_text();
IniDoc default_config();

// `section.key=value`, or a bare shorthand (V, alpha, D, probe_ratio,
// false_positive_rate, scheduler, rate, seed). Returns the resolved
// section.key form.
std::string apply_override(IniDoc& doc, const std::string& assignment);

// Defaults overlaid with `doc`; the result is what config_from_ini reads
// and what gets echoed into summaries.
IniDoc resolve_config(const IniDoc& doc);

SimulationConfig config_from_ini(const IniDoc& resolved);

nlohmann::json config_echo(const IniDoc& resolved);

struct SweepSpec {
  std::string axis;                 // V, D, probe_ratio, false_positive_rate, scheduler
  std::vector<std::string> values;  // non-empty
  IniDoc base;                      // everything outside [sweep]
};

SweepSpec sweep_from_ini(const IniDoc& doc);
void apply_axis(IniDoc& doc, const std::string& axis, const std::string& value);

}  // namespace poscars
