#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/diagnostics.hpp"

namespace ecorelint {

/// Per-rule switches plus the layout thresholds. Unknown rule ids raise
/// ConfigError when the config is validated.
struct RuleConfig {
  std::map<std::string, bool> enabled_override;
  std::map<std::string, Severity> severity_override;
  double min_angle_deg = 15.0;
  int max_label_overlaps = 0;
  std::string dictionary_path;
  std::vector<std::string> extra_known_types;

  bool rule_enabled(std::string_view id) const;
  Severity rule_severity(std::string_view id) const;
  void validate() const;
};

/// Key-value config file:
///   rule.SEM-001 = off
///   rule.SYN-006.severity = error
///   layout.min_angle_deg = 20
///   layout.max_label_overlaps = 1
///   dictionary = words.txt
///   known_type = com.example.Money
/// `#` starts a comment. Unknown keys are rejected naming the key.
RuleConfig parse_config(std::string_view text);
RuleConfig load_config(const std::filesystem::path& file);

/// One lowercase word per line; blank lines and `#` comments ignored.
std::set<std::string> load_dictionary(const std::filesystem::path& file);
std::set<std::string> parse_dictionary(std::string_view text);

}  // namespace ecorelint
