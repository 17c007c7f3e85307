#include "ecorelint/config.hpp"

#include <fstream>
#include <sstream>

#include "ecorelint/errors.hpp"

namespace ecorelint {

bool RuleConfig::rule_enabled(std::string_view id) const {
  auto it = enabled_override.find(std::string(id));
  return it == enabled_override.end() ? true : it->second;
}

Severity RuleConfig::rule_severity(std::string_view id) const {
  auto it = severity_override.find(std::string(id));
  if (it != severity_override.end()) return it->second;
  const RuleInfo* info = find_rule(id);
  return info ? info->severity : Severity::Error;
}

void RuleConfig::validate() const {
  for (const auto& [id, _] : enabled_override) {
    if (!find_rule(id)) throw ConfigError("unknown rule id '" + id + "'");
  }
  for (const auto& [id, _] : severity_override) {
    if (!find_rule(id)) throw ConfigError("unknown rule id '" + id + "'");
  }
  if (min_angle_deg < 0 || min_angle_deg > 90)
    throw ConfigError("layout.min_angle_deg must be in [0, 90]");
  if (max_label_overlaps < 0)
    throw ConfigError("layout.max_label_overlaps must be >= 0");
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

RuleConfig parse_config(std::string_view text) {
  RuleConfig cfg;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line_view =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    std::string line = trim(line_view);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (key.rfind("rule.", 0) == 0) {
      std::string rest = key.substr(5);
      std::size_t dot = rest.find('.');
      if (dot == std::string::npos) {
        if (value == "on") cfg.enabled_override[rest] = true;
        else if (value == "off") cfg.enabled_override[rest] = false;
        else throw ConfigError("rule." + rest + ": expected on or off, got '" + value + "'");
      } else if (rest.substr(dot + 1) == "severity") {
        Severity s;
        if (!severity_from_string(value, s))
          throw ConfigError(key + ": unknown severity '" + value + "'");
        cfg.severity_override[rest.substr(0, dot)] = s;
      } else {
        throw ConfigError("unknown configuration key '" + key + "'");
      }
    } else if (key == "layout.min_angle_deg") {
      try {
        cfg.min_angle_deg = std::stod(value);
      } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + value + "'");
      }
    } else if (key == "layout.max_label_overlaps") {
      try {
        cfg.max_label_overlaps = std::stoi(value);
      } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + value + "'");
      }
    } else if (key == "dictionary") {
      cfg.dictionary_path = value;
    } else if (key == "known_type") {
      cfg.extra_known_types.push_back(value);
    } else {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RuleConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::set<std::string> parse_dictionary(std::string_view text) {
  std::set<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    std::string word = trim(line);
    if (word.empty() || word[0] == '#') continue;
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    words.insert(std::move(word));
  }
  return words;
}

std::set<std::string> load_dictionary(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read dictionary file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dictionary(buf.str());
}

}  // namespace ecorelint
