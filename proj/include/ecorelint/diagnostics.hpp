#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/common.hpp"

namespace ecorelint {

enum class QualityLevel {
  Physical,
  Empirical,
  Syntactic,
  Semantic,
  Pragmatic,
  Social,
  Deontic,
};

enum class Severity { Error, Warning, Info };

std::string_view to_string(QualityLevel l);
std::string_view to_string(Severity s);
bool severity_from_string(std::string_view text, Severity& out);

/// One rule finding.
struct Diagnostic {
  std::string rule_id;
  QualityLevel level = QualityLevel::Syntactic;
  Severity severity = Severity::Error;
  std::string path;
  SourceLoc loc;
  std::string message;
  std::vector<std::string> related_paths;
};

struct RuleInfo {
  std::string_view id;
  QualityLevel level;
  Severity severity;
  std::string_view description;
};

/// The published rule table, embedded in the binary.
std::span<const RuleInfo> rule_catalog();
const RuleInfo* find_rule(std::string_view id);

/// Diagnostic with level/severity taken from the catalog entry for `rule_id`.
Diagnostic make_diagnostic(std::string_view rule_id, std::string path,
                           SourceLoc loc, std::string message);

/// Stable report order: file position, then rule id, then path.
void sort_diagnostics(std::vector<Diagnostic>& ds);

struct DiagnosticReport {
  std::vector<Diagnostic> diagnostics;

  int count(Severity s) const;
  int count(QualityLevel l) const;
  bool has_errors() const { return count(Severity::Error) > 0; }
  bool empty() const { return diagnostics.empty(); }
};

std::string report_to_json(const DiagnosticReport& r);
std::string report_to_text(const DiagnosticReport& r, std::string_view file_name);
std::string catalog_to_json();
std::string catalog_to_text();

}  // namespace ecorelint
