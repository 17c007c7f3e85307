#include "ecorelint/diagnostics.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

#include <json.hpp>

namespace ecorelint {

std::string_view to_string(QualityLevel l) {
  switch (l) {
    case QualityLevel::Physical: return "physical";
    case QualityLevel::Empirical: return "empirical";
    case QualityLevel::Syntactic: return "syntactic";
    case QualityLevel::Semantic: return "semantic";
    case QualityLevel::Pragmatic: return "pragmatic";
    case QualityLevel::Social: return "social";
    case QualityLevel::Deontic: return "deontic";
  }
  return "syntactic";
}

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Info: return "info";
  }
  return "error";
}

bool severity_from_string(std::string_view text, Severity& out) {
  if (text == "error") { out = Severity::Error; return true; }
  if (text == "warning") { out = Severity::Warning; return true; }
  if (text == "info") { out = Severity::Info; return true; }
  return false;
}

namespace {

constexpr RuleInfo kCatalog[] = {
    {"SYN-001", QualityLevel::Syntactic, Severity::Error,
     "name is empty, starts with a digit, or contains characters outside [A-Za-z0-9_$]"},
    {"SYN-002", QualityLevel::Syntactic, Severity::Error,
     "multiplicity bounds are invalid (lower < 0, or upper neither -1 nor >= max(1, lower))"},
    {"SYN-003", QualityLevel::Syntactic, Severity::Error,
     "classifier name is not unique inside its package"},
    {"SYN-004", QualityLevel::Syntactic, Severity::Error,
     "feature name collides with another own or inherited feature"},
    {"SYN-005", QualityLevel::Syntactic, Severity::Error,
     "type, supertype, or opposite reference does not resolve"},
    {"SYN-006", QualityLevel::Syntactic, Severity::Warning,
     "EDataType instanceTypeName is absent or not a known type"},
    {"SYN-007", QualityLevel::Syntactic, Severity::Error,
     "structural feature has no type"},
    {"SEM-001", QualityLevel::Semantic, Severity::Warning,
     "abstract class is never inherited"},
    {"SEM-002", QualityLevel::Semantic, Severity::Error,
     "feature is not changeable, required, and has no default value"},
    {"SEM-003", QualityLevel::Semantic, Severity::Warning,
     "concrete class has no features and no operations, own or inherited"},
    {"SEM-004", QualityLevel::Semantic, Severity::Error,
     "inheritance hierarchy contains a cycle"},
    {"EMP-001", QualityLevel::Empirical, Severity::Warning,
     "name does not follow the convention (PascalCase classifiers, camelCase features)"},
    {"EMP-002", QualityLevel::Empirical, Severity::Info,
     "name contains words missing from the dictionary"},
    {"EMP-101", QualityLevel::Empirical, Severity::Warning,
     "minimum angle between edges is below the threshold"},
    {"EMP-102", QualityLevel::Empirical, Severity::Warning,
     "labels overlap other labels or edges beyond the allowance"},
    {"EMP-103", QualityLevel::Empirical, Severity::Info,
     "layout metrics summary (crossings, bends, lengths, area)"},
    {"EMP-104", QualityLevel::Empirical, Severity::Warning,
     "layout references an element that is not in the model"},
    {"INS-001", QualityLevel::Semantic, Severity::Error,
     "instance object is typed by an abstract class"},
    {"INS-002", QualityLevel::Semantic, Severity::Error,
     "feature value count violates the multiplicity bounds"},
    {"INS-003", QualityLevel::Semantic, Severity::Error,
     "attribute value does not parse as the attribute's data type"},
    {"INS-004", QualityLevel::Semantic, Severity::Error,
     "enum-typed value is not one of the enum's literals"},
    {"INS-005", QualityLevel::Semantic, Severity::Error,
     "value supplied for a feature the class does not have"},
    {"INS-006", QualityLevel::Semantic, Severity::Error,
     "cross-reference target does not exist in the document"},
};

}  // namespace

std::span<const RuleInfo> rule_catalog() { return kCatalog; }

const RuleInfo* find_rule(std::string_view id) {
  for (const RuleInfo& r : kCatalog) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

Diagnostic make_diagnostic(std::string_view rule_id, std::string path, SourceLoc loc,
                           std::string message) {
  const RuleInfo* info = find_rule(rule_id);
  Diagnostic d;
  d.rule_id = std::string(rule_id);
  if (info) {
    d.level = info->level;
    d.severity = info->severity;
  }
  d.path = std::move(path);
  d.loc = loc;
  d.message = std::move(message);
  return d;
}

void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(), [](const Diagnostic& a, const Diagnostic& b) {
    int la = a.loc.valid() ? a.loc.line : INT_MAX;
    int lb = b.loc.valid() ? b.loc.line : INT_MAX;
    if (la != lb) return la < lb;
    if (a.loc.col != b.loc.col) return a.loc.col < b.loc.col;
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    if (a.path != b.path) return a.path < b.path;
    return a.message < b.message;
  });
}

int DiagnosticReport::count(Severity s) const {
  int n = 0;
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == s) ++n;
  }
  return n;
}

int DiagnosticReport::count(QualityLevel l) const {
  int n = 0;
  for (const Diagnostic& d : diagnostics) {
    if (d.level == l) ++n;
  }
  return n;
}

std::string report_to_json(const DiagnosticReport& r) {
  nlohmann::ordered_json doc;
  doc["diagnostics"] = nlohmann::ordered_json::array();
  for (const Diagnostic& d : r.diagnostics) {
    nlohmann::ordered_json item;
    item["rule"] = d.rule_id;
    item["level"] = to_string(d.level);
    item["severity"] = to_string(d.severity);
    item["path"] = d.path;
    if (d.loc.valid()) {
      item["line"] = d.loc.line;
      item["col"] = d.loc.col;
    } else {
      item["line"] = nullptr;
      item["col"] = nullptr;
    }
    item["message"] = d.message;
    item["related"] = d.related_paths;
    doc["diagnostics"].push_back(std::move(item));
  }
  nlohmann::ordered_json by_severity;
  for (Severity s : {Severity::Error, Severity::Warning, Severity::Info})
    by_severity[std::string(to_string(s))] = r.count(s);
  nlohmann::ordered_json by_level;
  for (QualityLevel l : {QualityLevel::Physical, QualityLevel::Empirical,
                         QualityLevel::Syntactic, QualityLevel::Semantic,
                         QualityLevel::Pragmatic, QualityLevel::Social,
                         QualityLevel::Deontic}) {
    int n = r.count(l);
    if (n > 0) by_level[std::string(to_string(l))] = n;
  }
  doc["summary"]["total"] = static_cast<int>(r.diagnostics.size());
  doc["summary"]["by_severity"] = std::move(by_severity);
  doc["summary"]["by_level"] = std::move(by_level);
  return doc.dump(2) + "\n";
}

std::string report_to_text(const DiagnosticReport& r, std::string_view file_name) {
  std::ostringstream out;
  for (const Diagnostic& d : r.diagnostics) {
    out << file_name << ':';
    if (d.loc.valid()) out << d.loc.line << ':' << d.loc.col << ':';
    out << ' ' << to_string(d.severity) << ' ' << d.rule_id << ' ' << d.path << ": "
        << d.message;
    if (!d.related_paths.empty()) {
      out << " [";
      for (std::size_t i = 0; i < d.related_paths.size(); ++i) {
        if (i) out << ", ";
        out << d.related_paths[i];
      }
      out << ']';
    }
    out << '\n';
  }
  out << r.count(Severity::Error) << " error(s), " << r.count(Severity::Warning)
      << " warning(s), " << r.count(Severity::Info) << " info(s)\n";
  return out.str();
}

std::string catalog_to_json() {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const RuleInfo& r : kCatalog) {
    nlohmann::ordered_json item;
    item["id"] = std::string(r.id);
    item["level"] = to_string(r.level);
    item["severity"] = to_string(r.severity);
    item["description"] = std::string(r.description);
    doc.push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

std::string catalog_to_text() {
  std::ostringstream out;
  for (const RuleInfo& r : kCatalog) {
    out << r.id << "  " << to_string(r.level) << "  " << to_string(r.severity) << "  "
        << r.description << '\n';
  }
  return out.str();
}

}  // namespace ecorelint
