#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/config.hpp"
#include "ecorelint/diagnostics.hpp"
#include "ecorelint/layout.hpp"
#include "ecorelint/model.hpp"
#include "ecorelint/navigation.hpp"

namespace ecorelint {

struct RuleInputs {
  const LayoutModel* layout = nullptr;               // enables EMP-101..104
  const std::set<std::string>* dictionary = nullptr;  // enables EMP-002
  const BuiltinRegistry* builtins = nullptr;          // defaults to standard()
};

/// Evaluates every enabled rule over a parsed (possibly broken) model and
/// returns the findings in stable order. Run resolve_types on the model
/// first; refs left unresolved come back as SYN-005. Never throws on model
/// content; only configuration problems raise ConfigError.
DiagnosticReport run_rules(const EcoreModel& m, const RuleInputs& inputs,
                           const RuleConfig& cfg);

/// SYN-001 for invalid identifiers, EMP-001 for convention misses
/// (PascalCase classifiers, camelCase features/operations/parameters,
/// camelCase or UPPER_SNAKE enum literals). A validity error suppresses the
/// convention warning. Returned diagnostics carry no path; callers fill it.
std::vector<Diagnostic> check_identifier(std::string_view name, NodeKind kind);

/// Splits an identifier into lowercase words at case, digit and underscore
/// boundaries: "myBadSpelling" -> my bad spelling, "URLParser2" -> url parser 2.
std::vector<std::string> split_identifier(std::string_view name);

/// EMP-002 per named element containing a word missing from `dictionary`.
/// Purely numeric words always pass.
std::vector<Diagnostic> spellcheck_model(const EcoreModel& m,
                                         const std::set<std::string>& dictionary);

/// SYN-002 unless lower >= 0 and (upper == -1 or upper >= max(1, lower)).
std::vector<Diagnostic> check_multiplicity_bounds(const FeatureNode& f);

/// SYN-003 per classifier-name collision inside one package, SYN-004 per
/// feature-name collision across own plus inherited features.
std::vector<Diagnostic> check_name_uniqueness(const EcoreModel& m);

/// SYN-005 per unresolved type/supertype/opposite ref, SYN-006 per
/// EDataType with an absent or unknown instanceTypeName, SYN-007 per
/// structural feature with no type at all.
std::vector<Diagnostic> check_references(const EcoreModel& m,
                                         const BuiltinRegistry& builtins,
                                         std::span<const std::string> extra_known_types = {});

/// SEM-004, once per distinct inheritance cycle.
std::vector<Diagnostic> check_circular_inheritance(const EcoreModel& m);

/// SEM-001 abstract-never-inherited, SEM-002 frozen required feature with
/// no default, SEM-003 concrete class with nothing in it.
std::vector<Diagnostic> check_satisfiability(const EcoreModel& m);

}  // namespace ecorelint
