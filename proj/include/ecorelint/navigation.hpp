#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/diagnostics.hpp"
#include "ecorelint/model.hpp"

namespace ecorelint {

/// Resolves every TypeRef in the model against local classifiers and the
/// builtin registry. Unresolved refs are returned as SYN-005 diagnostics and
/// left unresolved; `raw` text is never rewritten.
std::vector<Diagnostic> resolve_types(EcoreModel& m, const BuiltinRegistry& builtins);

/// Resolves one fragment path (`//Pkg/Class/feature`, leading `//`) against
/// the model root. Returns nullptr when no element matches.
const Node* resolve_fragment(const EcoreModel& m, std::string_view fragment);

struct SuperClosure {
  /// Transitive eSuperTypes closure, depth-first in declaration order,
  /// first visit wins. Never contains the start class itself.
  std::vector<const ClassNode*> ancestors;
  /// Shortest path back to the start when the class sits on a cycle:
  /// [A, B] for A -> B -> A, [A] for A -> A.
  std::optional<std::vector<const ClassNode*>> cycle;
};

/// Terminates on every input graph, cycles included. Unresolved supertypes
/// are skipped (resolve_types owns that finding).
SuperClosure super_closure(const ClassNode& c);

struct OwnedFeature {
  const FeatureNode* feature;
  const ClassNode* owner;
};

/// Own features first (declaration order), then inherited features in
/// super_closure order. Name duplicates are kept; cycle-safe.
std::vector<OwnedFeature> all_features(const ClassNode& c);

/// Distinct inheritance cycles over `classes`, identified by vertex set, in
/// document order of their first member. Each cycle lists its members in
/// traversal order starting from the earliest class.
std::vector<std::vector<const ClassNode*>> find_inheritance_cycles(
    const std::vector<const ClassNode*>& classes);

struct FilterQuery {
  enum class Kind {
    SupertypesOf,
    SubtypesOf,
    RelatedByReference,
    ByKind,
    ByNamePattern,
  };

  Kind kind = Kind::ByKind;
  std::string anchor;               // path or classifier name
  NodeKind classifier_kind = NodeKind::Class;
  std::string pattern;              // glob: `*` and `?`

  /// Accepts `supertypes-of:<anchor>`, `subtypes-of:<anchor>`,
  /// `related:<anchor>`, `kind:EClass|EDataType|EEnum`, `name:<glob>`.
  static FilterQuery parse(std::string_view text);
};

/// Matching element paths; supertypes-of/subtypes-of/related include the
/// anchor. Throws FormatError when the anchor class cannot be found.
std::set<std::string> filter_selection(const EcoreModel& m, const FilterQuery& q);

/// Glob match with `*` and `?`, case-sensitive.
bool glob_match(std::string_view pattern, std::string_view text);

}  // namespace ecorelint
