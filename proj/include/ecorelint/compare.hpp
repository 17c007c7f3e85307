#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ecorelint/model.hpp"

namespace ecorelint {

/// Name-equality matching between two models. Renames therefore surface as
/// delete + add.
struct Matching {
  std::vector<std::pair<std::string, std::string>> pairs;  // (pathA, pathB)
  std::vector<std::string> unmatched_a;
  std::vector<std::string> unmatched_b;
};

/// Elements matched top-down by (container, kind, name); same-named sibling
/// features are disambiguated by signature (name + raw type + bounds).
Matching match_elements(const EcoreModel& a, const EcoreModel& b);

struct FieldChange {
  std::string path;
  std::string field;
  std::optional<std::string> old_value;  // absent = field was unset
  std::optional<std::string> new_value;
};

struct ModelDelta {
  std::vector<std::string> additions;  // paths only in b
  std::vector<std::string> deletions;  // paths only in a
  std::vector<FieldChange> changes;

  bool empty() const { return additions.empty() && deletions.empty() && changes.empty(); }
};

/// Field-by-field comparison of matched pairs over all modeled fields
/// (bounds, flags, types, annotations, literal values).
ModelDelta diff(const EcoreModel& a, const EcoreModel& b);

enum class ChangelogFormat { Text, Json };

/// `{"added":[...],"removed":[...],"changed":[{"path","field","old","new"}]}`
/// in JSON form; grouped sections in text form.
std::string render_changelog(const ModelDelta& delta, ChangelogFormat format);

struct Conflict {
  std::string path;  // target-side path of the existing classifier
  std::string name;
};

using ConflictList = std::vector<Conflict>;

/// Appends source's classifiers into target's root package (subpackages
/// merge recursively by name) and re-resolves. On any name conflict the
/// full conflict list is returned instead and target is untouched.
std::variant<EcoreModel, ConflictList> import_package(const EcoreModel& target,
                                                      const EcoreModel& source,
                                                      const BuiltinRegistry& builtins);

/// Deep-copies the selected classifiers (or, with `into_class`, features)
/// into target under the same conflict/atomicity contract. References that
/// leave the selection stay unresolved for resolve_types to report.
/// Throws FormatError when a selection path does not exist in source.
std::variant<EcoreModel, ConflictList> copy_elements(const EcoreModel& source,
                                                     const std::vector<std::string>& selection,
                                                     const EcoreModel& target,
                                                     const BuiltinRegistry& builtins,
                                                     std::string_view into_class = {});

/// Which elements and which text fields search_replace touches.
struct ReplaceScope {
  std::set<NodeKind> kinds;  // empty = every named kind
  enum class Field { Name, DefaultValueLiteral, InstanceTypeName, AnnotationValue };
  std::set<Field> fields = {Field::Name};
};

struct ReplaceOptions {
  bool case_sensitive = true;
  bool regex = false;
  bool dry_run = false;
};

struct ChangeSet {
  std::vector<FieldChange> renames;

  bool empty() const { return renames.empty(); }
};

/// Rewrites every in-scope field value that matches. Renamed classifiers
/// keep their references working: refs that resolved to a renamed element
/// get their fragment text updated, then the copy is re-resolved. With
/// dry_run the returned model is an untouched clone. Throws FormatError on
/// an empty literal pattern or a regex that does not compile.
std::pair<EcoreModel, ChangeSet> search_replace(const EcoreModel& m,
                                                std::string_view pattern,
                                                std::string_view replacement,
                                                const ReplaceScope& scope,
                                                const ReplaceOptions& options,
                                                const BuiltinRegistry& builtins);

}  // namespace ecorelint
