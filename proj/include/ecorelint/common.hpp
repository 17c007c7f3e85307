#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ecorelint {

enum class NodeKind {
  Package,
  Class,
  DataType,
  Enum,
  EnumLiteral,
  Attribute,
  Reference,
  Operation,
  Parameter,
  Annotation,
  Detail,
  Opaque,
  Unknown,
};

std::string_view to_string(NodeKind k);

/// True for node kinds that carry a user-visible name and take part in
/// element paths, matching, and rule evaluation.
bool is_named_kind(NodeKind k);

/// True for EClass / EDataType / EEnum.
bool is_classifier_kind(NodeKind k);

struct SourceLoc {
  int line = 0;  // 1-based; 0 means "no location"
  int col = 0;   // 1-based
  std::size_t offset = 0;

  bool valid() const { return line > 0; }
};

}  // namespace ecorelint
