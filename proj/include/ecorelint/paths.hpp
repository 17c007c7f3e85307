#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/common.hpp"

namespace ecorelint {

/// One step of an element path. `ordinal` disambiguates same-named siblings:
/// the second sibling named `x` renders as `x[2]`.
struct PathSegment {
  NodeKind kind = NodeKind::Unknown;
  std::string name;
  int ordinal = 1;

  bool operator==(const PathSegment& o) const {
    return name == o.name && ordinal == o.ordinal;
  }
};

/// Root-to-element path, rendered as `/pkg/Class/feature`.
/// Paths are stable across serializations that do not rename or move the
/// element; kinds are informational and do not take part in equality.
struct ElementPath {
  std::vector<PathSegment> segments;

  std::string render() const;
  static ElementPath parse(std::string_view text);

  bool operator==(const ElementPath& o) const { return segments == o.segments; }
};

}  // namespace ecorelint
