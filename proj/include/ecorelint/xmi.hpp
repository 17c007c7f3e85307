#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ecorelint/common.hpp"
#include "ecorelint/model.hpp"

namespace ecorelint {

using SourceMap = std::map<std::string, SourceLoc>;

/// Reads one `.ecore` XMI document. The model mirrors document order
/// exactly; absent attributes get their declared defaults; anything the
/// reader does not model is preserved verbatim (extra_attrs / OpaqueNode).
/// Throws ParseError (malformed XML) or FormatError (wrong root namespace,
/// duplicate xmi:id, unparseable attribute values).
EcoreModel parse_xmi(std::string_view text, std::string source_uri = "");

/// Writes the canonical form: UTF-8, LF, 2-space indentation, attribute
/// order (xsi:type, name, then first-seen file order), defaults omitted.
/// parse -> serialize is byte-identical for canonical input and idempotent
/// for everything else.
std::string serialize_xmi(const EcoreModel& m);

/// Location of every indexed element. Complete by construction.
SourceMap source_map(const EcoreModel& m);

}  // namespace ecorelint
