#pragma once

#include <string>
#include <string_view>

#include "ecorelint/model.hpp"

namespace ecorelint {

/// JSON rendering of the whole model: one object per element, containment
/// as nested arrays, type refs as their raw path text, fixed key order.
/// Lossless for modeled fields; unrecognized XMI content rides along in an
/// "extras" field.
std::string export_json(const EcoreModel& m);

/// Inverse of export_json. Types are left unresolved; run resolve_types on
/// the result. Throws FormatError on schema violations.
EcoreModel parse_json(std::string_view text);

}  // namespace ecorelint
