#pragma once

#include <string>

#include "ecorelint/layout.hpp"
#include "ecorelint/model.hpp"

namespace ecorelint {

/// SVG of the laid-out part of the model: one rect+text group per class
/// box, one polyline per edge. Supertype edges use a distinct stroke style
/// from reference edges. Deterministic; elements without geometry are
/// omitted.
std::string export_svg(const EcoreModel& m, const LayoutModel& layout);

/// Markdown with one section per documented classifier and feature (GenModel
/// `documentation` annotations) and a coverage appendix listing everything
/// undocumented.
std::string export_docs(const EcoreModel& m);

}  // namespace ecorelint
