#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/config.hpp"
#include "ecorelint/diagnostics.hpp"
#include "ecorelint/model.hpp"

namespace ecorelint {

struct Point {
  double x = 0;
  double y = 0;
};

struct Box {
  double x = 0;
  double y = 0;
  double w = 0;
  double h = 0;
};

enum class EdgeKind { Reference, Supertype };

struct LayoutNode {
  std::string path;
  Box box;
};

struct LayoutEdge {
  std::string path;
  EdgeKind kind = EdgeKind::Reference;
  std::vector<Point> points;  // full polyline, >= 2 points
  std::optional<Box> label;
};

struct LayoutLabel {
  Box box;
  std::string text;
};

/// Diagram geometry from the layout sidecar file. Coordinates are abstract
/// pixels, y grows downward.
struct LayoutModel {
  std::vector<LayoutNode> nodes;
  std::vector<LayoutEdge> edges;
  std::vector<LayoutLabel> labels;
};

/// Parses the sidecar JSON. Schema violations throw FormatError naming the
/// field path; paths that point nowhere are kept (the layout rules report
/// them against a model).
LayoutModel parse_layout(std::string_view json_text);
std::string serialize_layout(const LayoutModel& l);

struct LayoutMetrics {
  int crossings = 0;
  int bends = 0;
  double total_edge_length = 0;
  double longest_edge = 0;
  std::optional<double> min_edge_angle_deg;  // absent without sharing segments
  double diagram_area = 0;                   // bounding box
  int label_overlaps = 0;
};

/// Properly intersecting segment pairs from distinct edges. Segments that
/// only touch at endpoints do not count; collinear overlap counts once per
/// pair.
int edge_crossings(const LayoutModel& l);

/// Minimum angle over all endpoint-sharing segment pairs, folded into
/// (0, 90]; absent when no two segments share an endpoint.
std::optional<double> min_edge_angle(const LayoutModel& l);

LayoutMetrics compute_metrics(const LayoutModel& l);

/// EMP-101 (angle below threshold), EMP-102 (label overlaps beyond the
/// allowance), EMP-103 (metrics summary), EMP-104 (stale layout path).
std::vector<Diagnostic> layout_report(const EcoreModel& m, const LayoutModel& l,
                                      const RuleConfig& cfg);

}  // namespace ecorelint
