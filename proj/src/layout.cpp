#include "ecorelint/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ecorelint/errors.hpp"

namespace ecorelint {

namespace {

using nlohmann::ordered_json;

double require_number(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw FormatError(where + "." + key + ": expected a number");
  return obj[key].get<double>();
}

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw FormatError(where + "." + key + ": expected a string");
  return obj[key].get<std::string>();
}

Box parse_box(const ordered_json& obj, const std::string& where, bool positive_extent) {
  Box box;
  box.x = require_number(obj, "x", where);
  box.y = require_number(obj, "y", where);
  box.w = require_number(obj, "w", where);
  box.h = require_number(obj, "h", where);
  if (positive_extent && (box.w <= 0 || box.h <= 0))
    throw FormatError(where + ": w and h must be > 0");
  return box;
}

void reject_unknown_keys(const ordered_json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) {
      if (it.key() == k) { ok = true; break; }
    }
    if (!ok) throw FormatError(where + ": unknown key '" + it.key() + "'");
  }
}

struct Segment {
  Point a;
  Point b;
  std::size_t edge;
};

std::vector<Segment> all_segments(const LayoutModel& l) {
  std::vector<Segment> out;
  for (std::size_t e = 0; e < l.edges.size(); ++e) {
    const auto& pts = l.edges[e].points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back({pts[i], pts[i + 1], e});
  }
  return out;
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool same_point(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

// Proper intersection: a point interior to both segments, or a collinear
// overlap of positive length.
bool segments_cross(const Segment& s, const Segment& t) {
  double d1 = cross(s.a, s.b, t.a);
  double d2 = cross(s.a, s.b, t.b);
  double d3 = cross(t.a, t.b, s.a);
  double d4 = cross(t.a, t.b, s.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
    // Collinear: positive-length 1-D overlap on the dominant axis.
    bool use_x = std::abs(s.b.x - s.a.x) + std::abs(t.b.x - t.a.x) >=
                 std::abs(s.b.y - s.a.y) + std::abs(t.b.y - t.a.y);
    double s_lo = use_x ? std::min(s.a.x, s.b.x) : std::min(s.a.y, s.b.y);
    double s_hi = use_x ? std::max(s.a.x, s.b.x) : std::max(s.a.y, s.b.y);
    double t_lo = use_x ? std::min(t.a.x, t.b.x) : std::min(t.a.y, t.b.y);
    double t_hi = use_x ? std::max(t.a.x, t.b.x) : std::max(t.a.y, t.b.y);
    return std::min(s_hi, t_hi) - std::max(s_lo, t_lo) > 0;
  }
  return false;
}

double segment_length(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

// Angle at a shared endpoint, folded into [0, 90].
std::optional<double> pair_angle(const Segment& s, const Segment& t) {
  Point shared, sa, ta;
  if (same_point(s.a, t.a)) { shared = s.a; sa = s.b; ta = t.b; }
  else if (same_point(s.a, t.b)) { shared = s.a; sa = s.b; ta = t.a; }
  else if (same_point(s.b, t.a)) { shared = s.b; sa = s.a; ta = t.b; }
  else if (same_point(s.b, t.b)) { shared = s.b; sa = s.a; ta = t.a; }
  else return std::nullopt;
  double ux = sa.x - shared.x, uy = sa.y - shared.y;
  double vx = ta.x - shared.x, vy = ta.y - shared.y;
  double lu = std::hypot(ux, uy), lv = std::hypot(vx, vy);
  if (lu == 0 || lv == 0) return std::nullopt;
  double c = (ux * vx + uy * vy) / (lu * lv);
  c = std::clamp(c, -1.0, 1.0);
  double deg = std::acos(c) * 180.0 / 3.14159265358979323846;
  if (deg > 90.0) deg = 180.0 - deg;
  return deg;
}

bool boxes_overlap(const Box& a, const Box& b) {
  double w = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  double h = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  return w > 0 && h > 0;
}

bool point_strictly_inside(const Point& p, const Box& b) {
  return p.x > b.x && p.x < b.x + b.w && p.y > b.y && p.y < b.y + b.h;
}

// Segment passes through the box interior.
bool segment_crosses_box(const Point& a, const Point& b, const Box& box) {
  if (point_strictly_inside(a, box) || point_strictly_inside(b, box)) return true;
  double t0 = 0.0, t1 = 1.0;
  double dx = b.x - a.x, dy = b.y - a.y;
  auto clip = [&](double p, double q) {
    if (p == 0) return q >= 0;
    double r = q / p;
    if (p < 0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  if (!clip(-dx, a.x - box.x)) return false;
  if (!clip(dx, box.x + box.w - a.x)) return false;
  if (!clip(-dy, a.y - box.y)) return false;
  if (!clip(dy, box.y + box.h - a.y)) return false;
  if (t0 >= t1) return false;
  double mid = (t0 + t1) / 2;
  return point_strictly_inside({a.x + dx * mid, a.y + dy * mid}, box);
}

std::vector<Box> all_label_boxes(const LayoutModel& l) {
  std::vector<Box> boxes;
  for (const LayoutLabel& lab : l.labels) boxes.push_back(lab.box);
  for (const LayoutEdge& e : l.edges) {
    if (e.label) boxes.push_back(*e.label);
  }
  return boxes;
}

int count_label_overlaps(const LayoutModel& l, std::vector<std::string>* descriptions) {
  std::vector<Box> boxes = all_label_boxes(l);
  std::vector<Segment> segments = all_segments(l);
  int count = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (boxes_overlap(boxes[i], boxes[j])) {
        ++count;
        if (descriptions)
          descriptions->push_back("label " + std::to_string(i) + " overlaps label " +
                                  std::to_string(j));
      }
    }
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t s = 0; s < segments.size(); ++s) {
      if (segment_crosses_box(segments[s].a, segments[s].b, boxes[i])) {
        ++count;
        if (descriptions)
          descriptions->push_back("label " + std::to_string(i) + " overlaps edge '" +
                                  l.edges[segments[s].edge].path + "'");
      }
    }
  }
  return count;
}

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

LayoutModel parse_layout(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("layout: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("layout: expected a JSON object");
  reject_unknown_keys(doc, {"nodes", "edges", "labels"}, "layout");

  LayoutModel layout;
  if (doc.contains("nodes")) {
    if (!doc["nodes"].is_array()) throw FormatError("layout.nodes: expected an array");
    std::size_t i = 0;
    for (const auto& item : doc["nodes"]) {
      std::string where = "nodes[" + std::to_string(i++) + "]";
      if (!item.is_object()) throw FormatError(where + ": expected an object");
      reject_unknown_keys(item, {"path", "x", "y", "w", "h"}, where);
      LayoutNode node;
      node.path = require_string(item, "path", where);
      node.box = parse_box(item, where, /*positive_extent=*/true);
      layout.nodes.push_back(std::move(node));
    }
  }
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw FormatError("layout.edges: expected an array");
    std::size_t i = 0;
    for (const auto& item : doc["edges"]) {
      std::string where = "edges[" + std::to_string(i++) + "]";
      if (!item.is_object()) throw FormatError(where + ": expected an object");
      reject_unknown_keys(item, {"path", "kind", "points", "label"}, where);
      LayoutEdge edge;
      edge.path = require_string(item, "path", where);
      std::string kind = require_string(item, "kind", where);
      if (kind == "reference") edge.kind = EdgeKind::Reference;
      else if (kind == "supertype") edge.kind = EdgeKind::Supertype;
      else throw FormatError(where + ".kind: expected 'reference' or 'supertype'");
      if (!item.contains("points") || !item["points"].is_array())
        throw FormatError(where + ".points: expected an array");
      std::size_t p = 0;
      for (const auto& pt : item["points"]) {
        std::string pwhere = where + ".points[" + std::to_string(p++) + "]";
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
          throw FormatError(pwhere + ": expected [x, y]");
        edge.points.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      if (edge.points.size() < 2)
        throw FormatError(where + ".points: a polyline needs at least 2 points");
      if (item.contains("label")) {
        std::string lwhere = where + ".label";
        if (!item["label"].is_object()) throw FormatError(lwhere + ": expected an object");
        reject_unknown_keys(item["label"], {"x", "y", "w", "h"}, lwhere);
        edge.label = parse_box(item["label"], lwhere, /*positive_extent=*/true);
      }
      layout.edges.push_back(std::move(edge));
    }
  }
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw FormatError("layout.labels: expected an array");
    std::size_t i = 0;
    for (const auto& item : doc["labels"]) {
      std::string where = "labels[" + std::to_string(i++) + "]";
      if (!item.is_object()) throw FormatError(where + ": expected an object");
      reject_unknown_keys(item, {"x", "y", "w", "h", "text"}, where);
      LayoutLabel label;
      label.box = parse_box(item, where, /*positive_extent=*/true);
      if (item.contains("text")) {
        if (!item["text"].is_string()) throw FormatError(where + ".text: expected a string");
        label.text = item["text"].get<std::string>();
      }
      layout.labels.push_back(std::move(label));
    }
  }
  return layout;
}

std::string serialize_layout(const LayoutModel& l) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const LayoutNode& n : l.nodes) {
    ordered_json item;
    item["path"] = n.path;
    item["x"] = n.box.x;
    item["y"] = n.box.y;
    item["w"] = n.box.w;
    item["h"] = n.box.h;
    doc["nodes"].push_back(std::move(item));
  }
  doc["edges"] = ordered_json::array();
  for (const LayoutEdge& e : l.edges) {
    ordered_json item;
    item["path"] = e.path;
    item["kind"] = e.kind == EdgeKind::Reference ? "reference" : "supertype";
    item["points"] = ordered_json::array();
    for (const Point& p : e.points) item["points"].push_back({p.x, p.y});
    if (e.label) {
      item["label"]["x"] = e.label->x;
      item["label"]["y"] = e.label->y;
      item["label"]["w"] = e.label->w;
      item["label"]["h"] = e.label->h;
    }
    doc["edges"].push_back(std::move(item));
  }
  doc["labels"] = ordered_json::array();
  for (const LayoutLabel& lab : l.labels) {
    ordered_json item;
    item["x"] = lab.box.x;
    item["y"] = lab.box.y;
    item["w"] = lab.box.w;
    item["h"] = lab.box.h;
    if (!lab.text.empty()) item["text"] = lab.text;
    doc["labels"].push_back(std::move(item));
  }
  return doc.dump(2) + "\n";
}

int edge_crossings(const LayoutModel& l) {
  std::vector<Segment> segments = all_segments(l);
  int count = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      if (segments[i].edge == segments[j].edge) continue;
      if (segments_cross(segments[i], segments[j])) ++count;
    }
  }
  return count;
}

std::optional<double> min_edge_angle(const LayoutModel& l) {
  std::vector<Segment> segments = all_segments(l);
  std::optional<double> best;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      std::optional<double> angle = pair_angle(segments[i], segments[j]);
      if (angle && (!best || *angle < *best)) best = angle;
    }
  }
  return best;
}

LayoutMetrics compute_metrics(const LayoutModel& l) {
  LayoutMetrics metrics;
  metrics.crossings = edge_crossings(l);
  metrics.min_edge_angle_deg = min_edge_angle(l);

  for (const LayoutEdge& e : l.edges) {
    metrics.bends += std::max(0, static_cast<int>(e.points.size()) - 2);
    double length = 0;
    for (std::size_t i = 0; i + 1 < e.points.size(); ++i)
      length += segment_length(e.points[i], e.points[i + 1]);
    metrics.total_edge_length += length;
    metrics.longest_edge = std::max(metrics.longest_edge, length);
  }

  bool any = false;
  double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
  double max_x = -min_x, max_y = -min_y;
  auto extend_box = [&](const Box& b) {
    any = true;
    min_x = std::min(min_x, b.x);
    min_y = std::min(min_y, b.y);
    max_x = std::max(max_x, b.x + b.w);
    max_y = std::max(max_y, b.y + b.h);
  };
  auto extend_point = [&](const Point& p) {
    any = true;
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  };
  for (const LayoutNode& n : l.nodes) extend_box(n.box);
  for (const LayoutLabel& lab : l.labels) extend_box(lab.box);
  for (const LayoutEdge& e : l.edges) {
    for (const Point& p : e.points) extend_point(p);
    if (e.label) extend_box(*e.label);
  }
  metrics.diagram_area = any ? (max_x - min_x) * (max_y - min_y) : 0;

  metrics.label_overlaps = count_label_overlaps(l, nullptr);
  return metrics;
}

std::vector<Diagnostic> layout_report(const EcoreModel& m, const LayoutModel& l,
                                      const RuleConfig& cfg) {
  std::vector<Diagnostic> out;
  std::string root_path = m.root ? m.root->path : "/";
  SourceLoc root_loc = m.root ? m.root->loc : SourceLoc{};

  LayoutMetrics metrics = compute_metrics(l);

  if (metrics.min_edge_angle_deg && *metrics.min_edge_angle_deg < cfg.min_angle_deg) {
    out.push_back(make_diagnostic(
        "EMP-101", root_path, root_loc,
        "minimum edge angle " + fmt(*metrics.min_edge_angle_deg) +
            " deg is below the threshold of " + fmt(cfg.min_angle_deg) + " deg"));
  }

  std::vector<std::string> overlaps;
  count_label_overlaps(l, &overlaps);
  for (std::size_t i = static_cast<std::size_t>(cfg.max_label_overlaps); i < overlaps.size(); ++i) {
    out.push_back(make_diagnostic("EMP-102", root_path, root_loc, overlaps[i]));
  }

  std::string summary = "layout metrics: crossings=" + std::to_string(metrics.crossings) +
                        " bends=" + std::to_string(metrics.bends) +
                        " total_edge_length=" + fmt(metrics.total_edge_length) +
                        " longest_edge=" + fmt(metrics.longest_edge) +
                        " min_edge_angle=" +
                        (metrics.min_edge_angle_deg ? fmt(*metrics.min_edge_angle_deg) : "n/a") +
                        " area=" + fmt(metrics.diagram_area) +
                        " label_overlaps=" + std::to_string(metrics.label_overlaps);
  out.push_back(make_diagnostic("EMP-103", root_path, root_loc, summary));

  for (const LayoutNode& n : l.nodes) {
    if (!m.find(n.path)) {
      out.push_back(make_diagnostic(
          "EMP-104", root_path, root_loc,
          "layout references unknown element '" + n.path + "'"));
    }
  }
  for (const LayoutEdge& e : l.edges) {
    if (!m.find(e.path)) {
      out.push_back(make_diagnostic(
          "EMP-104", root_path, root_loc,
          "layout references unknown element '" + e.path + "'"));
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace ecorelint
