#include "ecorelint/exports.hpp"

#include "ecorelint/xml.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ecorelint {

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string type_label(const TypeRef& ref) {
  if (!ref.present()) return "?";
  if (ref.resolved) return ref.resolved->name;
  std::string_view raw = ref.raw;
  std::size_t slash = raw.find_last_of('/');
  return std::string(slash == std::string_view::npos ? raw : raw.substr(slash + 1));
}

std::string feature_line(const FeatureNode& f) {
  std::string line = f.name + " : " + type_label(f.e_type);
  if (f.upper_bound != 1 || f.lower_bound != 0) {
    line += " [" + std::to_string(f.lower_bound) + "..";
    line += f.upper_bound == -1 ? "*" : std::to_string(f.upper_bound);
    line += "]";
  }
  return line;
}

const AnnotationNode* doc_annotation(const Node& n) {
  for (const AnnotationNode* a : annotations(n)) {
    if (a->source == kGenModelSource) {
      for (const DetailNode* d : details(*a)) {
        if (d->key == "documentation") return a;
      }
    }
  }
  return nullptr;
}

std::string documentation_text(const Node& n) {
  if (const AnnotationNode* a = doc_annotation(n)) {
    for (const DetailNode* d : details(*a)) {
      if (d->key == "documentation") return d->value;
    }
  }
  return {};
}

}  // namespace

std::string export_svg(const EcoreModel& m, const LayoutModel& layout) {
  std::ostringstream out;

  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  bool any = false;
  auto extend = [&](double x, double y) {
    if (!any) {
      min_x = max_x = x;
      min_y = max_y = y;
      any = true;
    } else {
      min_x = std::min(min_x, x);
      min_y = std::min(min_y, y);
      max_x = std::max(max_x, x);
      max_y = std::max(max_y, y);
    }
  };
  for (const LayoutNode& n : layout.nodes) {
    extend(n.box.x, n.box.y);
    extend(n.box.x + n.box.w, n.box.y + n.box.h);
  }
  for (const LayoutEdge& e : layout.edges) {
    for (const Point& p : e.points) extend(p.x, p.y);
  }
  for (const LayoutLabel& l : layout.labels) {
    extend(l.box.x, l.box.y);
    extend(l.box.x + l.box.w, l.box.y + l.box.h);
  }
  const double margin = 10;
  double view_x = any ? min_x - margin : 0;
  double view_y = any ? min_y - margin : 0;
  double view_w = any ? (max_x - min_x) + 2 * margin : 2 * margin;
  double view_h = any ? (max_y - min_y) + 2 * margin : 2 * margin;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(view_x) << ' '
      << fmt(view_y) << ' ' << fmt(view_w) << ' ' << fmt(view_h) << "\">\n";
  out << "  <style>\n"
         "    .node rect { fill: #fdfdf6; stroke: #333; stroke-width: 1; }\n"
         "    .node text { font: 11px sans-serif; fill: #111; }\n"
         "    .node .title { font-weight: bold; }\n"
         "    .edge-reference { fill: none; stroke: #555; stroke-width: 1; }\n"
         "    .edge-supertype { fill: none; stroke: #0a58ca; stroke-width: 2; "
         "stroke-dasharray: 6 3; }\n"
         "    .label text { font: 10px sans-serif; fill: #333; }\n"
         "  </style>\n";

  // Edges first so node boxes sit on top of them.
  for (const LayoutEdge& e : layout.edges) {
    const char* cls = e.kind == EdgeKind::Supertype ? "edge-supertype" : "edge-reference";
    out << "  <polyline class=\"" << cls << "\" points=\"";
    for (std::size_t i = 0; i < e.points.size(); ++i) {
      if (i) out << ' ';
      out << fmt(e.points[i].x) << ',' << fmt(e.points[i].y);
    }
    out << "\"/>\n";
  }

  for (const LayoutNode& n : layout.nodes) {
    const Node* element = m.find(n.path);
    if (!element) continue;  // stale geometry is the rules' business
    out << "  <g class=\"node\">\n";
    out << "    <rect x=\"" << fmt(n.box.x) << "\" y=\"" << fmt(n.box.y) << "\" width=\""
        << fmt(n.box.w) << "\" height=\"" << fmt(n.box.h) << "\"/>\n";
    out << "    <text class=\"title\" x=\"" << fmt(n.box.x + 6) << "\" y=\""
        << fmt(n.box.y + 14) << "\">" << xml_escape_text(element->name) << "</text>\n";
    double line_y = n.box.y + 28;
    if (const ClassNode* cls = node_cast<ClassNode>(element)) {
      for (const FeatureNode* f : features(*cls)) {
        out << "    <text x=\"" << fmt(n.box.x + 6) << "\" y=\"" << fmt(line_y) << "\">"
            << xml_escape_text(feature_line(*f)) << "</text>\n";
        line_y += 12;
      }
    } else if (const EnumNode* en = node_cast<EnumNode>(element)) {
      for (const EnumLiteralNode* lit : literals(*en)) {
        out << "    <text x=\"" << fmt(n.box.x + 6) << "\" y=\"" << fmt(line_y) << "\">"
            << xml_escape_text(lit->name) << " = " << lit->value << "</text>\n";
        line_y += 12;
      }
    } else if (const DataTypeNode* dt = node_cast<DataTypeNode>(element)) {
      if (dt->instance_type_name) {
        out << "    <text x=\"" << fmt(n.box.x + 6) << "\" y=\"" << fmt(line_y) << "\">"
            << xml_escape_text(*dt->instance_type_name) << "</text>\n";
      }
    }
    out << "  </g>\n";
  }

  for (const LayoutLabel& l : layout.labels) {
    out << "  <g class=\"label\"><text x=\"" << fmt(l.box.x) << "\" y=\""
        << fmt(l.box.y + l.box.h) << "\">" << xml_escape_text(l.text) << "</text></g>\n";
  }

  out << "</svg>\n";
  return out.str();
}

std::string export_docs(const EcoreModel& m) {
  std::ostringstream out;
  if (!m.root) return "";
  out << "# " << m.root->name << "\n";

  std::vector<const Node*> undocumented;

  std::function<void(const PackageNode&)> visit_package = [&](const PackageNode& pkg) {
    for (const Node* c : classifiers(pkg)) {
      std::string class_doc = documentation_text(*c);
      std::vector<std::pair<const FeatureNode*, std::string>> feature_docs;
      if (const ClassNode* cls = node_cast<ClassNode>(c)) {
        for (const FeatureNode* f : features(*cls)) {
          std::string doc = documentation_text(*f);
          if (!doc.empty()) feature_docs.push_back({f, doc});
          else undocumented.push_back(f);
        }
      }
      if (class_doc.empty() && feature_docs.empty()) {
        undocumented.push_back(c);
        continue;
      }
      if (class_doc.empty()) undocumented.push_back(c);
      out << "\n## " << c->name << "\n";
      if (!class_doc.empty()) out << "\n" << class_doc << "\n";
      for (const auto& [f, doc] : feature_docs) {
        out << "\n### " << c->name << "." << f->name << "\n\n" << doc << "\n";
      }
    }
    for (const PackageNode* sub : subpackages(pkg)) visit_package(*sub);
  };
  visit_package(*m.root);

  out << "\n## Appendix: undocumented elements\n\n";
  if (undocumented.empty()) {
    out << "(none)\n";
  } else {
    for (const Node* n : undocumented) out << "- `" << n->path << "`\n";
  }
  return out.str();
}

}  // namespace ecorelint
