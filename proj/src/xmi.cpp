#include "ecorelint/xmi.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecorelint/errors.hpp"
#include "ecorelint/xml.hpp"

namespace ecorelint {

namespace {

std::string loc_text(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

int parse_int_attr(const XmlAttr& attr) {
  const std::string& v = attr.value;
  std::size_t i = 0;
  bool neg = false;
  if (i < v.size() && (v[i] == '-' || v[i] == '+')) {
    neg = v[i] == '-';
    ++i;
  }
  if (i >= v.size())
    throw FormatError(loc_text(attr.loc) + ": attribute '" + attr.qname +
                      "' is not an integer: '" + v + "'");
  long out = 0;
  for (; i < v.size(); ++i) {
    if (v[i] < '0' || v[i] > '9')
      throw FormatError(loc_text(attr.loc) + ": attribute '" + attr.qname +
                        "' is not an integer: '" + v + "'");
    out = out * 10 + (v[i] - '0');
    if (out > 2147483647L)
      throw FormatError(loc_text(attr.loc) + ": attribute '" + attr.qname +
                        "' is out of range: '" + v + "'");
  }
  return static_cast<int>(neg ? -out : out);
}

long parse_long_attr(const XmlAttr& attr) { return parse_int_attr(attr); }

bool parse_bool_attr(const XmlAttr& attr) {
  if (attr.value == "true") return true;
  if (attr.value == "false") return false;
  throw FormatError(loc_text(attr.loc) + ": attribute '" + attr.qname +
                    "' is not a boolean: '" + attr.value + "'");
}

std::vector<TypeRef> parse_ref_list(const std::string& value) {
  std::vector<TypeRef> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && value[i] == ' ') ++i;
    std::size_t start = i;
    while (i < value.size() && value[i] != ' ') ++i;
    if (i > start) out.push_back(TypeRef{value.substr(start, i - start), nullptr});
  }
  return out;
}

struct Converter {
  std::string_view source;
  std::map<std::string, SourceLoc> seen_ids;

  using Scope = std::map<std::string, std::string>;

  Scope scope_with(const XmlElement& elem, Scope scope) {
    for (const XmlAttr& a : elem.attrs) {
      if (a.qname == "xmlns") scope[""] = a.value;
      else if (a.qname.rfind("xmlns:", 0) == 0) scope[a.qname.substr(6)] = a.value;
    }
    return scope;
  }

  // Resolves a QName attribute value like "ecore:EClass" against the scope.
  std::pair<std::string, std::string> resolve_qname(const std::string& value,
                                                    const Scope& scope,
                                                    const SourceLoc& loc) {
    std::string prefix, local;
    std::size_t colon = value.find(':');
    if (colon == std::string::npos) {
      local = value;
    } else {
      prefix = value.substr(0, colon);
      local = value.substr(colon + 1);
    }
    auto it = scope.find(prefix);
    if (it == scope.end())
      throw FormatError(loc_text(loc) + ": unbound namespace prefix '" + prefix + "'");
    return {it->second, local};
  }

  void note_id(const XmlAttr& attr) {
    auto [it, inserted] = seen_ids.emplace(attr.value, attr.loc);
    if (!inserted)
      throw FormatError(loc_text(attr.loc) + ": duplicate xmi:id '" + attr.value +
                        "' (first at " + loc_text(it->second) + ")");
  }

  std::unique_ptr<OpaqueNode> opaque_element(const XmlElement& elem) {
    auto node = std::make_unique<OpaqueNode>();
    node->is_element = true;
    node->text = std::string(source.substr(elem.src_begin, elem.src_end - elem.src_begin));
    node->loc = elem.loc;
    return node;
  }

  std::unique_ptr<OpaqueNode> opaque_fragment(const XmlElement::Child& child) {
    auto node = std::make_unique<OpaqueNode>();
    node->is_element = false;
    node->text = child.fragment;
    node->loc = child.loc;
    return node;
  }

  std::unique_ptr<PackageNode> convert_package(const XmlElement& elem, const Scope& scope,
                                               bool root, std::string* xmi_version) {
    auto pkg = std::make_unique<PackageNode>();
    pkg->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      if (root) {
        if (a.qname == "xmi:version") {
          if (xmi_version) *xmi_version = a.value;
          continue;  // canonical header re-emits these
        }
        if (a.qname == "xmlns:xmi" || a.qname == "xmlns:xsi") continue;
        if (a.qname.rfind("xmlns", 0) == 0 && a.value == kEcoreNsUri) continue;
      }
      pkg->attr_order.push_back(a.qname);
      if (a.qname == "name") pkg->name = a.value;
      else if (a.qname == "nsURI") pkg->ns_uri = a.value;
      else if (a.qname == "nsPrefix") pkg->ns_prefix = a.value;
      else if (a.qname == "xmi:id") { pkg->xmi_id = a.value; note_id(a); }
      else if (a.qname == "xsi:type") { /* implied by position */ }
      else pkg->extra_attrs.push_back({a.qname, a.value});
    }
    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) {
        pkg->children.push_back(opaque_fragment(child));
        continue;
      }
      const XmlElement& ce = *child.element;
      Scope child_scope = scope_with(ce, scope);
      if (ce.qname == "eClassifiers") {
        pkg->children.push_back(convert_classifier(ce, child_scope));
      } else if (ce.qname == "eSubpackages") {
        pkg->children.push_back(convert_package(ce, child_scope, false, nullptr));
      } else if (ce.qname == "eAnnotations") {
        pkg->children.push_back(convert_annotation(ce, child_scope));
      } else {
        pkg->children.push_back(opaque_element(ce));
      }
    }
    return pkg;
  }

  std::unique_ptr<Node> convert_classifier(const XmlElement& elem, const Scope& scope) {
    const XmlAttr* type_attr = elem.attr("xsi:type");
    if (!type_attr)
      throw FormatError(loc_text(elem.loc) + ": eClassifiers element without xsi:type");
    auto [ns, local] = resolve_qname(type_attr->value, scope, type_attr->loc);
    if (ns != kEcoreNsUri)
      throw FormatError(loc_text(type_attr->loc) + ": xsi:type '" + type_attr->value +
                        "' is not an Ecore classifier type");
    if (local == "EClass") return convert_class(elem, scope);
    if (local == "EDataType") return convert_datatype(elem, scope);
    if (local == "EEnum") return convert_enum(elem, scope);
    throw FormatError(loc_text(type_attr->loc) + ": unsupported classifier type '" +
                      type_attr->value + "'");
  }

  std::unique_ptr<Node> convert_class(const XmlElement& elem, const Scope& scope) {
    auto cls = std::make_unique<ClassNode>();
    cls->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      cls->attr_order.push_back(a.qname);
      if (a.qname == "xsi:type") continue;
      if (a.qname == "name") cls->name = a.value;
      else if (a.qname == "abstract") cls->abstract_flag = parse_bool_attr(a);
      else if (a.qname == "interface") cls->interface_flag = parse_bool_attr(a);
      else if (a.qname == "eSuperTypes") cls->super_types = parse_ref_list(a.value);
      else if (a.qname == "xmi:id") { cls->xmi_id = a.value; note_id(a); }
      else cls->extra_attrs.push_back({a.qname, a.value});
    }
    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) {
        cls->children.push_back(opaque_fragment(child));
        continue;
      }
      const XmlElement& ce = *child.element;
      Scope child_scope = scope_with(ce, scope);
      if (ce.qname == "eStructuralFeatures") {
        cls->children.push_back(convert_feature(ce, child_scope));
      } else if (ce.qname == "eOperations") {
        cls->children.push_back(convert_operation(ce, child_scope));
      } else if (ce.qname == "eAnnotations") {
        cls->children.push_back(convert_annotation(ce, child_scope));
      } else {
        cls->children.push_back(opaque_element(ce));
      }
    }
    return cls;
  }

  std::unique_ptr<Node> convert_datatype(const XmlElement& elem, const Scope& scope) {
    auto dt = std::make_unique<DataTypeNode>();
    dt->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      dt->attr_order.push_back(a.qname);
      if (a.qname == "xsi:type") continue;
      if (a.qname == "name") dt->name = a.value;
      else if (a.qname == "instanceTypeName") dt->instance_type_name = a.value;
      else if (a.qname == "xmi:id") { dt->xmi_id = a.value; note_id(a); }
      else dt->extra_attrs.push_back({a.qname, a.value});
    }
    convert_generic_children(*dt, elem, scope);
    return dt;
  }

  std::unique_ptr<Node> convert_enum(const XmlElement& elem, const Scope& scope) {
    auto en = std::make_unique<EnumNode>();
    en->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      en->attr_order.push_back(a.qname);
      if (a.qname == "xsi:type") continue;
      if (a.qname == "name") en->name = a.value;
      else if (a.qname == "xmi:id") { en->xmi_id = a.value; note_id(a); }
      else en->extra_attrs.push_back({a.qname, a.value});
    }
    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) {
        en->children.push_back(opaque_fragment(child));
        continue;
      }
      const XmlElement& ce = *child.element;
      Scope child_scope = scope_with(ce, scope);
      if (ce.qname == "eLiterals") {
        auto lit = std::make_unique<EnumLiteralNode>();
        lit->loc = ce.loc;
        for (const XmlAttr& a : ce.attrs) {
          lit->attr_order.push_back(a.qname);
          if (a.qname == "name") lit->name = a.value;
          else if (a.qname == "value") lit->value = parse_long_attr(a);
          else if (a.qname == "literal") lit->literal = a.value;
          else if (a.qname == "xmi:id") { lit->xmi_id = a.value; note_id(a); }
          else lit->extra_attrs.push_back({a.qname, a.value});
        }
        convert_generic_children(*lit, ce, child_scope);
        en->children.push_back(std::move(lit));
      } else if (ce.qname == "eAnnotations") {
        en->children.push_back(convert_annotation(ce, child_scope));
      } else {
        en->children.push_back(opaque_element(ce));
      }
    }
    return en;
  }

  std::unique_ptr<Node> convert_feature(const XmlElement& elem, const Scope& scope) {
    const XmlAttr* type_attr = elem.attr("xsi:type");
    if (!type_attr)
      throw FormatError(loc_text(elem.loc) + ": eStructuralFeatures element without xsi:type");
    auto [ns, local] = resolve_qname(type_attr->value, scope, type_attr->loc);
    if (ns != kEcoreNsUri || (local != "EAttribute" && local != "EReference"))
      throw FormatError(loc_text(type_attr->loc) + ": unsupported feature type '" +
                        type_attr->value + "'");
    bool is_ref = local == "EReference";
    auto feat = std::make_unique<FeatureNode>(is_ref ? NodeKind::Reference : NodeKind::Attribute);
    feat->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      feat->attr_order.push_back(a.qname);
      if (a.qname == "xsi:type") continue;
      if (a.qname == "name") feat->name = a.value;
      else if (a.qname == "eType") feat->e_type = {a.value, nullptr};
      else if (a.qname == "lowerBound") feat->lower_bound = parse_int_attr(a);
      else if (a.qname == "upperBound") feat->upper_bound = parse_int_attr(a);
      else if (a.qname == "changeable") feat->changeable = parse_bool_attr(a);
      else if (a.qname == "derived") feat->derived = parse_bool_attr(a);
      else if (a.qname == "defaultValueLiteral") feat->default_value_literal = a.value;
      else if (is_ref && a.qname == "containment") feat->containment = parse_bool_attr(a);
      else if (is_ref && a.qname == "eOpposite") feat->opposite = {a.value, nullptr};
      else if (a.qname == "xmi:id") { feat->xmi_id = a.value; note_id(a); }
      else feat->extra_attrs.push_back({a.qname, a.value});
    }
    convert_generic_children(*feat, elem, scope);
    return feat;
  }

  std::unique_ptr<Node> convert_operation(const XmlElement& elem, const Scope& scope) {
    auto op = std::make_unique<OperationNode>();
    op->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      op->attr_order.push_back(a.qname);
      if (a.qname == "name") op->name = a.value;
      else if (a.qname == "eType") op->e_type = {a.value, nullptr};
      else if (a.qname == "lowerBound") op->lower_bound = parse_int_attr(a);
      else if (a.qname == "upperBound") op->upper_bound = parse_int_attr(a);
      else if (a.qname == "xmi:id") { op->xmi_id = a.value; note_id(a); }
      else op->extra_attrs.push_back({a.qname, a.value});
    }
    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) {
        op->children.push_back(opaque_fragment(child));
        continue;
      }
      const XmlElement& ce = *child.element;
      Scope child_scope = scope_with(ce, scope);
      if (ce.qname == "eParameters") {
        auto param = std::make_unique<ParameterNode>();
        param->loc = ce.loc;
        for (const XmlAttr& a : ce.attrs) {
          param->attr_order.push_back(a.qname);
          if (a.qname == "name") param->name = a.value;
          else if (a.qname == "eType") param->e_type = {a.value, nullptr};
          else if (a.qname == "lowerBound") param->lower_bound = parse_int_attr(a);
          else if (a.qname == "upperBound") param->upper_bound = parse_int_attr(a);
          else if (a.qname == "xmi:id") { param->xmi_id = a.value; note_id(a); }
          else param->extra_attrs.push_back({a.qname, a.value});
        }
        convert_generic_children(*param, ce, child_scope);
        op->children.push_back(std::move(param));
      } else if (ce.qname == "eAnnotations") {
        op->children.push_back(convert_annotation(ce, child_scope));
      } else {
        op->children.push_back(opaque_element(ce));
      }
    }
    return op;
  }

  std::unique_ptr<Node> convert_annotation(const XmlElement& elem, const Scope& scope) {
    auto ann = std::make_unique<AnnotationNode>();
    ann->loc = elem.loc;
    for (const XmlAttr& a : elem.attrs) {
      ann->attr_order.push_back(a.qname);
      if (a.qname == "source") ann->source = a.value;
      else if (a.qname == "xmi:id") { ann->xmi_id = a.value; note_id(a); }
      else ann->extra_attrs.push_back({a.qname, a.value});
    }
    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) {
        ann->children.push_back(opaque_fragment(child));
        continue;
      }
      const XmlElement& ce = *child.element;
      if (ce.qname == "details") {
        auto det = std::make_unique<DetailNode>();
        det->loc = ce.loc;
        for (const XmlAttr& a : ce.attrs) {
          det->attr_order.push_back(a.qname);
          if (a.qname == "key") det->key = a.value;
          else if (a.qname == "value") det->value = a.value;
          else if (a.qname == "xmi:id") { det->xmi_id = a.value; note_id(a); }
          else det->extra_attrs.push_back({a.qname, a.value});
        }
        for (const auto& dc : ce.children) {
          if (dc.type == XmlElement::Child::Type::Fragment)
            det->children.push_back(opaque_fragment(dc));
          else
            det->children.push_back(opaque_element(*dc.element));
        }
        ann->children.push_back(std::move(det));
      } else if (ce.qname == "eAnnotations") {
        ann->children.push_back(convert_annotation(ce, scope_with(ce, scope)));
      } else {
        ann->children.push_back(opaque_element(ce));
      }
    }
    return ann;
  }

  // Children of leaf-ish elements: annotations are recognized, everything
  // else is preserved opaque.
  void convert_generic_children(Node& node, const XmlElement& elem, const Scope& scope) {
    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) {
        node.children.push_back(opaque_fragment(child));
        continue;
      }
      const XmlElement& ce = *child.element;
      if (ce.qname == "eAnnotations") {
        node.children.push_back(convert_annotation(ce, scope_with(ce, scope)));
      } else {
        node.children.push_back(opaque_element(ce));
      }
    }
  }
};

// ---------------------------------------------------------------------------
// Writer
// ---------------------------------------------------------------------------

const std::vector<std::string>& schema_attr_order(NodeKind kind) {
  static const std::vector<std::string> pkg = {"name", "nsURI", "nsPrefix"};
  static const std::vector<std::string> cls = {"name", "abstract", "interface", "eSuperTypes"};
  static const std::vector<std::string> dt = {"name", "instanceTypeName"};
  static const std::vector<std::string> en = {"name"};
  static const std::vector<std::string> lit = {"name", "value", "literal"};
  static const std::vector<std::string> feat = {"name",       "lowerBound",          "upperBound",
                                                "eType",      "changeable",          "defaultValueLiteral",
                                                "derived",    "containment",         "eOpposite"};
  static const std::vector<std::string> op = {"name", "lowerBound", "upperBound", "eType"};
  static const std::vector<std::string> ann = {"source"};
  static const std::vector<std::string> det = {"key", "value"};
  static const std::vector<std::string> none;
  switch (kind) {
    case NodeKind::Package: return pkg;
    case NodeKind::Class: return cls;
    case NodeKind::DataType: return dt;
    case NodeKind::Enum: return en;
    case NodeKind::EnumLiteral: return lit;
    case NodeKind::Attribute:
    case NodeKind::Reference: return feat;
    case NodeKind::Operation:
    case NodeKind::Parameter: return op;
    case NodeKind::Annotation: return ann;
    case NodeKind::Detail: return det;
    default: return none;
  }
}

std::string join_refs(const std::vector<TypeRef>& refs) {
  std::string out;
  for (const TypeRef& r : refs) {
    if (!out.empty()) out += ' ';
    out += r.raw;
  }
  return out;
}

// Current value of a known attribute, or nullopt when it is at its default
// and gets omitted.
std::optional<std::string> known_attr_value(const Node& n, const std::string& attr) {
  switch (n.kind) {
    case NodeKind::Package: {
      auto& p = static_cast<const PackageNode&>(n);
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      if (attr == "nsURI") return p.ns_uri.empty() ? std::nullopt : std::optional(p.ns_uri);
      if (attr == "nsPrefix") return p.ns_prefix.empty() ? std::nullopt : std::optional(p.ns_prefix);
      break;
    }
    case NodeKind::Class: {
      auto& c = static_cast<const ClassNode&>(n);
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      if (attr == "abstract") return c.abstract_flag ? std::optional<std::string>("true") : std::nullopt;
      if (attr == "interface") return c.interface_flag ? std::optional<std::string>("true") : std::nullopt;
      if (attr == "eSuperTypes")
        return c.super_types.empty() ? std::nullopt : std::optional(join_refs(c.super_types));
      break;
    }
    case NodeKind::DataType: {
      auto& d = static_cast<const DataTypeNode&>(n);
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      if (attr == "instanceTypeName") return d.instance_type_name;
      break;
    }
    case NodeKind::Enum: {
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      break;
    }
    case NodeKind::EnumLiteral: {
      auto& l = static_cast<const EnumLiteralNode&>(n);
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      if (attr == "value") return l.value == 0 ? std::nullopt : std::optional(std::to_string(l.value));
      if (attr == "literal") return l.literal;
      break;
    }
    case NodeKind::Attribute:
    case NodeKind::Reference: {
      auto& f = static_cast<const FeatureNode&>(n);
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      if (attr == "eType") return f.e_type.present() ? std::optional(f.e_type.raw) : std::nullopt;
      if (attr == "lowerBound")
        return f.lower_bound == 0 ? std::nullopt : std::optional(std::to_string(f.lower_bound));
      if (attr == "upperBound")
        return f.upper_bound == 1 ? std::nullopt : std::optional(std::to_string(f.upper_bound));
      if (attr == "changeable") return f.changeable ? std::nullopt : std::optional<std::string>("false");
      if (attr == "derived") return f.derived ? std::optional<std::string>("true") : std::nullopt;
      if (attr == "defaultValueLiteral") return f.default_value_literal;
      if (f.is_reference() && attr == "containment")
        return f.containment ? std::optional<std::string>("true") : std::nullopt;
      if (f.is_reference() && attr == "eOpposite")
        return f.opposite.present() ? std::optional(f.opposite.raw) : std::nullopt;
      break;
    }
    case NodeKind::Operation:
    case NodeKind::Parameter: {
      const TypeRef* e_type;
      int lower, upper;
      if (n.kind == NodeKind::Operation) {
        auto& o = static_cast<const OperationNode&>(n);
        e_type = &o.e_type; lower = o.lower_bound; upper = o.upper_bound;
      } else {
        auto& p = static_cast<const ParameterNode&>(n);
        e_type = &p.e_type; lower = p.lower_bound; upper = p.upper_bound;
      }
      if (attr == "name") return n.name.empty() ? std::nullopt : std::optional(n.name);
      if (attr == "eType") return e_type->present() ? std::optional(e_type->raw) : std::nullopt;
      if (attr == "lowerBound") return lower == 0 ? std::nullopt : std::optional(std::to_string(lower));
      if (attr == "upperBound") return upper == 1 ? std::nullopt : std::optional(std::to_string(upper));
      break;
    }
    case NodeKind::Annotation: {
      auto& a = static_cast<const AnnotationNode&>(n);
      if (attr == "source") return a.source.empty() ? std::nullopt : std::optional(a.source);
      break;
    }
    case NodeKind::Detail: {
      auto& d = static_cast<const DetailNode&>(n);
      if (attr == "key") return d.key;    // always written, "" allowed
      if (attr == "value") return d.value;
      break;
    }
    default:
      break;
  }
  return std::nullopt;
}

bool is_known_attr(NodeKind kind, const std::string& attr) {
  const auto& order = schema_attr_order(kind);
  for (const std::string& a : order) {
    if (a == attr) return true;
  }
  return false;
}

struct Writer {
  std::string out;

  void indent(int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void write_attrs(const Node& n, const std::optional<std::string>& xsi_type) {
    std::set<std::string> done;
    auto emit = [&](const std::string& name, const std::string& value) {
      out += ' ';
      out += name;
      out += "=\"";
      out += xml_escape_attr(value);
      out += '"';
    };
    if (xsi_type) {
      emit("xsi:type", *xsi_type);
      done.insert("xsi:type");
    }
    if (auto v = known_attr_value(n, "name")) {
      emit("name", *v);
    }
    done.insert("name");
    for (const std::string& qname : n.attr_order) {
      if (done.count(qname)) continue;
      done.insert(qname);
      if (qname == "xmi:id") {
        if (!n.xmi_id.empty()) emit("xmi:id", n.xmi_id);
        continue;
      }
      if (is_known_attr(n.kind, qname)) {
        if (auto v = known_attr_value(n, qname)) emit(qname, *v);
        continue;
      }
      for (const RawAttr& extra : n.extra_attrs) {
        if (extra.name == qname) {
          emit(extra.name, extra.value);
          break;
        }
      }
    }
    for (const std::string& qname : schema_attr_order(n.kind)) {
      if (done.count(qname)) continue;
      done.insert(qname);
      if (auto v = known_attr_value(n, qname)) emit(qname, *v);
    }
    if (!done.count("xmi:id") && !n.xmi_id.empty()) emit("xmi:id", n.xmi_id);
    for (const RawAttr& extra : n.extra_attrs) {
      if (!done.count(extra.name)) emit(extra.name, extra.value);
    }
  }

  std::optional<std::string> xsi_type_for(const Node& n, const Node* parent) {
    if (!parent) return std::nullopt;
    if (parent->kind == NodeKind::Package && is_classifier_kind(n.kind)) {
      switch (n.kind) {
        case NodeKind::Class: return "ecore:EClass";
        case NodeKind::DataType: return "ecore:EDataType";
        default: return "ecore:EEnum";
      }
    }
    if (parent->kind == NodeKind::Class &&
        (n.kind == NodeKind::Attribute || n.kind == NodeKind::Reference)) {
      return n.kind == NodeKind::Attribute ? "ecore:EAttribute" : "ecore:EReference";
    }
    return std::nullopt;
  }

  const char* element_name_for(const Node& n, const Node* parent) {
    if (!parent) return "ecore:EPackage";
    switch (n.kind) {
      case NodeKind::Package: return "eSubpackages";
      case NodeKind::Class:
      case NodeKind::DataType:
      case NodeKind::Enum: return "eClassifiers";
      case NodeKind::Attribute:
      case NodeKind::Reference: return "eStructuralFeatures";
      case NodeKind::Operation: return "eOperations";
      case NodeKind::Parameter: return "eParameters";
      case NodeKind::EnumLiteral: return "eLiterals";
      case NodeKind::Annotation: return "eAnnotations";
      case NodeKind::Detail: return "details";
      default: return nullptr;
    }
  }

  void write_node(const Node& n, const Node* parent, int depth, const EcoreModel& model) {
    if (n.kind == NodeKind::Opaque) {
      indent(depth);
      out += static_cast<const OpaqueNode&>(n).text;
      out += '\n';
      return;
    }
    const char* elem_name = element_name_for(n, parent);
    if (!elem_name) return;
    indent(depth);
    out += '<';
    out += elem_name;
    if (!parent) {
      out += " xmi:version=\"";
      out += xml_escape_attr(model.xmi_version);
      out += "\" xmlns:xmi=\"";
      out += kXmiNsUri;
      out += "\" xmlns:xsi=\"";
      out += kXsiNsUri;
      out += "\" xmlns:ecore=\"";
      out += kEcoreNsUri;
      out += '"';
    }
    write_attrs(n, xsi_type_for(n, parent));
    if (n.children.empty()) {
      out += "/>\n";
      return;
    }
    out += ">\n";
    for (const auto& child : n.children) {
      if (child) write_node(*child, &n, depth + 1, model);
    }
    indent(depth);
    out += "</";
    out += elem_name;
    out += ">\n";
  }
};

}  // namespace

EcoreModel parse_xmi(std::string_view text, std::string source_uri) {
  XmlElement doc = xml_parse(text);
  Converter converter{text, {}};
  if (doc.ns_uri != kEcoreNsUri || doc.local != "EPackage")
    throw FormatError(loc_text(doc.loc) +
                      ": root element is not an Ecore EPackage (found '" + doc.qname +
                      "' in namespace '" + doc.ns_uri + "')");
  EcoreModel model;
  model.source_uri = std::move(source_uri);
  Converter::Scope root_scope = converter.scope_with(doc, {});
  model.root = converter.convert_package(doc, root_scope, /*root=*/true, &model.xmi_version);
  model.reindex();
  return model;
}

std::string serialize_xmi(const EcoreModel& m) {
  Writer writer;
  writer.out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (m.root) writer.write_node(*m.root, nullptr, 0, m);
  return writer.out;
}

SourceMap source_map(const EcoreModel& m) {
  SourceMap map;
  for (const auto& [path, node] : m.element_index) map[path] = node->loc;
  return map;
}

}  // namespace ecorelint
