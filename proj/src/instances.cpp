#include "ecorelint/instances.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "ecorelint/errors.hpp"
#include "ecorelint/navigation.hpp"
#include "ecorelint/xml.hpp"

namespace ecorelint {

namespace {

const PackageNode* find_package_by_ns(const PackageNode& pkg, std::string_view ns_uri) {
  if (pkg.ns_uri == ns_uri) return &pkg;
  for (const PackageNode* sub : subpackages(pkg)) {
    if (const PackageNode* found = find_package_by_ns(*sub, ns_uri)) return found;
  }
  return nullptr;
}

const ClassNode* find_class(const PackageNode& pkg, std::string_view name) {
  for (const Node* c : classifiers(pkg)) {
    if (c->kind == NodeKind::Class && c->name == name)
      return static_cast<const ClassNode*>(c);
  }
  return nullptr;
}

// Feature lookup across own and inherited features, first hit wins.
const FeatureNode* find_feature(const ClassNode& cls, std::string_view name) {
  for (const OwnedFeature& of : all_features(cls)) {
    if (of.feature->name == name) return of.feature;
  }
  return nullptr;
}

std::string loc_text(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.col);
}

struct InstanceReader {
  const EcoreModel& metamodel;
  const PackageNode* package = nullptr;

  using Scope = std::map<std::string, std::string>;

  static Scope scope_with(const XmlElement& elem, Scope scope) {
    for (const XmlAttr& a : elem.attrs) {
      if (a.qname == "xmlns") scope[""] = a.value;
      else if (a.qname.rfind("xmlns:", 0) == 0) scope[a.qname.substr(6)] = a.value;
    }
    return scope;
  }

  const ClassNode* class_for_xsi_type(const XmlAttr& attr, const Scope& scope) {
    std::size_t colon = attr.value.find(':');
    std::string prefix = colon == std::string::npos ? "" : attr.value.substr(0, colon);
    std::string local = colon == std::string::npos ? attr.value : attr.value.substr(colon + 1);
    const PackageNode* pkg = package;
    auto bound = scope.find(prefix);
    if (bound != scope.end()) {
      if (const PackageNode* by_ns = find_package_by_ns(*metamodel.root, bound->second))
        pkg = by_ns;
    }
    const ClassNode* cls = find_class(*pkg, local);
    if (!cls)
      throw FormatError(loc_text(attr.loc) + ": xsi:type '" + attr.value +
                        "' does not name a class of package '" + pkg->name + "'");
    return cls;
  }

  InstanceObject read_object(const XmlElement& elem, const ClassNode& cls, const Scope& scope) {
    InstanceObject obj;
    obj.eclass = &cls;
    obj.loc = elem.loc;

    for (const XmlAttr& attr : elem.attrs) {
      if (attr.qname.rfind("xmlns", 0) == 0 || attr.qname.rfind("xmi:", 0) == 0 ||
          attr.qname == "xsi:type" || attr.qname.rfind("xsi:", 0) == 0)
        continue;
      const FeatureNode* feature = find_feature(cls, attr.qname);
      if (!feature) {
        obj.unknown_features.push_back({attr.qname, attr.loc});
        continue;
      }
      if (feature->is_reference() && !feature->containment) {
        InstanceObject::CrossRef ref;
        ref.feature = attr.qname;
        std::istringstream split(attr.value);
        std::string token;
        while (split >> token) ref.targets.push_back(token);
        obj.cross_refs.push_back(std::move(ref));
      } else if (feature->is_reference()) {
        // Containment spelled as an attribute cannot hold an object.
        obj.unknown_features.push_back({attr.qname, attr.loc});
      } else {
        obj.attribute_values.push_back({attr.qname, {attr.value}});
      }
    }

    for (const auto& child : elem.children) {
      if (child.type == XmlElement::Child::Type::Fragment) continue;  // formatting/comments
      const XmlElement& ce = *child.element;
      const FeatureNode* feature = find_feature(cls, ce.qname);
      if (!feature) {
        obj.unknown_features.push_back({ce.qname, ce.loc});
        continue;
      }
      if (feature->is_reference() && feature->containment) {
        const ClassNode* child_class = node_cast<ClassNode>(feature->e_type.resolved);
        if (const XmlAttr* xsi = ce.attr("xsi:type"))
          child_class = class_for_xsi_type(*xsi, scope_with(ce, scope));
        if (!child_class)
          throw FormatError(loc_text(ce.loc) + ": containment feature '" + ce.qname +
                            "' has no resolvable class type");
        InstanceObject::ChildSlot slot;
        slot.feature = ce.qname;
        slot.object =
            std::make_unique<InstanceObject>(read_object(ce, *child_class, scope_with(ce, scope)));
        obj.children.push_back(std::move(slot));
      } else if (feature->is_reference()) {
        // Non-containment reference as element: text content holds the paths.
        InstanceObject::CrossRef ref;
        ref.feature = ce.qname;
        for (const auto& inner : ce.children) {
          if (inner.type == XmlElement::Child::Type::Fragment) {
            std::istringstream split(inner.fragment);
            std::string token;
            while (split >> token) ref.targets.push_back(token);
          }
        }
        obj.cross_refs.push_back(std::move(ref));
      } else {
        // Attribute value as element text (multi-valued attributes).
        std::string value;
        for (const auto& inner : ce.children) {
          if (inner.type == XmlElement::Child::Type::Fragment) value += inner.fragment;
        }
        bool appended = false;
        for (auto& av : obj.attribute_values) {
          if (av.feature == ce.qname) {
            av.values.push_back(value);
            appended = true;
            break;
          }
        }
        if (!appended) obj.attribute_values.push_back({ce.qname, {value}});
      }
    }
    return obj;
  }
};

enum class LiteralKind { Integer, Real, Boolean, Text };

LiteralKind literal_kind_for(const DataTypeNode& dt) {
  const std::string& name = dt.name;
  if (name == "EInt" || name == "ELong" || name == "EShort" || name == "EByte" ||
      name == "EIntegerObject" || name == "ELongObject" || name == "EShortObject" ||
      name == "EByteObject" || name == "EBigInteger")
    return LiteralKind::Integer;
  if (name == "EDouble" || name == "EFloat" || name == "EDoubleObject" ||
      name == "EFloatObject" || name == "EBigDecimal")
    return LiteralKind::Real;
  if (name == "EBoolean" || name == "EBooleanObject") return LiteralKind::Boolean;
  return LiteralKind::Text;
}

bool parses_as(LiteralKind kind, const std::string& text) {
  switch (kind) {
    case LiteralKind::Boolean:
      return text == "true" || text == "false";
    case LiteralKind::Integer: {
      if (text.empty()) return false;
      std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
      if (i >= text.size()) return false;
      for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
      }
      return true;
    }
    case LiteralKind::Real: {
      if (text.empty()) return false;
      char* end = nullptr;
      std::strtod(text.c_str(), &end);
      return end && *end == '\0' && end != text.c_str();
    }
    case LiteralKind::Text:
      return true;
  }
  return true;
}

std::string default_literal_for(LiteralKind kind) {
  switch (kind) {
    case LiteralKind::Integer: return "0";
    case LiteralKind::Real: return "0.0";
    case LiteralKind::Boolean: return "false";
    case LiteralKind::Text: return "";
  }
  return "";
}

std::string child_path(const std::string& parent, const std::string& feature, int index) {
  std::string base = parent == "/" ? "" : parent;
  return base + "/@" + feature + "." + std::to_string(index);
}

struct Validator {
  const EcoreModel& metamodel;
  std::vector<Diagnostic> out;
  std::set<std::string> known_paths;

  void collect_paths(const InstanceObject& obj, const std::string& path) {
    known_paths.insert(path);
    std::map<std::string, int> per_feature;
    for (const auto& slot : obj.children) {
      int index = per_feature[slot.feature]++;
      collect_paths(*slot.object, child_path(path, slot.feature, index));
    }
  }

  void validate(const InstanceObject& obj, const std::string& path) {
    const ClassNode& cls = *obj.eclass;
    if (cls.abstract_flag) {
      out.push_back(make_diagnostic(
          "INS-001", path, obj.loc,
          "object is typed by abstract class '" + cls.name + "'"));
    }

    for (const auto& unknown : obj.unknown_features) {
      out.push_back(make_diagnostic(
          "INS-005", path, unknown.loc,
          "class '" + cls.name + "' has no feature '" + unknown.feature + "'"));
    }

    // Value counts per feature.
    std::map<std::string, int> counts;
    for (const auto& av : obj.attribute_values) counts[av.feature] += static_cast<int>(av.values.size());
    for (const auto& slot : obj.children) counts[slot.feature] += 1;
    for (const auto& ref : obj.cross_refs) counts[ref.feature] += static_cast<int>(ref.targets.size());

    std::set<std::string> seen;
    for (const OwnedFeature& of : all_features(cls)) {
      const FeatureNode& f = *of.feature;
      if (!seen.insert(f.name).second) continue;  // duplicates are the metamodel's problem
      int count = counts.count(f.name) ? counts[f.name] : 0;
      if (count < f.lower_bound) {
        out.push_back(make_diagnostic(
            "INS-002", path, obj.loc,
            "feature '" + f.name + "' has " + std::to_string(count) + " value(s), needs at least " +
                std::to_string(f.lower_bound)));
      } else if (f.upper_bound != -1 && count > f.upper_bound) {
        out.push_back(make_diagnostic(
            "INS-002", path, obj.loc,
            "feature '" + f.name + "' has " + std::to_string(count) + " value(s), allows at most " +
                std::to_string(f.upper_bound)));
      }
    }

    // Attribute literal checks.
    for (const auto& av : obj.attribute_values) {
      const FeatureNode* f = find_feature(cls, av.feature);
      if (!f || f->is_reference()) continue;
      const Node* type = f->e_type.resolved;
      if (const EnumNode* en = node_cast<EnumNode>(type)) {
        for (const std::string& v : av.values) {
          bool ok = false;
          for (const EnumLiteralNode* lit : literals(*en)) {
            if (lit->name == v || (lit->literal && *lit->literal == v)) {
              ok = true;
              break;
            }
          }
          if (!ok) {
            out.push_back(make_diagnostic(
                "INS-004", path, obj.loc,
                "value '" + v + "' is not a literal of enum '" + en->name + "' (feature '" +
                    av.feature + "')"));
          }
        }
      } else if (const DataTypeNode* dt = node_cast<DataTypeNode>(type)) {
        LiteralKind kind = literal_kind_for(*dt);
        for (const std::string& v : av.values) {
          if (!parses_as(kind, v)) {
            out.push_back(make_diagnostic(
                "INS-003", path, obj.loc,
                "value '" + v + "' does not parse as " + dt->name + " (feature '" +
                    av.feature + "')"));
          }
        }
      }
    }

    // Cross-reference existence, this document only.
    for (const auto& ref : obj.cross_refs) {
      for (const std::string& target : ref.targets) {
        if (!known_paths.count(target)) {
          out.push_back(make_diagnostic(
              "INS-006", path, obj.loc,
              "cross-reference '" + ref.feature + "' points at '" + target +
                  "' which is not in this document"));
        }
      }
    }

    std::map<std::string, int> per_feature;
    for (const auto& slot : obj.children) {
      int index = per_feature[slot.feature]++;
      validate(*slot.object, child_path(path, slot.feature, index));
    }
  }
};

}  // namespace

InstanceObject parse_instance(std::string_view xml_text, const EcoreModel& metamodel) {
  XmlElement doc = xml_parse(xml_text);
  if (!metamodel.root) throw FormatError("metamodel has no root package");
  const PackageNode* pkg = find_package_by_ns(*metamodel.root, doc.ns_uri);
  if (!pkg)
    throw FormatError(loc_text(doc.loc) + ": root namespace '" + doc.ns_uri +
                      "' does not match any package nsURI in the metamodel");
  const ClassNode* cls = find_class(*pkg, doc.local);
  if (!cls)
    throw FormatError(loc_text(doc.loc) + ": root element '" + doc.local +
                      "' does not name an EClass of package '" + pkg->name + "'");
  InstanceReader reader{metamodel, pkg};
  return reader.read_object(doc, *cls, InstanceReader::scope_with(doc, {}));
}

std::vector<Diagnostic> validate_instance(const InstanceObject& instance,
                                          const EcoreModel& metamodel) {
  Validator validator{metamodel, {}, {}};
  validator.collect_paths(instance, "/");
  validator.validate(instance, "/");
  sort_diagnostics(validator.out);
  return validator.out;
}

namespace {

struct Synthesizer {
  const EcoreModel& metamodel;
  int max_depth;
  std::optional<Unsatisfiable> failure;

  const ClassNode* concrete_class_for(const ClassNode& target) {
    if (!target.abstract_flag) return &target;
    std::vector<const ClassNode*> all;
    walk(*metamodel.root, [&](const Node& n) {
      if (const ClassNode* c = node_cast<ClassNode>(&n)) all.push_back(c);
    });
    for (const ClassNode* c : all) {
      if (c->abstract_flag) continue;
      SuperClosure closure = super_closure(*c);
      if (std::find(closure.ancestors.begin(), closure.ancestors.end(), &target) !=
          closure.ancestors.end())
        return c;
    }
    return nullptr;
  }

  std::optional<InstanceObject> build(const ClassNode& cls, int depth) {
    if (depth > max_depth) {
      failure = Unsatisfiable{"required containment recursion exceeded depth " +
                              std::to_string(max_depth) + " (class '" + cls.name + "')"};
      return std::nullopt;
    }
    InstanceObject obj;
    obj.eclass = &cls;
    std::set<std::string> seen;
    for (const OwnedFeature& of : all_features(cls)) {
      const FeatureNode& f = *of.feature;
      if (!seen.insert(f.name).second) continue;
      if (f.lower_bound <= 0) continue;
      if (!f.changeable && !f.default_value_literal) {
        failure = Unsatisfiable{"feature '" + f.name + "' of class '" + cls.name +
                                "' is required and frozen with no default value"};
        return std::nullopt;
      }
      int needed = f.lower_bound;
      if (f.is_reference() && f.containment) {
        const ClassNode* target = node_cast<ClassNode>(f.e_type.resolved);
        if (!target) {
          failure = Unsatisfiable{"containment feature '" + f.name + "' of class '" + cls.name +
                                  "' has no resolvable class type"};
          return std::nullopt;
        }
        const ClassNode* concrete = concrete_class_for(*target);
        if (!concrete) {
          failure = Unsatisfiable{"no concrete class exists for '" + target->name +
                                  "' (required by '" + cls.name + "." + f.name + "')"};
          return std::nullopt;
        }
        for (int i = 0; i < needed; ++i) {
          std::optional<InstanceObject> child = build(*concrete, depth + 1);
          if (!child) return std::nullopt;
          InstanceObject::ChildSlot slot;
          slot.feature = f.name;
          slot.object = std::make_unique<InstanceObject>(std::move(*child));
          obj.children.push_back(std::move(slot));
        }
      } else if (f.is_reference()) {
        InstanceObject::CrossRef ref;
        ref.feature = f.name;
        for (int i = 0; i < needed; ++i) ref.targets.push_back("/");
        obj.cross_refs.push_back(std::move(ref));
      } else {
        std::string value;
        if (f.default_value_literal) {
          value = *f.default_value_literal;
        } else if (const EnumNode* en = node_cast<EnumNode>(f.e_type.resolved)) {
          std::vector<const EnumLiteralNode*> lits = literals(*en);
          if (lits.empty()) {
            failure = Unsatisfiable{"enum '" + en->name + "' has no literals (required by '" +
                                    cls.name + "." + f.name + "')"};
            return std::nullopt;
          }
          value = lits.front()->name;
        } else if (const DataTypeNode* dt = node_cast<DataTypeNode>(f.e_type.resolved)) {
          value = default_literal_for(literal_kind_for(*dt));
        } else {
          value = "";
        }
        InstanceObject::AttrValue av;
        av.feature = f.name;
        for (int i = 0; i < needed; ++i) av.values.push_back(value);
        obj.attribute_values.push_back(std::move(av));
      }
    }
    return obj;
  }
};

const PackageNode* owning_package(const ClassNode& cls) {
  for (const Node* cur = cls.parent; cur; cur = cur->parent) {
    if (cur->kind == NodeKind::Package) return static_cast<const PackageNode*>(cur);
  }
  return nullptr;
}

void write_object(std::ostringstream& out, const InstanceObject& obj,
                  const EcoreModel& metamodel, const std::string& elem_name, int depth,
                  bool root, const std::string& prefix, bool& used_xsi) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out << indent << '<' << elem_name;
  if (root) {
    const PackageNode* pkg = owning_package(*obj.eclass);
    std::string ns = pkg ? pkg->ns_uri : "";
    out << " xmi:version=\"2.0\" xmlns:xmi=\"" << kXmiNsUri << "\" xmlns:xsi=\""
        << kXsiNsUri << "\" xmlns:" << prefix << "=\"" << xml_escape_attr(ns) << '"';
  }
  // Single-valued attributes and all cross-references ride as XML attributes.
  std::vector<const InstanceObject::AttrValue*> element_attrs;
  for (const auto& av : obj.attribute_values) {
    const FeatureNode* f = obj.eclass ? find_feature(*obj.eclass, av.feature) : nullptr;
    bool single = f && f->upper_bound == 1 && av.values.size() == 1;
    if (single) {
      out << ' ' << av.feature << "=\"" << xml_escape_attr(av.values.front()) << '"';
    } else {
      element_attrs.push_back(&av);
    }
  }
  for (const auto& ref : obj.cross_refs) {
    out << ' ' << ref.feature << "=\"";
    for (std::size_t i = 0; i < ref.targets.size(); ++i) {
      if (i) out << ' ';
      out << xml_escape_attr(ref.targets[i]);
    }
    out << '"';
  }
  if (element_attrs.empty() && obj.children.empty()) {
    out << "/>\n";
    return;
  }
  out << ">\n";
  std::string child_indent(static_cast<std::size_t>(depth + 1) * 2, ' ');
  for (const auto* av : element_attrs) {
    for (const std::string& v : av->values) {
      out << child_indent << '<' << av->feature << '>' << xml_escape_text(v) << "</"
          << av->feature << ">\n";
    }
  }
  for (const auto& slot : obj.children) {
    const FeatureNode* f = obj.eclass ? find_feature(*obj.eclass, slot.feature) : nullptr;
    const ClassNode* declared = f ? node_cast<ClassNode>(f->e_type.resolved) : nullptr;
    bool needs_type = slot.object->eclass && declared != slot.object->eclass;
    if (!needs_type) {
      write_object(out, *slot.object, metamodel, slot.feature, depth + 1, false, prefix, used_xsi);
    } else {
      used_xsi = true;
      // Re-open with xsi:type: write manually to inject the attribute.
      std::ostringstream inner;
      write_object(inner, *slot.object, metamodel, slot.feature, depth + 1, false, prefix, used_xsi);
      std::string text = inner.str();
      std::string open = child_indent + "<" + slot.feature;
      std::string with_type =
          open + " xsi:type=\"" + prefix + ":" + slot.object->eclass->name + "\"";
      out << with_type << text.substr(open.size());
    }
  }
  out << indent << "</" << elem_name << ">\n";
}

bool values_equal(const InstanceObject& a, const InstanceObject& b) {
  if (a.eclass != b.eclass) return false;
  if (a.attribute_values.size() != b.attribute_values.size()) return false;
  for (std::size_t i = 0; i < a.attribute_values.size(); ++i) {
    if (a.attribute_values[i].feature != b.attribute_values[i].feature) return false;
    if (a.attribute_values[i].values != b.attribute_values[i].values) return false;
  }
  if (a.cross_refs.size() != b.cross_refs.size()) return false;
  for (std::size_t i = 0; i < a.cross_refs.size(); ++i) {
    if (a.cross_refs[i].feature != b.cross_refs[i].feature) return false;
    if (a.cross_refs[i].targets != b.cross_refs[i].targets) return false;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (a.children[i].feature != b.children[i].feature) return false;
    if (!values_equal(*a.children[i].object, *b.children[i].object)) return false;
  }
  return true;
}

}  // namespace

std::variant<InstanceObject, Unsatisfiable> synthesize_minimal_instance(
    const EcoreModel& metamodel, const ClassNode& root, int max_depth) {
  if (root.abstract_flag)
    return Unsatisfiable{"root class '" + root.name + "' is abstract"};
  if (!metamodel.root) return Unsatisfiable{"metamodel has no root package"};
  Synthesizer synth{metamodel, max_depth, std::nullopt};
  std::optional<InstanceObject> built = synth.build(root, 0);
  if (!built) return synth.failure.value_or(Unsatisfiable{"unsatisfiable"});
  return std::move(*built);
}

std::string serialize_instance(const InstanceObject& instance, const EcoreModel& metamodel) {
  if (!instance.eclass) throw FormatError("instance has no class");
  const PackageNode* pkg = owning_package(*instance.eclass);
  std::string prefix = pkg && !pkg->ns_prefix.empty() ? pkg->ns_prefix : "m";
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  bool used_xsi = false;
  write_object(out, instance, metamodel, prefix + ":" + instance.eclass->name, 0, true,
               prefix, used_xsi);
  return out.str();
}

bool instance_equal(const InstanceObject& a, const InstanceObject& b) {
  return values_equal(a, b);
}

}  // namespace ecorelint
