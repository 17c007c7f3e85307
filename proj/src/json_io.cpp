#include "ecorelint/json_io.hpp"

#include <json.hpp>

#include "ecorelint/errors.hpp"

namespace ecorelint {

namespace {

using nlohmann::ordered_json;

ordered_json extras_json(const Node& n) {
  ordered_json extras = ordered_json::object();
  if (!n.extra_attrs.empty()) {
    ordered_json attrs = ordered_json::array();
    for (const RawAttr& a : n.extra_attrs) {
      ordered_json item;
      item["name"] = a.name;
      item["value"] = a.value;
      attrs.push_back(std::move(item));
    }
    extras["attrs"] = std::move(attrs);
  }
  ordered_json fragments = ordered_json::array();
  for (const auto& child : n.children) {
    if (const OpaqueNode* o = node_cast<OpaqueNode>(child.get())) {
      ordered_json item;
      item["text"] = o->text;
      item["element"] = o->is_element;
      fragments.push_back(std::move(item));
    }
  }
  if (!fragments.empty()) extras["fragments"] = std::move(fragments);
  if (!n.attr_order.empty()) extras["attrOrder"] = n.attr_order;
  return extras;
}

void attach_common(ordered_json& obj, const Node& n) {
  if (!n.xmi_id.empty()) obj["xmiId"] = n.xmi_id;
  ordered_json extras = extras_json(n);
  if (!extras.empty()) obj["extras"] = std::move(extras);
}

ordered_json annotations_json(const Node& n);

ordered_json annotation_json(const AnnotationNode& a) {
  ordered_json obj;
  obj["source"] = a.source;
  obj["details"] = ordered_json::array();
  for (const DetailNode* d : details(a)) {
    ordered_json item;
    item["key"] = d->key;
    item["value"] = d->value;
    obj["details"].push_back(std::move(item));
  }
  ordered_json nested = annotations_json(a);
  if (!nested.empty()) obj["annotations"] = std::move(nested);
  attach_common(obj, a);
  return obj;
}

ordered_json annotations_json(const Node& n) {
  ordered_json arr = ordered_json::array();
  for (const AnnotationNode* a : annotations(n)) arr.push_back(annotation_json(*a));
  return arr;
}

ordered_json typed_element_common(const Node& n, const TypeRef& e_type, int lower, int upper) {
  ordered_json obj;
  obj["name"] = n.name;
  if (e_type.present()) obj["eType"] = e_type.raw;
  obj["lowerBound"] = lower;
  obj["upperBound"] = upper;
  return obj;
}

ordered_json feature_json(const FeatureNode& f) {
  ordered_json obj;
  obj["kind"] = f.is_reference() ? "EReference" : "EAttribute";
  ordered_json base = typed_element_common(f, f.e_type, f.lower_bound, f.upper_bound);
  for (auto& [k, v] : base.items()) obj[k] = v;
  obj["changeable"] = f.changeable;
  obj["derived"] = f.derived;
  if (f.default_value_literal) obj["defaultValueLiteral"] = *f.default_value_literal;
  if (f.is_reference()) {
    obj["containment"] = f.containment;
    if (f.opposite.present()) obj["eOpposite"] = f.opposite.raw;
  }
  obj["annotations"] = annotations_json(f);
  attach_common(obj, f);
  return obj;
}

ordered_json operation_json(const OperationNode& op) {
  ordered_json obj;
  obj["kind"] = "EOperation";
  ordered_json base = typed_element_common(op, op.e_type, op.lower_bound, op.upper_bound);
  for (auto& [k, v] : base.items()) obj[k] = v;
  obj["parameters"] = ordered_json::array();
  for (const ParameterNode* p : parameters(op)) {
    ordered_json param = typed_element_common(*p, p->e_type, p->lower_bound, p->upper_bound);
    param["annotations"] = annotations_json(*p);
    attach_common(param, *p);
    obj["parameters"].push_back(std::move(param));
  }
  obj["annotations"] = annotations_json(op);
  attach_common(obj, op);
  return obj;
}

ordered_json classifier_json(const Node& n) {
  ordered_json obj;
  switch (n.kind) {
    case NodeKind::Class: {
      const auto& c = static_cast<const ClassNode&>(n);
      obj["kind"] = "EClass";
      obj["name"] = n.name;
      obj["abstract"] = c.abstract_flag;
      obj["interface"] = c.interface_flag;
      obj["superTypes"] = ordered_json::array();
      for (const TypeRef& t : c.super_types) obj["superTypes"].push_back(t.raw);
      obj["features"] = ordered_json::array();
      for (const FeatureNode* f : features(c))
        obj["features"].push_back(feature_json(*f));
      obj["operations"] = ordered_json::array();
      for (const OperationNode* op : operations(c))
        obj["operations"].push_back(operation_json(*op));
      break;
    }
    case NodeKind::DataType: {
      const auto& d = static_cast<const DataTypeNode&>(n);
      obj["kind"] = "EDataType";
      obj["name"] = n.name;
      if (d.instance_type_name) obj["instanceTypeName"] = *d.instance_type_name;
      break;
    }
    case NodeKind::Enum: {
      const auto& e = static_cast<const EnumNode&>(n);
      obj["kind"] = "EEnum";
      obj["name"] = n.name;
      obj["literals"] = ordered_json::array();
      for (const EnumLiteralNode* lit : literals(e)) {
        ordered_json item;
        item["name"] = lit->name;
        item["value"] = lit->value;
        if (lit->literal) item["literal"] = *lit->literal;
        item["annotations"] = annotations_json(*lit);
        attach_common(item, *lit);
        obj["literals"].push_back(std::move(item));
      }
      break;
    }
    default:
      break;
  }
  obj["annotations"] = annotations_json(n);
  attach_common(obj, n);
  return obj;
}

ordered_json package_json(const PackageNode& p) {
  ordered_json obj;
  obj["kind"] = "EPackage";
  obj["name"] = p.name;
  obj["nsURI"] = p.ns_uri;
  obj["nsPrefix"] = p.ns_prefix;
  obj["annotations"] = annotations_json(p);
  obj["classifiers"] = ordered_json::array();
  for (const Node* c : classifiers(p))
    obj["classifiers"].push_back(classifier_json(*c));
  obj["subpackages"] = ordered_json::array();
  for (const PackageNode* sub : subpackages(p))
    obj["subpackages"].push_back(package_json(*sub));
  attach_common(obj, p);
  return obj;
}

// ---------------------------------------------------------------------------
// Reader
// ---------------------------------------------------------------------------

std::string req_string(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw FormatError(where + "." + key + ": expected a string");
  return obj[key].get<std::string>();
}

void read_common(const ordered_json& obj, Node& n, const std::string& where) {
  if (obj.contains("xmiId")) n.xmi_id = req_string(obj, "xmiId", where);
  if (!obj.contains("extras")) return;
  const ordered_json& extras = obj["extras"];
  if (extras.contains("attrs")) {
    for (const auto& a : extras["attrs"])
      n.extra_attrs.push_back({a["name"].get<std::string>(), a["value"].get<std::string>()});
  }
  if (extras.contains("fragments")) {
    for (const auto& f : extras["fragments"]) {
      auto opaque = std::make_unique<OpaqueNode>();
      opaque->text = f["text"].get<std::string>();
      opaque->is_element = f.value("element", false);
      n.children.push_back(std::move(opaque));
    }
  }
  if (extras.contains("attrOrder")) {
    for (const auto& a : extras["attrOrder"]) n.attr_order.push_back(a.get<std::string>());
  }
}

void read_annotations(const ordered_json& obj, Node& n, const std::string& where);

std::unique_ptr<AnnotationNode> read_annotation(const ordered_json& obj, const std::string& where) {
  auto ann = std::make_unique<AnnotationNode>();
  ann->source = req_string(obj, "source", where);
  if (obj.contains("details")) {
    std::size_t i = 0;
    for (const auto& d : obj["details"]) {
      std::string dwhere = where + ".details[" + std::to_string(i++) + "]";
      auto det = std::make_unique<DetailNode>();
      det->key = req_string(d, "key", dwhere);
      det->value = req_string(d, "value", dwhere);
      ann->children.push_back(std::move(det));
    }
  }
  read_annotations(obj, *ann, where);
  read_common(obj, *ann, where);
  return ann;
}

void read_annotations(const ordered_json& obj, Node& n, const std::string& where) {
  if (!obj.contains("annotations")) return;
  std::size_t i = 0;
  for (const auto& a : obj["annotations"]) {
    n.children.push_back(read_annotation(a, where + ".annotations[" + std::to_string(i++) + "]"));
  }
}

void read_bounds(const ordered_json& obj, int& lower, int& upper) {
  if (obj.contains("lowerBound")) lower = obj["lowerBound"].get<int>();
  if (obj.contains("upperBound")) upper = obj["upperBound"].get<int>();
}

std::unique_ptr<Node> read_feature(const ordered_json& obj, const std::string& where) {
  std::string kind = req_string(obj, "kind", where);
  if (kind != "EAttribute" && kind != "EReference")
    throw FormatError(where + ".kind: expected EAttribute or EReference");
  auto feat = std::make_unique<FeatureNode>(kind == "EReference" ? NodeKind::Reference
                                                                 : NodeKind::Attribute);
  feat->name = req_string(obj, "name", where);
  if (obj.contains("eType")) feat->e_type.raw = req_string(obj, "eType", where);
  read_bounds(obj, feat->lower_bound, feat->upper_bound);
  if (obj.contains("changeable")) feat->changeable = obj["changeable"].get<bool>();
  if (obj.contains("derived")) feat->derived = obj["derived"].get<bool>();
  if (obj.contains("defaultValueLiteral"))
    feat->default_value_literal = req_string(obj, "defaultValueLiteral", where);
  if (feat->is_reference()) {
    if (obj.contains("containment")) feat->containment = obj["containment"].get<bool>();
    if (obj.contains("eOpposite")) feat->opposite.raw = req_string(obj, "eOpposite", where);
  }
  read_annotations(obj, *feat, where);
  read_common(obj, *feat, where);
  return feat;
}

std::unique_ptr<Node> read_operation(const ordered_json& obj, const std::string& where) {
  auto op = std::make_unique<OperationNode>();
  op->name = req_string(obj, "name", where);
  if (obj.contains("eType")) op->e_type.raw = req_string(obj, "eType", where);
  read_bounds(obj, op->lower_bound, op->upper_bound);
  if (obj.contains("parameters")) {
    std::size_t i = 0;
    for (const auto& p : obj["parameters"]) {
      std::string pwhere = where + ".parameters[" + std::to_string(i++) + "]";
      auto param = std::make_unique<ParameterNode>();
      param->name = req_string(p, "name", pwhere);
      if (p.contains("eType")) param->e_type.raw = req_string(p, "eType", pwhere);
      read_bounds(p, param->lower_bound, param->upper_bound);
      read_annotations(p, *param, pwhere);
      read_common(p, *param, pwhere);
      op->children.push_back(std::move(param));
    }
  }
  read_annotations(obj, *op, where);
  read_common(obj, *op, where);
  return op;
}

std::unique_ptr<Node> read_classifier(const ordered_json& obj, const std::string& where) {
  std::string kind = req_string(obj, "kind", where);
  if (kind == "EClass") {
    auto cls = std::make_unique<ClassNode>();
    cls->name = req_string(obj, "name", where);
    if (obj.contains("abstract")) cls->abstract_flag = obj["abstract"].get<bool>();
    if (obj.contains("interface")) cls->interface_flag = obj["interface"].get<bool>();
    if (obj.contains("superTypes")) {
      for (const auto& s : obj["superTypes"]) cls->super_types.push_back({s.get<std::string>(), nullptr});
    }
    read_annotations(obj, *cls, where);
    if (obj.contains("features")) {
      std::size_t i = 0;
      for (const auto& f : obj["features"])
        cls->children.push_back(read_feature(f, where + ".features[" + std::to_string(i++) + "]"));
    }
    if (obj.contains("operations")) {
      std::size_t i = 0;
      for (const auto& o : obj["operations"])
        cls->children.push_back(read_operation(o, where + ".operations[" + std::to_string(i++) + "]"));
    }
    read_common(obj, *cls, where);
    return cls;
  }
  if (kind == "EDataType") {
    auto dt = std::make_unique<DataTypeNode>();
    dt->name = req_string(obj, "name", where);
    if (obj.contains("instanceTypeName"))
      dt->instance_type_name = req_string(obj, "instanceTypeName", where);
    read_annotations(obj, *dt, where);
    read_common(obj, *dt, where);
    return dt;
  }
  if (kind == "EEnum") {
    auto en = std::make_unique<EnumNode>();
    en->name = req_string(obj, "name", where);
    read_annotations(obj, *en, where);
    if (obj.contains("literals")) {
      std::size_t i = 0;
      for (const auto& l : obj["literals"]) {
        std::string lwhere = where + ".literals[" + std::to_string(i++) + "]";
        auto lit = std::make_unique<EnumLiteralNode>();
        lit->name = req_string(l, "name", lwhere);
        if (l.contains("value")) lit->value = l["value"].get<long>();
        if (l.contains("literal")) lit->literal = req_string(l, "literal", lwhere);
        read_annotations(l, *lit, lwhere);
        read_common(l, *lit, lwhere);
        en->children.push_back(std::move(lit));
      }
    }
    read_common(obj, *en, where);
    return en;
  }
  throw FormatError(where + ".kind: unknown classifier kind '" + kind + "'");
}

std::unique_ptr<PackageNode> read_package(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) throw FormatError(where + ": expected an object");
  if (obj.value("kind", "") != std::string("EPackage"))
    throw FormatError(where + ".kind: expected EPackage");
  auto pkg = std::make_unique<PackageNode>();
  pkg->name = req_string(obj, "name", where);
  if (obj.contains("nsURI")) pkg->ns_uri = req_string(obj, "nsURI", where);
  if (obj.contains("nsPrefix")) pkg->ns_prefix = req_string(obj, "nsPrefix", where);
  read_annotations(obj, *pkg, where);
  if (obj.contains("classifiers")) {
    std::size_t i = 0;
    for (const auto& c : obj["classifiers"])
      pkg->children.push_back(read_classifier(c, where + ".classifiers[" + std::to_string(i++) + "]"));
  }
  if (obj.contains("subpackages")) {
    std::size_t i = 0;
    for (const auto& s : obj["subpackages"])
      pkg->children.push_back(read_package(s, where + ".subpackages[" + std::to_string(i++) + "]"));
  }
  read_common(obj, *pkg, where);
  return pkg;
}

}  // namespace

std::string export_json(const EcoreModel& m) {
  if (!m.root) return "{}\n";
  return package_json(*m.root).dump(2) + "\n";
}

EcoreModel parse_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("model json: ") + e.what());
  }
  EcoreModel model;
  model.root = read_package(doc, "$");
  model.reindex();
  return model;
}

}  // namespace ecorelint
