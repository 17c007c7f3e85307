#include "ecorelint/model.hpp"

#include <algorithm>

namespace ecorelint {

namespace {

template <typename T, typename NodeT>
std::vector<T*> project(NodeT& n, bool (*pred)(NodeKind)) {
  std::vector<T*> out;
  for (auto& child : n.children) {
    if (child && pred(child->kind)) out.push_back(static_cast<T*>(child.get()));
  }
  return out;
}

bool pred_classifier(NodeKind k) { return is_classifier_kind(k); }
bool pred_package(NodeKind k) { return k == NodeKind::Package; }
bool pred_feature(NodeKind k) { return k == NodeKind::Attribute || k == NodeKind::Reference; }
bool pred_operation(NodeKind k) { return k == NodeKind::Operation; }
bool pred_parameter(NodeKind k) { return k == NodeKind::Parameter; }
bool pred_literal(NodeKind k) { return k == NodeKind::EnumLiteral; }
bool pred_annotation(NodeKind k) { return k == NodeKind::Annotation; }
bool pred_detail(NodeKind k) { return k == NodeKind::Detail; }

void index_subtree(Node& n, const std::string& prefix, std::map<std::string, Node*>& index) {
  // Ordinals count same-named indexable siblings, whatever their kind.
  std::map<std::string, int> seen;
  for (auto& child : n.children) {
    if (!child || !is_named_kind(child->kind)) continue;
    int ordinal = ++seen[child->name];
    std::string path = prefix + "/" + child->name;
    if (ordinal > 1) path += "[" + std::to_string(ordinal) + "]";
    child->path = path;
    child->parent = &n;
    index[path] = child.get();
    index_subtree(*child, path, index);
  }
  for (auto& child : n.children) {
    if (child && !is_named_kind(child->kind)) child->parent = &n;
  }
}

}  // namespace

void EcoreModel::reindex() {
  element_index.clear();
  if (!root) return;
  root->parent = nullptr;
  root->path = "/" + root->name;
  element_index[root->path] = root.get();
  index_subtree(*root, root->path, element_index);
}

Node* EcoreModel::find(std::string_view path) {
  auto it = element_index.find(std::string(path));
  return it == element_index.end() ? nullptr : it->second;
}

const Node* EcoreModel::find(std::string_view path) const {
  auto it = element_index.find(std::string(path));
  return it == element_index.end() ? nullptr : it->second;
}

std::unique_ptr<Node> clone_node(const Node& n) {
  std::unique_ptr<Node> out;
  switch (n.kind) {
    case NodeKind::Package: {
      auto& p = static_cast<const PackageNode&>(n);
      auto c = std::make_unique<PackageNode>();
      c->ns_uri = p.ns_uri;
      c->ns_prefix = p.ns_prefix;
      out = std::move(c);
      break;
    }
    case NodeKind::Class: {
      auto& s = static_cast<const ClassNode&>(n);
      auto c = std::make_unique<ClassNode>();
      c->abstract_flag = s.abstract_flag;
      c->interface_flag = s.interface_flag;
      for (const TypeRef& t : s.super_types) c->super_types.push_back({t.raw, nullptr});
      out = std::move(c);
      break;
    }
    case NodeKind::DataType: {
      auto& s = static_cast<const DataTypeNode&>(n);
      auto c = std::make_unique<DataTypeNode>();
      c->instance_type_name = s.instance_type_name;
      out = std::move(c);
      break;
    }
    case NodeKind::Enum:
      out = std::make_unique<EnumNode>();
      break;
    case NodeKind::EnumLiteral: {
      auto& s = static_cast<const EnumLiteralNode&>(n);
      auto c = std::make_unique<EnumLiteralNode>();
      c->value = s.value;
      c->literal = s.literal;
      out = std::move(c);
      break;
    }
    case NodeKind::Attribute:
    case NodeKind::Reference: {
      auto& s = static_cast<const FeatureNode&>(n);
      auto c = std::make_unique<FeatureNode>(n.kind);
      c->e_type = {s.e_type.raw, nullptr};
      c->lower_bound = s.lower_bound;
      c->upper_bound = s.upper_bound;
      c->changeable = s.changeable;
      c->derived = s.derived;
      c->default_value_literal = s.default_value_literal;
      c->containment = s.containment;
      c->opposite = {s.opposite.raw, nullptr};
      out = std::move(c);
      break;
    }
    case NodeKind::Operation: {
      auto& s = static_cast<const OperationNode&>(n);
      auto c = std::make_unique<OperationNode>();
      c->e_type = {s.e_type.raw, nullptr};
      c->lower_bound = s.lower_bound;
      c->upper_bound = s.upper_bound;
      out = std::move(c);
      break;
    }
    case NodeKind::Parameter: {
      auto& s = static_cast<const ParameterNode&>(n);
      auto c = std::make_unique<ParameterNode>();
      c->e_type = {s.e_type.raw, nullptr};
      c->lower_bound = s.lower_bound;
      c->upper_bound = s.upper_bound;
      out = std::move(c);
      break;
    }
    case NodeKind::Annotation: {
      auto& s = static_cast<const AnnotationNode&>(n);
      auto c = std::make_unique<AnnotationNode>();
      c->source = s.source;
      out = std::move(c);
      break;
    }
    case NodeKind::Detail: {
      auto& s = static_cast<const DetailNode&>(n);
      auto c = std::make_unique<DetailNode>();
      c->key = s.key;
      c->value = s.value;
      out = std::move(c);
      break;
    }
    case NodeKind::Opaque:
    default: {
      auto& s = static_cast<const OpaqueNode&>(n);
      auto c = std::make_unique<OpaqueNode>();
      c->text = s.text;
      c->is_element = s.is_element;
      out = std::move(c);
      break;
    }
  }
  out->name = n.name;
  out->xmi_id = n.xmi_id;
  out->loc = n.loc;
  out->attr_order = n.attr_order;
  out->extra_attrs = n.extra_attrs;
  for (const auto& child : n.children) {
    if (child) out->children.push_back(clone_node(*child));
  }
  return out;
}

EcoreModel clone_model(const EcoreModel& m) {
  EcoreModel out;
  out.source_uri = m.source_uri;
  out.xmi_version = m.xmi_version;
  if (m.root) {
    auto cloned = clone_node(*m.root);
    out.root.reset(static_cast<PackageNode*>(cloned.release()));
  }
  out.reindex();
  return out;
}

void walk(Node& n, const std::function<void(Node&)>& fn) {
  fn(n);
  for (auto& child : n.children) {
    if (child) walk(*child, fn);
  }
}

void walk(const Node& n, const std::function<void(const Node&)>& fn) {
  fn(n);
  for (const auto& child : n.children) {
    if (!child) continue;
    const Node& c = *child;
    walk(c, fn);
  }
}

std::vector<Node*> classifiers(PackageNode& p) { return project<Node>(p, pred_classifier); }
std::vector<const Node*> classifiers(const PackageNode& p) { return project<const Node>(p, pred_classifier); }
std::vector<PackageNode*> subpackages(PackageNode& p) { return project<PackageNode>(p, pred_package); }
std::vector<const PackageNode*> subpackages(const PackageNode& p) { return project<const PackageNode>(p, pred_package); }
std::vector<FeatureNode*> features(ClassNode& c) { return project<FeatureNode>(c, pred_feature); }
std::vector<const FeatureNode*> features(const ClassNode& c) { return project<const FeatureNode>(c, pred_feature); }
std::vector<OperationNode*> operations(ClassNode& c) { return project<OperationNode>(c, pred_operation); }
std::vector<const OperationNode*> operations(const ClassNode& c) { return project<const OperationNode>(c, pred_operation); }
std::vector<ParameterNode*> parameters(OperationNode& o) { return project<ParameterNode>(o, pred_parameter); }
std::vector<const ParameterNode*> parameters(const OperationNode& o) { return project<const ParameterNode>(o, pred_parameter); }
std::vector<EnumLiteralNode*> literals(EnumNode& e) { return project<EnumLiteralNode>(e, pred_literal); }
std::vector<const EnumLiteralNode*> literals(const EnumNode& e) { return project<const EnumLiteralNode>(e, pred_literal); }
std::vector<AnnotationNode*> annotations(Node& n) { return project<AnnotationNode>(n, pred_annotation); }
std::vector<const AnnotationNode*> annotations(const Node& n) { return project<const AnnotationNode>(n, pred_annotation); }
std::vector<DetailNode*> details(AnnotationNode& a) { return project<DetailNode>(a, pred_detail); }
std::vector<const DetailNode*> details(const AnnotationNode& a) { return project<const DetailNode>(a, pred_detail); }

ElementPath element_path(const Node& n) {
  return ElementPath::parse(n.path);
}

namespace {

struct BuiltinSpec {
  const char* name;
  const char* instance_type;
};

constexpr BuiltinSpec kBuiltinDataTypes[] = {
    {"EString", "java.lang.String"},
    {"EInt", "int"},
    {"EIntegerObject", "java.lang.Integer"},
    {"EBoolean", "boolean"},
    {"EBooleanObject", "java.lang.Boolean"},
    {"EDouble", "double"},
    {"EDoubleObject", "java.lang.Double"},
    {"EFloat", "float"},
    {"EFloatObject", "java.lang.Float"},
    {"ELong", "long"},
    {"ELongObject", "java.lang.Long"},
    {"EChar", "char"},
    {"ECharacterObject", "java.lang.Character"},
    {"EByte", "byte"},
    {"EByteObject", "java.lang.Byte"},
    {"EShort", "short"},
    {"EShortObject", "java.lang.Short"},
    {"EDate", "java.util.Date"},
    {"EBigDecimal", "java.math.BigDecimal"},
    {"EBigInteger", "java.math.BigInteger"},
    {"EByteArray", "byte[]"},
    {"EJavaObject", "java.lang.Object"},
    {"EJavaClass", "java.lang.Class"},
};

constexpr const char* kExtraKnownTypes[] = {
    "void", "java.lang.String", "java.lang.Object", "java.lang.Class",
    "java.lang.Integer", "java.lang.Boolean", "java.lang.Double",
    "java.lang.Float", "java.lang.Long", "java.lang.Character",
    "java.lang.Byte", "java.lang.Short", "java.lang.Number",
    "java.util.Date", "java.util.List", "java.util.Map", "java.util.Set",
    "java.util.Collection", "java.math.BigDecimal", "java.math.BigInteger",
};

}  // namespace

BuiltinRegistry::BuiltinRegistry() {
  for (const BuiltinSpec& spec : kBuiltinDataTypes) {
    auto dt = std::make_unique<DataTypeNode>();
    dt->name = spec.name;
    dt->instance_type_name = spec.instance_type;
    dt->path = std::string("/ecore/") + spec.name;
    by_name_[spec.name] = dt.get();
    known_instance_types_.insert(spec.instance_type);
    owned_.push_back(std::move(dt));
  }
  for (const char* t : kExtraKnownTypes) known_instance_types_.insert(t);
}

const BuiltinRegistry& BuiltinRegistry::standard() {
  static const BuiltinRegistry instance;
  return instance;
}

const DataTypeNode* BuiltinRegistry::find_datatype(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : it->second;
}

bool BuiltinRegistry::known_instance_type(std::string_view name) const {
  return known_instance_types_.find(name) != known_instance_types_.end();
}

}  // namespace ecorelint
