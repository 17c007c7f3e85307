#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/common.hpp"
#include "ecorelint/paths.hpp"

namespace ecorelint {

struct Node;

/// A serialized type reference. `raw` is kept exactly as written
/// (e.g. `#//Person` or `ecore:EDataType http://...Ecore#//EString`);
/// resolution only fills `resolved`, it never rewrites `raw`.
struct TypeRef {
  std::string raw;
  const Node* resolved = nullptr;

  bool present() const { return !raw.empty(); }
};

/// An attribute the reader did not recognize, preserved verbatim.
struct RawAttr {
  std::string name;
  std::string value;
};

/// Base of the in-memory element tree. `children` is the single file-order
/// stream for all child kinds; typed views below project out of it, so a
/// save can never reorder what a load saw.
struct Node {
  NodeKind kind;
  std::string name;
  std::string xmi_id;  // verbatim; empty = absent; never generated
  SourceLoc loc;
  Node* parent = nullptr;
  std::string path;  // rendered ElementPath, filled by EcoreModel::reindex()
  std::vector<std::unique_ptr<Node>> children;
  std::vector<std::string> attr_order;  // attribute names in parse order
  std::vector<RawAttr> extra_attrs;     // unrecognized attributes, verbatim

  explicit Node(NodeKind k) : kind(k) {}
  virtual ~Node() = default;
  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;
};

struct PackageNode : Node {
  std::string ns_uri;
  std::string ns_prefix;

  PackageNode() : Node(NodeKind::Package) {}
};

struct ClassNode : Node {
  bool abstract_flag = false;
  bool interface_flag = false;
  std::vector<TypeRef> super_types;

  ClassNode() : Node(NodeKind::Class) {}
};

struct DataTypeNode : Node {
  std::optional<std::string> instance_type_name;

  DataTypeNode() : Node(NodeKind::DataType) {}
};

struct EnumNode : Node {
  EnumNode() : Node(NodeKind::Enum) {}
};

struct EnumLiteralNode : Node {
  long value = 0;
  std::optional<std::string> literal;

  EnumLiteralNode() : Node(NodeKind::EnumLiteral) {}
};

/// EAttribute or EReference, selected by `kind`. Invalid states (bad bounds,
/// missing type) are representable so rules can report them.
struct FeatureNode : Node {
  TypeRef e_type;
  int lower_bound = 0;
  int upper_bound = 1;  // -1 = unbounded
  bool changeable = true;
  bool derived = false;
  std::optional<std::string> default_value_literal;
  bool containment = false;  // references only
  TypeRef opposite;          // references only

  explicit FeatureNode(NodeKind k) : Node(k) {}

  bool is_reference() const { return kind == NodeKind::Reference; }
};

struct OperationNode : Node {
  TypeRef e_type;  // return type; absent = void
  int lower_bound = 0;
  int upper_bound = 1;

  OperationNode() : Node(NodeKind::Operation) {}
};

struct ParameterNode : Node {
  TypeRef e_type;
  int lower_bound = 0;
  int upper_bound = 1;

  ParameterNode() : Node(NodeKind::Parameter) {}
};

struct AnnotationNode : Node {
  std::string source;

  AnnotationNode() : Node(NodeKind::Annotation) {}
};

struct DetailNode : Node {
  std::string key;
  std::string value;

  DetailNode() : Node(NodeKind::Detail) {}
};

/// Verbatim fragment (unknown element, comment, PI, CDATA or stray text),
/// re-emitted byte-identically at its original position.
struct OpaqueNode : Node {
  std::string text;
  bool is_element = false;

  OpaqueNode() : Node(NodeKind::Opaque) {}
};

namespace detail {
template <typename T>
struct KindOf;
template <> struct KindOf<PackageNode> { static bool match(NodeKind k) { return k == NodeKind::Package; } };
template <> struct KindOf<ClassNode> { static bool match(NodeKind k) { return k == NodeKind::Class; } };
template <> struct KindOf<DataTypeNode> { static bool match(NodeKind k) { return k == NodeKind::DataType; } };
template <> struct KindOf<EnumNode> { static bool match(NodeKind k) { return k == NodeKind::Enum; } };
template <> struct KindOf<EnumLiteralNode> { static bool match(NodeKind k) { return k == NodeKind::EnumLiteral; } };
template <> struct KindOf<FeatureNode> {
  static bool match(NodeKind k) { return k == NodeKind::Attribute || k == NodeKind::Reference; }
};
template <> struct KindOf<OperationNode> { static bool match(NodeKind k) { return k == NodeKind::Operation; } };
template <> struct KindOf<ParameterNode> { static bool match(NodeKind k) { return k == NodeKind::Parameter; } };
template <> struct KindOf<AnnotationNode> { static bool match(NodeKind k) { return k == NodeKind::Annotation; } };
template <> struct KindOf<DetailNode> { static bool match(NodeKind k) { return k == NodeKind::Detail; } };
template <> struct KindOf<OpaqueNode> { static bool match(NodeKind k) { return k == NodeKind::Opaque; } };
}  // namespace detail

template <typename T>
T* node_cast(Node* n) {
  return n && detail::KindOf<T>::match(n->kind) ? static_cast<T*>(n) : nullptr;
}

template <typename T>
const T* node_cast(const Node* n) {
  return n && detail::KindOf<T>::match(n->kind) ? static_cast<const T*>(n) : nullptr;
}

/// One loaded `.ecore` resource: exactly one root package, every element
/// reachable from it exactly once via containment, file order preserved.
/// A loaded model is treated as immutable; edits go through operations that
/// clone first (see compare.hpp).
struct EcoreModel {
  std::unique_ptr<PackageNode> root;
  std::string source_uri;
  std::string xmi_version = "2.0";
  std::map<std::string, Node*> element_index;  // rendered path -> node

  EcoreModel() = default;
  EcoreModel(EcoreModel&&) = default;
  EcoreModel& operator=(EcoreModel&&) = default;
  EcoreModel(const EcoreModel&) = delete;
  EcoreModel& operator=(const EcoreModel&) = delete;

  /// Rebuilds `element_index` and every node's cached `path`.
  void reindex();

  Node* find(std::string_view path);
  const Node* find(std::string_view path) const;
};

/// Deep copy; TypeRef resolution is dropped (raw text survives) and must be
/// re-established with resolve_types on the copy.
EcoreModel clone_model(const EcoreModel& m);
std::unique_ptr<Node> clone_node(const Node& n);

/// Pre-order traversal of the whole containment tree (root included).
void walk(Node& n, const std::function<void(Node&)>& fn);
void walk(const Node& n, const std::function<void(const Node&)>& fn);

// File-order projections of the child stream.
std::vector<Node*> classifiers(PackageNode& p);
std::vector<const Node*> classifiers(const PackageNode& p);
std::vector<PackageNode*> subpackages(PackageNode& p);
std::vector<const PackageNode*> subpackages(const PackageNode& p);
std::vector<FeatureNode*> features(ClassNode& c);
std::vector<const FeatureNode*> features(const ClassNode& c);
std::vector<OperationNode*> operations(ClassNode& c);
std::vector<const OperationNode*> operations(const ClassNode& c);
std::vector<ParameterNode*> parameters(OperationNode& o);
std::vector<const ParameterNode*> parameters(const OperationNode& o);
std::vector<EnumLiteralNode*> literals(EnumNode& e);
std::vector<const EnumLiteralNode*> literals(const EnumNode& e);
std::vector<AnnotationNode*> annotations(Node& n);
std::vector<const AnnotationNode*> annotations(const Node& n);
std::vector<DetailNode*> details(AnnotationNode& a);
std::vector<const DetailNode*> details(const AnnotationNode& a);

/// ElementPath of a node, including ordinals for same-named siblings.
ElementPath element_path(const Node& n);

inline constexpr std::string_view kEcoreNsUri = "http://www.eclipse.org/emf/2002/Ecore";
inline constexpr std::string_view kXmiNsUri = "http://www.omg.org/XMI";
inline constexpr std::string_view kXsiNsUri = "http://www.w3.org/2001/XMLSchema-instance";
inline constexpr std::string_view kGenModelSource = "http://www.eclipse.org/emf/2002/GenModel";

/// The standard Ecore data types (EString, EInt, ...) plus the table of
/// instance type names considered "known" without a Java runtime.
class BuiltinRegistry {
 public:
  static const BuiltinRegistry& standard();

  const DataTypeNode* find_datatype(std::string_view name) const;
  bool known_instance_type(std::string_view name) const;
  const std::vector<std::unique_ptr<DataTypeNode>>& datatypes() const { return owned_; }

 private:
  BuiltinRegistry();
  std::vector<std::unique_ptr<DataTypeNode>> owned_;
  std::map<std::string, const DataTypeNode*, std::less<>> by_name_;
  std::set<std::string, std::less<>> known_instance_types_;
};

}  // namespace ecorelint
