#include "ecorelint/compare.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "ecorelint/errors.hpp"
#include "ecorelint/navigation.hpp"

namespace ecorelint {

namespace {

std::string render_annotations(const Node& n) {
  std::string out;
  for (const AnnotationNode* a : annotations(n)) {
    if (!out.empty()) out += ';';
    out += a->source;
    out += '{';
    bool first = true;
    for (const DetailNode* d : details(*a)) {
      if (!first) out += ',';
      first = false;
      out += d->key;
      out += '=';
      out += d->value;
    }
    out += '}';
  }
  return out;
}

using FieldValue = std::pair<std::string, std::optional<std::string>>;

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::optional<std::string> opt_raw(const TypeRef& r) {
  if (!r.present()) return std::nullopt;
  return r.raw;
}

/// All modeled fields of one element, in a fixed order. `name` is identity
/// under name matching and is deliberately not a field.
std::vector<FieldValue> field_values(const Node& n) {
  std::vector<FieldValue> out;
  switch (n.kind) {
    case NodeKind::Package: {
      const auto& p = static_cast<const PackageNode&>(n);
      out.push_back({"nsURI", p.ns_uri});
      out.push_back({"nsPrefix", p.ns_prefix});
      break;
    }
    case NodeKind::Class: {
      const auto& c = static_cast<const ClassNode&>(n);
      out.push_back({"abstract", bool_text(c.abstract_flag)});
      out.push_back({"interface", bool_text(c.interface_flag)});
      std::string supers;
      for (const TypeRef& t : c.super_types) {
        if (!supers.empty()) supers += ' ';
        supers += t.raw;
      }
      out.push_back({"eSuperTypes", supers});
      break;
    }
    case NodeKind::DataType: {
      const auto& d = static_cast<const DataTypeNode&>(n);
      out.push_back({"instanceTypeName", d.instance_type_name});
      break;
    }
    case NodeKind::EnumLiteral: {
      const auto& l = static_cast<const EnumLiteralNode&>(n);
      out.push_back({"value", std::to_string(l.value)});
      out.push_back({"literal", l.literal});
      break;
    }
    case NodeKind::Attribute:
    case NodeKind::Reference: {
      const auto& f = static_cast<const FeatureNode&>(n);
      out.push_back({"eType", opt_raw(f.e_type)});
      out.push_back({"lowerBound", std::to_string(f.lower_bound)});
      out.push_back({"upperBound", std::to_string(f.upper_bound)});
      out.push_back({"changeable", bool_text(f.changeable)});
      out.push_back({"derived", bool_text(f.derived)});
      out.push_back({"defaultValueLiteral", f.default_value_literal});
      if (f.is_reference()) {
        out.push_back({"containment", bool_text(f.containment)});
        out.push_back({"eOpposite", opt_raw(f.opposite)});
      }
      break;
    }
    case NodeKind::Operation: {
      const auto& o = static_cast<const OperationNode&>(n);
      out.push_back({"eType", opt_raw(o.e_type)});
      out.push_back({"lowerBound", std::to_string(o.lower_bound)});
      out.push_back({"upperBound", std::to_string(o.upper_bound)});
      break;
    }
    case NodeKind::Parameter: {
      const auto& p = static_cast<const ParameterNode&>(n);
      out.push_back({"eType", opt_raw(p.e_type)});
      out.push_back({"lowerBound", std::to_string(p.lower_bound)});
      out.push_back({"upperBound", std::to_string(p.upper_bound)});
      break;
    }
    default:
      break;
  }
  if (is_named_kind(n.kind)) out.push_back({"annotations", render_annotations(n)});
  return out;
}

std::vector<const Node*> named_children(const Node& n) {
  std::vector<const Node*> out;
  for (const auto& child : n.children) {
    if (child && is_named_kind(child->kind)) out.push_back(child.get());
  }
  return out;
}

void collect_subtree_paths(const Node& n, std::vector<std::string>& out) {
  out.push_back(n.path);
  for (const Node* child : named_children(n)) collect_subtree_paths(*child, out);
}

std::string signature_of(const Node& n) {
  if (const FeatureNode* f = node_cast<FeatureNode>(&n)) {
    return f->name + "\x1f" + f->e_type.raw + "\x1f" + std::to_string(f->lower_bound) +
           "\x1f" + std::to_string(f->upper_bound);
  }
  return n.name;
}

struct Matcher {
  Matching result;

  void match_pair(const Node& a, const Node& b) {
    result.pairs.push_back({a.path, b.path});
    match_children(a, b);
  }

  void match_children(const Node& a, const Node& b) {
    std::vector<const Node*> ca = named_children(a);
    std::vector<const Node*> cb = named_children(b);
    // Group key: kind + name; matched pairs always have equal kind.
    auto key_of = [](const Node& n) {
      return std::to_string(static_cast<int>(n.kind)) + "\x1f" + n.name;
    };
    std::map<std::string, std::vector<const Node*>> groups_b;
    for (const Node* nb : cb) groups_b[key_of(*nb)].push_back(nb);

    std::set<const Node*> paired_b;
    std::vector<const Node*> leftovers_a;

    std::map<std::string, std::vector<const Node*>> groups_a;
    std::vector<std::string> key_order;
    for (const Node* na : ca) {
      std::string key = key_of(*na);
      if (!groups_a.count(key)) key_order.push_back(key);
      groups_a[key].push_back(na);
    }

    for (const std::string& key : key_order) {
      auto& list_a = groups_a[key];
      auto it_b = groups_b.find(key);
      if (it_b == groups_b.end()) {
        for (const Node* na : list_a) leftovers_a.push_back(na);
        continue;
      }
      auto& list_b = it_b->second;
      if (list_a.size() == 1 && list_b.size() == 1) {
        paired_b.insert(list_b[0]);
        match_pair(*list_a[0], *list_b[0]);
        continue;
      }
      // Same-named siblings: refine by signature, pair in document order.
      std::map<std::string, std::vector<const Node*>> sig_b;
      for (const Node* nb : list_b) sig_b[signature_of(*nb)].push_back(nb);
      std::map<std::string, std::size_t> used;
      for (const Node* na : list_a) {
        std::string sig = signature_of(*na);
        auto found = sig_b.find(sig);
        if (found != sig_b.end() && used[sig] < found->second.size()) {
          const Node* nb = found->second[used[sig]++];
          paired_b.insert(nb);
          match_pair(*na, *nb);
        } else {
          leftovers_a.push_back(na);
        }
      }
    }

    for (const Node* na : leftovers_a) collect_subtree_paths(*na, result.unmatched_a);
    for (const Node* nb : cb) {
      if (!paired_b.count(nb)) collect_subtree_paths(*nb, result.unmatched_b);
    }
  }
};

std::string fragment_of(const Node& n) {
  std::vector<const Node*> chain;
  for (const Node* cur = &n; cur && cur->parent; cur = cur->parent) chain.push_back(cur);
  std::string out = "/";
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    out += "/";
    out += (*it)->name;
  }
  return out;  // "//A" or "//sub/A" or "//A/f"
}

void clear_colliding_ids(Node& imported, const std::set<std::string>& existing) {
  walk(imported, [&](Node& n) {
    if (!n.xmi_id.empty() && existing.count(n.xmi_id)) {
      n.xmi_id.clear();
      n.attr_order.erase(std::remove(n.attr_order.begin(), n.attr_order.end(), "xmi:id"),
                         n.attr_order.end());
    }
  });
}

std::set<std::string> collect_ids(const Node& n) {
  std::set<std::string> out;
  walk(n, [&](const Node& node) {
    if (!node.xmi_id.empty()) out.insert(node.xmi_id);
  });
  return out;
}

void find_conflicts(const PackageNode& target, const PackageNode& source, ConflictList& out) {
  std::set<std::string> names;
  for (const Node* c : classifiers(target)) names.insert(c->name);
  for (const Node* c : classifiers(source)) {
    if (names.count(c->name)) {
      for (const Node* t : classifiers(target)) {
        if (t->name == c->name) {
          out.push_back({t->path, c->name});
          break;
        }
      }
    }
  }
  for (const PackageNode* sp : subpackages(source)) {
    for (const PackageNode* tp : subpackages(target)) {
      if (tp->name == sp->name) {
        find_conflicts(*tp, *sp, out);
        break;
      }
    }
  }
}

void merge_into(PackageNode& target, const PackageNode& source) {
  for (const Node* c : classifiers(source)) target.children.push_back(clone_node(*c));
  for (const PackageNode* sp : subpackages(source)) {
    PackageNode* existing = nullptr;
    for (PackageNode* tp : subpackages(target)) {
      if (tp->name == sp->name) {
        existing = tp;
        break;
      }
    }
    if (existing) {
      merge_into(*existing, *sp);
    } else {
      target.children.push_back(clone_node(*sp));
    }
  }
}

}  // namespace

Matching match_elements(const EcoreModel& a, const EcoreModel& b) {
  Matcher matcher;
  if (a.root && b.root && a.root->name == b.root->name) {
    matcher.match_pair(*a.root, *b.root);
  } else {
    if (a.root) collect_subtree_paths(*a.root, matcher.result.unmatched_a);
    if (b.root) collect_subtree_paths(*b.root, matcher.result.unmatched_b);
  }
  return matcher.result;
}

ModelDelta diff(const EcoreModel& a, const EcoreModel& b) {
  Matching matching = match_elements(a, b);
  ModelDelta delta;
  delta.additions = matching.unmatched_b;
  delta.deletions = matching.unmatched_a;
  for (const auto& [path_a, path_b] : matching.pairs) {
    const Node* na = a.find(path_a);
    const Node* nb = b.find(path_b);
    if (!na || !nb) continue;
    std::vector<FieldValue> fa = field_values(*na);
    std::vector<FieldValue> fb = field_values(*nb);
    for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
      if (fa[i].second != fb[i].second) {
        delta.changes.push_back({path_a, fa[i].first, fa[i].second, fb[i].second});
      }
    }
  }
  return delta;
}

std::string render_changelog(const ModelDelta& delta, ChangelogFormat format) {
  if (format == ChangelogFormat::Json) {
    nlohmann::ordered_json doc;
    doc["added"] = delta.additions;
    doc["removed"] = delta.deletions;
    doc["changed"] = nlohmann::ordered_json::array();
    for (const FieldChange& c : delta.changes) {
      nlohmann::ordered_json item;
      item["path"] = c.path;
      item["field"] = c.field;
      item["old"] = c.old_value ? nlohmann::ordered_json(*c.old_value) : nlohmann::ordered_json(nullptr);
      item["new"] = c.new_value ? nlohmann::ordered_json(*c.new_value) : nlohmann::ordered_json(nullptr);
      doc["changed"].push_back(std::move(item));
    }
    return doc.dump(2) + "\n";
  }
  if (delta.empty()) return "no changes\n";
  std::ostringstream out;
  if (!delta.additions.empty()) {
    out << "Added:\n";
    for (const std::string& p : delta.additions) out << "  + " << p << "\n";
  }
  if (!delta.deletions.empty()) {
    out << "Removed:\n";
    for (const std::string& p : delta.deletions) out << "  - " << p << "\n";
  }
  if (!delta.changes.empty()) {
    out << "Changed:\n";
    for (const FieldChange& c : delta.changes) {
      out << "  ~ " << c.path << " " << c.field << ": "
          << (c.old_value ? *c.old_value : "(unset)") << " -> "
          << (c.new_value ? *c.new_value : "(unset)") << "\n";
    }
  }
  return out.str();
}

std::variant<EcoreModel, ConflictList> import_package(const EcoreModel& target,
                                                      const EcoreModel& source,
                                                      const BuiltinRegistry& builtins) {
  if (!target.root || !source.root) throw FormatError("import needs two loaded models");
  ConflictList conflicts;
  find_conflicts(*target.root, *source.root, conflicts);
  if (!conflicts.empty()) return conflicts;

  EcoreModel merged = clone_model(target);
  std::set<std::string> existing_ids = collect_ids(*merged.root);
  PackageNode staged;
  merge_into(staged, *source.root);
  for (auto& child : staged.children) {
    clear_colliding_ids(*child, existing_ids);
    merged.root->children.push_back(std::move(child));
  }
  merged.reindex();
  resolve_types(merged, builtins);
  return merged;
}

std::variant<EcoreModel, ConflictList> copy_elements(const EcoreModel& source,
                                                     const std::vector<std::string>& selection,
                                                     const EcoreModel& target,
                                                     const BuiltinRegistry& builtins,
                                                     std::string_view into_class) {
  if (!source.root || !target.root) throw FormatError("copy needs two loaded models");
  std::vector<const Node*> selected;
  for (const std::string& path : selection) {
    const Node* n = source.find(path);
    if (!n) throw FormatError("selection path not found in source: " + path);
    selected.push_back(n);
  }

  ConflictList conflicts;
  EcoreModel merged = clone_model(target);
  std::set<std::string> existing_ids = collect_ids(*merged.root);

  if (into_class.empty()) {
    std::set<std::string> names;
    for (const Node* c : classifiers(*merged.root)) names.insert(c->name);
    for (const Node* n : selected) {
      if (!is_classifier_kind(n->kind))
        throw FormatError("selection must be classifiers (got " + n->path +
                          "); use into_class to copy features");
      if (!names.insert(n->name).second) {
        std::string existing_path = merged.root->path + "/" + n->name;
        conflicts.push_back({existing_path, n->name});
      }
    }
    if (!conflicts.empty()) return conflicts;
    for (const Node* n : selected) {
      auto cloned = clone_node(*n);
      clear_colliding_ids(*cloned, existing_ids);
      merged.root->children.push_back(std::move(cloned));
    }
  } else {
    Node* host = merged.find(into_class);
    ClassNode* host_class = node_cast<ClassNode>(host);
    if (!host_class)
      throw FormatError("target class not found: " + std::string(into_class));
    std::set<std::string> names;
    for (const FeatureNode* f : features(*host_class)) names.insert(f->name);
    for (const Node* n : selected) {
      if (n->kind != NodeKind::Attribute && n->kind != NodeKind::Reference)
        throw FormatError("into_class copies features only (got " + n->path + ")");
      if (!names.insert(n->name).second) {
        conflicts.push_back({host_class->path + "/" + n->name, n->name});
      }
    }
    if (!conflicts.empty()) return conflicts;
    for (const Node* n : selected) {
      auto cloned = clone_node(*n);
      clear_colliding_ids(*cloned, existing_ids);
      host_class->children.push_back(std::move(cloned));
    }
  }

  merged.reindex();
  resolve_types(merged, builtins);
  return merged;
}

namespace {

std::string replace_literal(const std::string& text, std::string_view pattern,
                            std::string_view replacement, bool case_sensitive) {
  auto lower = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  std::string haystack = case_sensitive ? text : lower(text);
  std::string needle = case_sensitive ? std::string(pattern) : lower(std::string(pattern));
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    std::size_t hit = haystack.find(needle, pos);
    if (hit == std::string::npos) {
      out += text.substr(pos);
      break;
    }
    out += text.substr(pos, hit - pos);
    out += replacement;
    pos = hit + needle.size();
  }
  return out;
}

}  // namespace

std::pair<EcoreModel, ChangeSet> search_replace(const EcoreModel& m, std::string_view pattern,
                                                std::string_view replacement,
                                                const ReplaceScope& scope,
                                                const ReplaceOptions& options,
                                                const BuiltinRegistry& builtins) {
  if (pattern.empty()) throw FormatError("empty search pattern");
  std::optional<std::regex> re;
  if (options.regex) {
    auto flags = std::regex::ECMAScript;
    if (!options.case_sensitive) flags |= std::regex::icase;
    try {
      re.emplace(std::string(pattern), flags);
    } catch (const std::regex_error& e) {
      throw FormatError(std::string("invalid regex: ") + e.what());
    }
  }
  auto apply = [&](const std::string& text) {
    if (re) return std::regex_replace(text, *re, std::string(replacement));
    return replace_literal(text, pattern, replacement, options.case_sensitive);
  };
  auto in_scope = [&](NodeKind kind) {
    return scope.kinds.empty() ? is_named_kind(kind) : scope.kinds.count(kind) > 0;
  };

  EcoreModel work = clone_model(m);
  work.reindex();
  resolve_types(work, builtins);

  ChangeSet changes;
  auto record = [&](const Node& n, const char* field, const std::string& old_v,
                    const std::string& new_v) {
    if (old_v != new_v) changes.renames.push_back({n.path, field, old_v, new_v});
  };

  std::vector<std::pair<Node*, std::string>> pending_renames;
  walk(*work.root, [&](Node& n) {
    if (scope.fields.count(ReplaceScope::Field::AnnotationValue) &&
        n.kind == NodeKind::Detail && n.parent && n.parent->parent &&
        in_scope(n.parent->parent->kind)) {
      auto& det = static_cast<DetailNode&>(n);
      std::string next = apply(det.value);
      if (next != det.value) {
        record(*n.parent->parent, "annotationValue", det.value, next);
        det.value = next;
      }
    }
    if (!is_named_kind(n.kind) || !in_scope(n.kind)) return;
    if (scope.fields.count(ReplaceScope::Field::Name)) {
      std::string next = apply(n.name);
      if (next != n.name) {
        record(n, "name", n.name, next);
        pending_renames.push_back({&n, next});
      }
    }
    if (scope.fields.count(ReplaceScope::Field::DefaultValueLiteral)) {
      if (auto* f = node_cast<FeatureNode>(&n); f && f->default_value_literal) {
        std::string next = apply(*f->default_value_literal);
        if (next != *f->default_value_literal) {
          record(n, "defaultValueLiteral", *f->default_value_literal, next);
          f->default_value_literal = next;
        }
      }
    }
    if (scope.fields.count(ReplaceScope::Field::InstanceTypeName)) {
      if (auto* d = node_cast<DataTypeNode>(&n); d && d->instance_type_name) {
        std::string next = apply(*d->instance_type_name);
        if (next != *d->instance_type_name) {
          record(n, "instanceTypeName", *d->instance_type_name, next);
          d->instance_type_name = next;
        }
      }
    }
  });

  if (options.dry_run) {
    EcoreModel untouched = clone_model(m);
    untouched.reindex();
    resolve_types(untouched, builtins);
    return {std::move(untouched), std::move(changes)};
  }

  for (auto& [node, next] : pending_renames) node->name = next;

  // Renamed elements keep their references working: local fragment refs that
  // resolved to a surviving node are rebuilt from the new names.
  if (!pending_renames.empty()) {
    auto rebuild = [&](TypeRef& ref) {
      if (!ref.present() || !ref.resolved) return;
      bool hash_style = ref.raw.rfind("#//", 0) == 0;
      if (!hash_style && ref.raw.rfind("//", 0) != 0) return;  // builtin or foreign
      std::string fragment = fragment_of(*ref.resolved);
      ref.raw = hash_style ? "#" + fragment : fragment;
    };
    walk(*work.root, [&](Node& n) {
      if (auto* cls = node_cast<ClassNode>(&n)) {
        for (TypeRef& t : cls->super_types) rebuild(t);
      } else if (auto* f = node_cast<FeatureNode>(&n)) {
        rebuild(f->e_type);
        if (f->is_reference()) rebuild(f->opposite);
      } else if (auto* op = node_cast<OperationNode>(&n)) {
        rebuild(op->e_type);
      } else if (auto* p = node_cast<ParameterNode>(&n)) {
        rebuild(p->e_type);
      }
    });
  }

  work.reindex();
  resolve_types(work, builtins);
  return {std::move(work), std::move(changes)};
}

}  // namespace ecorelint
