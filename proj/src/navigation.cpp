#include "ecorelint/navigation.hpp"

#include <algorithm>
#include <map>

#include "ecorelint/errors.hpp"

namespace ecorelint {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

const Node* child_by_name(const Node& n, std::string_view name) {
  for (const auto& child : n.children) {
    if (child && is_named_kind(child->kind) && child->name == name) return child.get();
  }
  return nullptr;
}

// Resolution target for one serialized ref: `#//Frag`, `//Frag`, or
// `uri#//Frag`. The last whitespace-separated token carries the location;
// a leading QName (e.g. `ecore:EDataType`) is informational.
const Node* resolve_raw(const EcoreModel& m, const BuiltinRegistry& builtins,
                        std::string_view raw) {
  std::size_t ws = raw.find_last_of(" \t");
  std::string_view token = ws == std::string_view::npos ? raw : raw.substr(ws + 1);
  if (token.empty()) return nullptr;

  std::string_view uri, fragment;
  std::size_t hash = token.find('#');
  if (hash == std::string_view::npos) {
    if (token.rfind("//", 0) == 0) {
      fragment = token;
    } else {
      return nullptr;  // foreign resource or unintelligible
    }
  } else {
    uri = token.substr(0, hash);
    fragment = token.substr(hash + 1);
  }

  if (!uri.empty()) {
    if (uri == kEcoreNsUri) {
      if (fragment.rfind("//", 0) != 0) return nullptr;
      return builtins.find_datatype(fragment.substr(2));
    }
    return nullptr;  // cross-resource refs are out of scope, stay unresolved
  }
  if (fragment.rfind("//", 0) != 0) return nullptr;
  return resolve_fragment(m, fragment);
}

void resolve_one(const EcoreModel& m, const BuiltinRegistry& builtins, TypeRef& ref,
                 const Node& owner, const char* what, std::vector<Diagnostic>& out) {
  if (!ref.present()) return;
  ref.resolved = resolve_raw(m, builtins, ref.raw);
  if (!ref.resolved) {
    out.push_back(make_diagnostic(
        "SYN-005", owner.path, owner.loc,
        std::string("unresolved ") + what + " reference '" + ref.raw + "'"));
  }
}

}  // namespace

const Node* resolve_fragment(const EcoreModel& m, std::string_view fragment) {
  if (!m.root || fragment.rfind("//", 0) != 0) return nullptr;
  std::string_view rest = fragment.substr(2);
  const Node* cur = m.root.get();
  if (rest.empty()) return cur;
  for (std::string_view seg : split(rest, '/')) {
    if (seg.empty()) return nullptr;
    cur = child_by_name(*cur, seg);
    if (!cur) return nullptr;
  }
  return cur;
}

std::vector<Diagnostic> resolve_types(EcoreModel& m, const BuiltinRegistry& builtins) {
  std::vector<Diagnostic> out;
  if (!m.root) return out;
  walk(*m.root, [&](Node& n) {
    if (auto* cls = node_cast<ClassNode>(&n)) {
      for (TypeRef& super : cls->super_types) {
        resolve_one(m, builtins, super, n, "supertype", out);
      }
    } else if (auto* feat = node_cast<FeatureNode>(&n)) {
      resolve_one(m, builtins, feat->e_type, n, "type", out);
      if (feat->is_reference()) resolve_one(m, builtins, feat->opposite, n, "opposite", out);
    } else if (auto* op = node_cast<OperationNode>(&n)) {
      resolve_one(m, builtins, op->e_type, n, "return type", out);
    } else if (auto* param = node_cast<ParameterNode>(&n)) {
      resolve_one(m, builtins, param->e_type, n, "type", out);
    }
  });
  sort_diagnostics(out);
  return out;
}

namespace {

bool contains(const std::vector<const ClassNode*>& v, const ClassNode* x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

SuperClosure super_closure(const ClassNode& c) {
  SuperClosure out;
  // Depth-first in declaration order, first visit wins; the start class is
  // marked up front so cycles cannot re-add it. Flat vectors with linear
  // membership checks: inheritance graphs are small.
  std::vector<const ClassNode*> visited;
  std::vector<const ClassNode*> stack;
  visited.push_back(&c);
  bool start_reachable = false;
  auto push_supers = [&](const ClassNode& cls) {
    const auto& supers = cls.super_types;
    for (auto it = supers.rbegin(); it != supers.rend(); ++it) {
      if (const ClassNode* target = node_cast<ClassNode>(it->resolved)) {
        if (target == &c) start_reachable = true;
        stack.push_back(target);
      }
    }
  };
  push_supers(c);
  while (!stack.empty()) {
    const ClassNode* cur = stack.back();
    stack.pop_back();
    if (contains(visited, cur)) continue;
    visited.push_back(cur);
    out.ancestors.push_back(cur);
    push_supers(*cur);
  }
  if (!start_reachable) return out;

  // Shortest path back to the start (BFS over supertype edges).
  std::vector<const ClassNode*> order{&c};
  std::vector<int> parent{-1};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const TypeRef& super : order[head]->super_types) {
      const ClassNode* target = node_cast<ClassNode>(super.resolved);
      if (!target) continue;
      if (target == &c) {
        std::vector<const ClassNode*> cycle;
        for (int at = static_cast<int>(head); at != -1; at = parent[at])
          cycle.push_back(order[at]);
        std::reverse(cycle.begin(), cycle.end());
        out.cycle = std::move(cycle);
        return out;
      }
      if (!contains(order, target)) {
        order.push_back(target);
        parent.push_back(static_cast<int>(head));
      }
    }
  }
  return out;
}

std::vector<OwnedFeature> all_features(const ClassNode& c) {
  std::vector<OwnedFeature> out;
  for (const FeatureNode* f : features(c)) out.push_back({f, &c});
  for (const ClassNode* ancestor : super_closure(c).ancestors) {
    for (const FeatureNode* f : features(*ancestor)) out.push_back({f, ancestor});
  }
  return out;
}

std::vector<std::vector<const ClassNode*>> find_inheritance_cycles(
    const std::vector<const ClassNode*>& classes) {
  std::vector<std::vector<const ClassNode*>> cycles;
  std::set<std::set<const ClassNode*>> seen_sets;
  for (const ClassNode* cls : classes) {
    SuperClosure closure = super_closure(*cls);
    if (!closure.cycle) continue;
    std::set<const ClassNode*> members(closure.cycle->begin(), closure.cycle->end());
    if (seen_sets.insert(members).second) cycles.push_back(*closure.cycle);
  }
  return cycles;
}

FilterQuery FilterQuery::parse(std::string_view text) {
  FilterQuery q;
  auto starts = [&](std::string_view prefix) { return text.rfind(prefix, 0) == 0; };
  if (starts("supertypes-of:")) {
    q.kind = Kind::SupertypesOf;
    q.anchor = std::string(text.substr(14));
  } else if (starts("subtypes-of:")) {
    q.kind = Kind::SubtypesOf;
    q.anchor = std::string(text.substr(12));
  } else if (starts("related:")) {
    q.kind = Kind::RelatedByReference;
    q.anchor = std::string(text.substr(8));
  } else if (starts("kind:")) {
    q.kind = Kind::ByKind;
    std::string_view k = text.substr(5);
    if (k == "EClass") q.classifier_kind = NodeKind::Class;
    else if (k == "EDataType") q.classifier_kind = NodeKind::DataType;
    else if (k == "EEnum") q.classifier_kind = NodeKind::Enum;
    else throw FormatError("unknown classifier kind '" + std::string(k) + "'");
  } else if (starts("name:")) {
    q.kind = Kind::ByNamePattern;
    q.pattern = std::string(text.substr(5));
  } else {
    throw FormatError("unknown filter query '" + std::string(text) + "'");
  }
  if (q.kind != Kind::ByKind && q.kind != Kind::ByNamePattern && q.anchor.empty())
    throw FormatError("filter query needs an anchor class");
  return q;
}

bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

namespace {

const ClassNode* find_anchor_class(const EcoreModel& m, const std::string& anchor) {
  if (const Node* n = m.find(anchor)) return node_cast<ClassNode>(n);
  // Bare classifier name: accept when it names exactly one class.
  const ClassNode* found = nullptr;
  for (const auto& [path, node] : m.element_index) {
    if (node->kind == NodeKind::Class && node->name == anchor) {
      if (found) return nullptr;  // ambiguous
      found = node_cast<ClassNode>(node);
    }
  }
  return found;
}

void collect_classifiers(const EcoreModel& m, std::vector<const Node*>& out) {
  if (!m.root) return;
  walk(*m.root, [&](const Node& n) {
    if (is_classifier_kind(n.kind)) out.push_back(&n);
  });
}

}  // namespace

std::set<std::string> filter_selection(const EcoreModel& m, const FilterQuery& q) {
  std::set<std::string> out;
  std::vector<const Node*> all;
  collect_classifiers(m, all);

  switch (q.kind) {
    case FilterQuery::Kind::ByKind: {
      for (const Node* n : all) {
        if (n->kind == q.classifier_kind) out.insert(n->path);
      }
      return out;
    }
    case FilterQuery::Kind::ByNamePattern: {
      for (const Node* n : all) {
        if (glob_match(q.pattern, n->name)) out.insert(n->path);
      }
      return out;
    }
    default:
      break;
  }

  const ClassNode* anchor = find_anchor_class(m, q.anchor);
  if (!anchor) throw FormatError("anchor class not found: " + q.anchor);

  switch (q.kind) {
    case FilterQuery::Kind::SupertypesOf: {
      out.insert(anchor->path);
      for (const ClassNode* a : super_closure(*anchor).ancestors) out.insert(a->path);
      break;
    }
    case FilterQuery::Kind::SubtypesOf: {
      out.insert(anchor->path);
      for (const Node* n : all) {
        const ClassNode* cls = node_cast<ClassNode>(n);
        if (!cls || cls == anchor) continue;
        SuperClosure closure = super_closure(*cls);
        if (std::find(closure.ancestors.begin(), closure.ancestors.end(), anchor) !=
            closure.ancestors.end())
          out.insert(cls->path);
      }
      break;
    }
    case FilterQuery::Kind::RelatedByReference: {
      out.insert(anchor->path);
      for (const FeatureNode* f : features(*anchor)) {
        if (!f->is_reference()) continue;
        if (const Node* target = f->e_type.resolved) {
          if (is_classifier_kind(target->kind)) out.insert(target->path);
        }
      }
      for (const Node* n : all) {
        const ClassNode* cls = node_cast<ClassNode>(n);
        if (!cls) continue;
        for (const FeatureNode* f : features(*cls)) {
          if (f->is_reference() && f->e_type.resolved == anchor) out.insert(cls->path);
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace ecorelint
