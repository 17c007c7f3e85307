#include "ecorelint/rules.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace ecorelint {

namespace {

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (name[0] >= '0' && name[0] <= '9') return false;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '$';
    if (!ok) return false;
  }
  return true;
}

bool is_pascal_case(std::string_view name) {
  if (name.empty()) return false;
  if (!(name[0] >= 'A' && name[0] <= 'Z')) return false;
  return name.find('_') == std::string_view::npos;
}

bool is_camel_case(std::string_view name) {
  if (name.empty()) return false;
  if (!(name[0] >= 'a' && name[0] <= 'z')) return false;
  return name.find('_') == std::string_view::npos;
}

bool is_upper_snake(std::string_view name) {
  if (name.empty()) return false;
  if (!(name[0] >= 'A' && name[0] <= 'Z')) return false;
  for (char c : name) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

bool is_numeric_word(const std::string& w) {
  for (char c : w) {
    if (c < '0' || c > '9') return false;
  }
  return !w.empty();
}

}  // namespace

std::vector<Diagnostic> check_identifier(std::string_view name, NodeKind kind) {
  std::vector<Diagnostic> out;
  if (!is_valid_identifier(name)) {
    out.push_back(make_diagnostic(
        "SYN-001", {}, {},
        "invalid name '" + std::string(name) + "' for " + std::string(to_string(kind))));
    return out;  // a validity error suppresses the convention warning
  }
  switch (kind) {
    case NodeKind::Class:
    case NodeKind::DataType:
    case NodeKind::Enum:
      if (!is_pascal_case(name)) {
        out.push_back(make_diagnostic(
            "EMP-001", {}, {},
            "name '" + std::string(name) + "' should be PascalCase for " +
                std::string(to_string(kind))));
      }
      break;
    case NodeKind::Attribute:
    case NodeKind::Reference:
    case NodeKind::Operation:
    case NodeKind::Parameter:
      if (!is_camel_case(name)) {
        out.push_back(make_diagnostic(
            "EMP-001", {}, {},
            "name '" + std::string(name) + "' should be camelCase for " +
                std::string(to_string(kind))));
      }
      break;
    case NodeKind::EnumLiteral:
      if (!is_camel_case(name) && !is_upper_snake(name)) {
        out.push_back(make_diagnostic(
            "EMP-001", {}, {},
            "name '" + std::string(name) +
                "' should be camelCase or UPPER_SNAKE for EEnumLiteral"));
      }
      break;
    default:
      break;  // packages only get the validity check
  }
  return out;
}

std::vector<std::string> split_identifier(std::string_view name) {
  enum class Cls { Lower, Upper, Digit, Other };
  auto classify = [](char c) {
    if (c >= 'a' && c <= 'z') return Cls::Lower;
    if (c >= 'A' && c <= 'Z') return Cls::Upper;
    if (c >= '0' && c <= '9') return Cls::Digit;
    return Cls::Other;
  };
  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  };
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    Cls cls = classify(c);
    if (cls == Cls::Other) {
      flush();
      continue;
    }
    if (!current.empty()) {
      Cls prev = classify(name[i - 1]);
      bool boundary = false;
      if (prev == Cls::Lower && cls == Cls::Upper) boundary = true;
      if (prev == Cls::Digit && cls != Cls::Digit) boundary = true;
      if (prev != Cls::Digit && cls == Cls::Digit) boundary = true;
      // A capital run ends before its last capital when a lowercase follows:
      // URLParser -> url parser.
      if (prev == Cls::Upper && cls == Cls::Upper && i + 1 < name.size() &&
          classify(name[i + 1]) == Cls::Lower)
        boundary = true;
      if (boundary) flush();
    }
    current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  flush();
  return words;
}

std::vector<Diagnostic> spellcheck_model(const EcoreModel& m,
                                         const std::set<std::string>& dictionary) {
  std::vector<Diagnostic> out;
  if (!m.root) return out;
  walk(*m.root, [&](const Node& n) {
    if (!is_named_kind(n.kind) || n.name.empty()) return;
    std::vector<std::string> unknown;
    for (const std::string& word : split_identifier(n.name)) {
      if (is_numeric_word(word)) continue;
      if (!dictionary.count(word)) unknown.push_back(word);
    }
    if (unknown.empty()) return;
    std::string msg = "name '" + n.name + "' contains unknown word(s):";
    for (const std::string& w : unknown) msg += " " + w;
    out.push_back(make_diagnostic("EMP-002", n.path, n.loc, msg));
  });
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_multiplicity_bounds(const FeatureNode& f) {
  std::vector<Diagnostic> out;
  bool ok = f.lower_bound >= 0 &&
            (f.upper_bound == -1 || f.upper_bound >= std::max(1, f.lower_bound));
  if (!ok) {
    out.push_back(make_diagnostic(
        "SYN-002", f.path, f.loc,
        "invalid multiplicity bounds (" + std::to_string(f.lower_bound) + ", " +
            std::to_string(f.upper_bound) + ")"));
  }
  return out;
}

namespace {

void check_package_uniqueness(const PackageNode& pkg, std::vector<Diagnostic>& out) {
  std::map<std::string, std::vector<const Node*>> by_name;
  for (const Node* c : classifiers(pkg)) by_name[c->name].push_back(c);
  for (const auto& [name, nodes] : by_name) {
    if (nodes.size() < 2) continue;
    std::vector<std::string> related;
    for (const Node* n : nodes) related.push_back(n->path);
    Diagnostic d = make_diagnostic(
        "SYN-003", nodes[1]->path, nodes[1]->loc,
        "classifier name '" + name + "' appears " + std::to_string(nodes.size()) +
            " times in package '" + pkg.name + "'");
    d.related_paths = std::move(related);
    out.push_back(std::move(d));
  }
  for (const PackageNode* sub : subpackages(pkg)) check_package_uniqueness(*sub, out);
}

}  // namespace

std::vector<Diagnostic> check_name_uniqueness(const EcoreModel& m) {
  std::vector<Diagnostic> out;
  if (!m.root) return out;
  check_package_uniqueness(*m.root, out);

  walk(*m.root, [&](const Node& n) {
    const ClassNode* cls = node_cast<ClassNode>(&n);
    if (!cls) return;
    std::map<std::string, std::vector<OwnedFeature>> by_name;
    for (const OwnedFeature& of : all_features(*cls)) by_name[of.feature->name].push_back(of);
    for (const auto& [name, entries] : by_name) {
      if (entries.size() < 2) continue;
      Diagnostic d = make_diagnostic(
          "SYN-004", cls->path, cls->loc,
          "feature name '" + name + "' appears " + std::to_string(entries.size()) +
              " times on class '" + cls->name + "' (own and inherited features must be unique)");
      for (const OwnedFeature& of : entries) d.related_paths.push_back(of.feature->path);
      out.push_back(std::move(d));
    }
  });
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_references(const EcoreModel& m, const BuiltinRegistry& builtins,
                                         std::span<const std::string> extra_known_types) {
  std::vector<Diagnostic> out;
  if (!m.root) return out;
  auto known_type = [&](const std::string& name) {
    if (builtins.known_instance_type(name)) return true;
    return std::find(extra_known_types.begin(), extra_known_types.end(), name) !=
           extra_known_types.end();
  };
  auto unresolved = [&](const TypeRef& ref, const Node& owner, const char* what) {
    if (ref.present() && !ref.resolved) {
      out.push_back(make_diagnostic(
          "SYN-005", owner.path, owner.loc,
          std::string("unresolved ") + what + " reference '" + ref.raw + "'"));
    }
  };
  walk(*m.root, [&](const Node& n) {
    if (const ClassNode* cls = node_cast<ClassNode>(&n)) {
      for (const TypeRef& super : cls->super_types) unresolved(super, n, "supertype");
    } else if (const FeatureNode* f = node_cast<FeatureNode>(&n)) {
      unresolved(f->e_type, n, "type");
      if (f->is_reference()) unresolved(f->opposite, n, "opposite");
      if (!f->e_type.present()) {
        out.push_back(make_diagnostic(
            "SYN-007", n.path, n.loc,
            "feature '" + n.name + "' has no type (eType is required)"));
      }
    } else if (const OperationNode* op = node_cast<OperationNode>(&n)) {
      unresolved(op->e_type, n, "return type");
    } else if (const ParameterNode* p = node_cast<ParameterNode>(&n)) {
      unresolved(p->e_type, n, "type");
    } else if (const DataTypeNode* dt = node_cast<DataTypeNode>(&n)) {
      if (!dt->instance_type_name) {
        out.push_back(make_diagnostic(
            "SYN-006", n.path, n.loc,
            "EDataType '" + n.name + "' has no instanceTypeName"));
      } else if (!known_type(*dt->instance_type_name)) {
        out.push_back(make_diagnostic(
            "SYN-006", n.path, n.loc,
            "EDataType '" + n.name + "' has unknown instanceTypeName '" +
                *dt->instance_type_name + "'"));
      }
    }
  });
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_circular_inheritance(const EcoreModel& m) {
  std::vector<Diagnostic> out;
  if (!m.root) return out;
  std::vector<const ClassNode*> classes;
  walk(*m.root, [&](const Node& n) {
    if (const ClassNode* cls = node_cast<ClassNode>(&n)) classes.push_back(cls);
  });
  for (const auto& cycle : find_inheritance_cycles(classes)) {
    std::string names;
    for (const ClassNode* c : cycle) {
      if (!names.empty()) names += " -> ";
      names += c->name;
    }
    Diagnostic d = make_diagnostic(
        "SEM-004", cycle.front()->path, cycle.front()->loc,
        "circular inheritance: " + names + " -> " + cycle.front()->name);
    for (const ClassNode* c : cycle) d.related_paths.push_back(c->path);
    out.push_back(std::move(d));
  }
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> check_satisfiability(const EcoreModel& m) {
  std::vector<Diagnostic> out;
  if (!m.root) return out;
  std::vector<const ClassNode*> classes;
  walk(*m.root, [&](const Node& n) {
    if (const ClassNode* cls = node_cast<ClassNode>(&n)) classes.push_back(cls);
  });

  std::set<const ClassNode*> inherited;
  for (const ClassNode* cls : classes) {
    for (const TypeRef& super : cls->super_types) {
      if (const ClassNode* target = node_cast<ClassNode>(super.resolved)) inherited.insert(target);
    }
  }

  for (const ClassNode* cls : classes) {
    if (cls->abstract_flag && !inherited.count(cls)) {
      out.push_back(make_diagnostic(
          "SEM-001", cls->path, cls->loc,
          "abstract class '" + cls->name + "' is never inherited"));
    }
    if (!cls->abstract_flag) {
      bool has_features = !all_features(*cls).empty();
      bool has_operations = !operations(*cls).empty();
      if (!has_operations) {
        for (const ClassNode* a : super_closure(*cls).ancestors) {
          if (!operations(*a).empty()) {
            has_operations = true;
            break;
          }
        }
      }
      if (!has_features && !has_operations) {
        out.push_back(make_diagnostic(
            "SEM-003", cls->path, cls->loc,
            "class '" + cls->name + "' has no features and no operations"));
      }
    }
    for (const FeatureNode* f : features(*cls)) {
      if (!f->changeable && f->lower_bound >= 1 && !f->default_value_literal) {
        out.push_back(make_diagnostic(
            "SEM-002", f->path, f->loc,
            "feature '" + f->name +
                "' is required and not changeable but has no default value; no valid "
                "instance can provide it"));
      }
    }
  }
  sort_diagnostics(out);
  return out;
}

DiagnosticReport run_rules(const EcoreModel& m, const RuleInputs& inputs,
                           const RuleConfig& cfg) {
  cfg.validate();
  const BuiltinRegistry& builtins = inputs.builtins ? *inputs.builtins : BuiltinRegistry::standard();

  std::vector<Diagnostic> all;

  if (m.root) {
    walk(*m.root, [&](const Node& n) {
      if (!is_named_kind(n.kind)) return;
      for (Diagnostic& d : check_identifier(n.name, n.kind)) {
        d.path = n.path;
        d.loc = n.loc;
        all.push_back(std::move(d));
      }
      if (const FeatureNode* f = node_cast<FeatureNode>(&n)) {
        for (Diagnostic& d : check_multiplicity_bounds(*f)) all.push_back(std::move(d));
      }
    });
  }

  for (Diagnostic& d : check_name_uniqueness(m)) all.push_back(std::move(d));
  for (Diagnostic& d : check_references(m, builtins, cfg.extra_known_types))
    all.push_back(std::move(d));
  for (Diagnostic& d : check_circular_inheritance(m)) all.push_back(std::move(d));
  for (Diagnostic& d : check_satisfiability(m)) all.push_back(std::move(d));
  if (inputs.dictionary) {
    for (Diagnostic& d : spellcheck_model(m, *inputs.dictionary)) all.push_back(std::move(d));
  }
  if (inputs.layout) {
    for (Diagnostic& d : layout_report(m, *inputs.layout, cfg)) all.push_back(std::move(d));
  }

  DiagnosticReport report;
  for (Diagnostic& d : all) {
    if (!cfg.rule_enabled(d.rule_id)) continue;
    d.severity = cfg.rule_severity(d.rule_id);
    report.diagnostics.push_back(std::move(d));
  }
  sort_diagnostics(report.diagnostics);
  return report;
}

}  // namespace ecorelint
