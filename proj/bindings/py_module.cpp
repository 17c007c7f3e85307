// Python bindings for the ecorelint core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "ecorelint/compare.hpp"
#include "ecorelint/config.hpp"
#include "ecorelint/errors.hpp"
#include "ecorelint/exports.hpp"
#include "ecorelint/instances.hpp"
#include "ecorelint/json_io.hpp"
#include "ecorelint/layout.hpp"
#include "ecorelint/navigation.hpp"
#include "ecorelint/provenance.hpp"
#include "ecorelint/rules.hpp"
#include "ecorelint/xmi.hpp"

namespace py = pybind11;
using namespace ecorelint;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct PyModel {
  std::shared_ptr<EcoreModel> model;

  const EcoreModel& ref() const { return *model; }
};

PyModel wrap(EcoreModel&& m) {
  return PyModel{std::make_shared<EcoreModel>(std::move(m))};
}

PyModel load_model_text(const std::string& text, const std::string& uri) {
  EcoreModel m = parse_xmi(text, uri);
  resolve_types(m, BuiltinRegistry::standard());
  return wrap(std::move(m));
}

py::dict diagnostic_to_dict(const Diagnostic& d) {
  py::dict out;
  out["rule"] = d.rule_id;
  out["level"] = std::string(to_string(d.level));
  out["severity"] = std::string(to_string(d.severity));
  out["path"] = d.path;
  if (d.loc.valid()) {
    out["line"] = d.loc.line;
    out["col"] = d.loc.col;
  } else {
    out["line"] = py::none();
    out["col"] = py::none();
  }
  out["message"] = d.message;
  out["related"] = d.related_paths;
  return out;
}

py::list diagnostics_to_list(const std::vector<Diagnostic>& ds) {
  py::list out;
  for (const Diagnostic& d : ds) out.append(diagnostic_to_dict(d));
  return out;
}

RuleConfig config_from_text(const std::string& config_text) {
  if (config_text.empty()) return {};
  return parse_config(config_text);
}

py::list run_lint(const PyModel& model, const std::string& layout_json,
                  const std::vector<std::string>& dictionary,
                  const std::string& config_text) {
  RuleConfig cfg = config_from_text(config_text);
  RuleInputs inputs;
  std::optional<LayoutModel> layout;
  if (!layout_json.empty()) {
    layout = parse_layout(layout_json);
    inputs.layout = &*layout;
  }
  std::set<std::string> dict(dictionary.begin(), dictionary.end());
  if (!dictionary.empty()) inputs.dictionary = &dict;
  DiagnosticReport report = run_rules(model.ref(), inputs, cfg);
  return diagnostics_to_list(report.diagnostics);
}

py::dict delta_to_dict(const ModelDelta& delta) {
  py::dict out;
  out["added"] = delta.additions;
  out["removed"] = delta.deletions;
  py::list changed;
  for (const FieldChange& c : delta.changes) {
    py::dict item;
    item["path"] = c.path;
    item["field"] = c.field;
    item["old"] = c.old_value ? py::cast(*c.old_value) : py::none();
    item["new"] = c.new_value ? py::cast(*c.new_value) : py::none();
    changed.append(item);
  }
  out["changed"] = changed;
  return out;
}

py::dict metrics_to_dict(const LayoutMetrics& m) {
  py::dict out;
  out["crossings"] = m.crossings;
  out["bends"] = m.bends;
  out["total_edge_length"] = m.total_edge_length;
  out["longest_edge"] = m.longest_edge;
  out["min_edge_angle_deg"] =
      m.min_edge_angle_deg ? py::cast(*m.min_edge_angle_deg) : py::none();
  out["diagram_area"] = m.diagram_area;
  out["label_overlaps"] = m.label_overlaps;
  return out;
}

ReplaceScope scope_from(const std::vector<std::string>& kinds,
                        const std::vector<std::string>& fields) {
  ReplaceScope scope;
  for (const std::string& k : kinds) {
    if (k == "EPackage") scope.kinds.insert(NodeKind::Package);
    else if (k == "EClass") scope.kinds.insert(NodeKind::Class);
    else if (k == "EDataType") scope.kinds.insert(NodeKind::DataType);
    else if (k == "EEnum") scope.kinds.insert(NodeKind::Enum);
    else if (k == "EEnumLiteral") scope.kinds.insert(NodeKind::EnumLiteral);
    else if (k == "EAttribute") scope.kinds.insert(NodeKind::Attribute);
    else if (k == "EReference") scope.kinds.insert(NodeKind::Reference);
    else if (k == "EOperation") scope.kinds.insert(NodeKind::Operation);
    else if (k == "EParameter") scope.kinds.insert(NodeKind::Parameter);
    else throw ConfigError("unknown element kind '" + k + "'");
  }
  if (!fields.empty()) {
    scope.fields.clear();
    for (const std::string& f : fields) {
      if (f == "name") scope.fields.insert(ReplaceScope::Field::Name);
      else if (f == "defaultValueLiteral")
        scope.fields.insert(ReplaceScope::Field::DefaultValueLiteral);
      else if (f == "instanceTypeName")
        scope.fields.insert(ReplaceScope::Field::InstanceTypeName);
      else if (f == "annotationValue")
        scope.fields.insert(ReplaceScope::Field::AnnotationValue);
      else throw ConfigError("unknown field '" + f + "'");
    }
  }
  return scope;
}

const ClassNode* class_by_name(const EcoreModel& m, const std::string& name_or_path) {
  if (const Node* n = m.find(name_or_path)) {
    if (const ClassNode* cls = node_cast<ClassNode>(n)) return cls;
  }
  const ClassNode* found = nullptr;
  for (const auto& [path, node] : m.element_index) {
    if (node->kind == NodeKind::Class && node->name == name_or_path) {
      if (found) throw ConfigError("class name '" + name_or_path + "' is ambiguous");
      found = node_cast<ClassNode>(node);
    }
  }
  if (!found) throw ConfigError("class not found: " + name_or_path);
  return found;
}

}  // namespace

PYBIND11_MODULE(_ecorelint, m) {
  m.doc() = "Ecore metamodel quality toolkit";

  py::register_exception<ParseError>(m, "XmiParseError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigurationError", PyExc_ValueError);

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("root_name",
                             [](const PyModel& self) { return self.ref().root->name; })
      .def_property_readonly("source_uri",
                             [](const PyModel& self) { return self.ref().source_uri; })
      .def("paths",
           [](const PyModel& self) {
             std::vector<std::string> out;
             for (const auto& [path, _] : self.ref().element_index) out.push_back(path);
             return out;
           })
      .def("to_xmi", [](const PyModel& self) { return serialize_xmi(self.ref()); })
      .def("to_json", [](const PyModel& self) { return export_json(self.ref()); })
      .def("lint", &run_lint, py::arg("layout_json") = std::string(),
           py::arg("dictionary") = std::vector<std::string>{},
           py::arg("config") = std::string())
      .def("filter",
           [](const PyModel& self, const std::string& query) {
             std::set<std::string> out =
                 filter_selection(self.ref(), FilterQuery::parse(query));
             return std::vector<std::string>(out.begin(), out.end());
           })
      .def("export_svg",
           [](const PyModel& self, const std::string& layout_json) {
             return export_svg(self.ref(), parse_layout(layout_json));
           })
      .def("export_docs", [](const PyModel& self) { return export_docs(self.ref()); })
      .def("validate_instance",
           [](const PyModel& self, const std::string& instance_xml) {
             InstanceObject obj = parse_instance(instance_xml, self.ref());
             return diagnostics_to_list(validate_instance(obj, self.ref()));
           })
      .def("new_instance",
           [](const PyModel& self, const std::string& root, int depth) {
             const ClassNode* cls = class_by_name(self.ref(), root);
             auto result = synthesize_minimal_instance(self.ref(), *cls, depth);
             if (std::holds_alternative<Unsatisfiable>(result))
               throw FormatError("unsatisfiable: " + std::get<Unsatisfiable>(result).reason);
             return serialize_instance(std::get<InstanceObject>(result), self.ref());
           },
           py::arg("root"), py::arg("depth") = 100);

  m.def("parse_model", &load_model_text, py::arg("text"), py::arg("uri") = std::string(),
        "Parse a .ecore XMI document from text");
  m.def("load_model", [](const std::string& path) { return load_model_text(slurp(path), path); });
  m.def("parse_model_json",
        [](const std::string& text) {
          EcoreModel m = parse_json(text);
          resolve_types(m, BuiltinRegistry::standard());
          return wrap(std::move(m));
        });

  m.def("split_identifier", [](const std::string& name) { return split_identifier(name); });

  m.def("diff", [](const PyModel& a, const PyModel& b) { return delta_to_dict(diff(a.ref(), b.ref())); });
  m.def("changelog",
        [](const PyModel& a, const PyModel& b, const std::string& format) {
          return render_changelog(diff(a.ref(), b.ref()), format == "json"
                                                              ? ChangelogFormat::Json
                                                              : ChangelogFormat::Text);
        },
        py::arg("a"), py::arg("b"), py::arg("format") = "text");

  m.def("layout_metrics",
        [](const std::string& layout_json) { return metrics_to_dict(compute_metrics(parse_layout(layout_json))); });

  m.def("import_model",
        [](const PyModel& target, const PyModel& source) -> py::object {
          auto result = import_package(target.ref(), source.ref(), BuiltinRegistry::standard());
          if (std::holds_alternative<ConflictList>(result)) {
            py::list conflicts;
            for (const Conflict& c : std::get<ConflictList>(result)) {
              py::dict item;
              item["path"] = c.path;
              item["name"] = c.name;
              conflicts.append(item);
            }
            return py::make_tuple(py::none(), conflicts);
          }
          return py::make_tuple(wrap(std::move(std::get<EcoreModel>(result))), py::list());
        });

  m.def("copy_elements",
        [](const PyModel& source, const std::vector<std::string>& selection,
           const PyModel& target, const std::string& into_class) -> py::object {
          auto result = copy_elements(source.ref(), selection, target.ref(),
                                      BuiltinRegistry::standard(), into_class);
          if (std::holds_alternative<ConflictList>(result)) {
            py::list conflicts;
            for (const Conflict& c : std::get<ConflictList>(result)) {
              py::dict item;
              item["path"] = c.path;
              item["name"] = c.name;
              conflicts.append(item);
            }
            return py::make_tuple(py::none(), conflicts);
          }
          return py::make_tuple(wrap(std::move(std::get<EcoreModel>(result))), py::list());
        },
        py::arg("source"), py::arg("selection"), py::arg("target"),
        py::arg("into_class") = std::string());

  m.def("search_replace",
        [](const PyModel& model, const std::string& pattern, const std::string& replacement,
           bool regex, bool case_sensitive, bool dry_run,
           const std::vector<std::string>& kinds, const std::vector<std::string>& fields) {
          ReplaceOptions options;
          options.regex = regex;
          options.case_sensitive = case_sensitive;
          options.dry_run = dry_run;
          auto [result, changes] =
              search_replace(model.ref(), pattern, replacement, scope_from(kinds, fields),
                             options, BuiltinRegistry::standard());
          py::list change_list;
          for (const FieldChange& c : changes.renames) {
            py::dict item;
            item["path"] = c.path;
            item["field"] = c.field;
            item["old"] = c.old_value ? py::cast(*c.old_value) : py::none();
            item["new"] = c.new_value ? py::cast(*c.new_value) : py::none();
            change_list.append(item);
          }
          return py::make_tuple(wrap(std::move(result)), change_list);
        },
        py::arg("model"), py::arg("pattern"), py::arg("replacement"),
        py::arg("regex") = false, py::arg("case_sensitive") = true,
        py::arg("dry_run") = false, py::arg("kinds") = std::vector<std::string>{},
        py::arg("fields") = std::vector<std::string>{});

  m.def("element_ages",
        [](const PyModel& model, const std::string& log_path, long long now) {
          std::vector<std::string> warnings;
          auto ages = element_ages(log_path, model.ref(), now, &warnings);
          py::dict out;
          for (const auto& [path, info] : ages) {
            py::dict item;
            item["age"] = info.age(now) ? py::cast(*info.age(now)) : py::none();
            item["last_modified"] =
                info.last_modified ? py::cast(*info.last_modified) : py::none();
            out[py::str(path)] = item;
          }
          return py::make_tuple(out, warnings);
        });

  m.def("log_append", [](const PyModel& a, const PyModel& b, const std::string& log_path,
                         long long timestamp) {
    provenance_log_append(log_path, diff(a.ref(), b.ref()), timestamp);
  });

  m.def("rule_catalog", [] {
    py::list out;
    for (const RuleInfo& r : rule_catalog()) {
      py::dict item;
      item["id"] = std::string(r.id);
      item["level"] = std::string(to_string(r.level));
      item["severity"] = std::string(to_string(r.severity));
      item["description"] = std::string(r.description);
      out.append(item);
    }
    return out;
  });
}
