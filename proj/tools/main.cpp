// ecorelint — lint, diff, transform and export Ecore metamodels.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

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

namespace fs = std::filesystem;
using namespace ecorelint;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitFindings = 1;  // warnings/info only
constexpr int kExitErrors = 2;    // error findings, conflicts, unsatisfiable
constexpr int kExitUsage = 3;     // usage, parse, or config failure

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// All writes go through a temporary file and an atomic rename.
void write_file_atomic(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write file: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

EcoreModel load_model(const std::string& path) {
  EcoreModel m = parse_xmi(read_file(path), path);
  resolve_types(m, BuiltinRegistry::standard());
  return m;
}

RuleConfig effective_config(const std::string& config_path) {
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("ECORELINT_CONFIG")) path = env;
  }
  if (path.empty()) return {};
  return load_config(path);
}

int exit_for_report(const DiagnosticReport& report) {
  if (report.has_errors()) return kExitErrors;
  if (!report.empty()) return kExitFindings;
  return kExitClean;
}

long long now_or(long long explicit_now) {
  if (explicit_now >= 0) return explicit_now;
  return static_cast<long long>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
}

NodeKind kind_from_name(const std::string& name) {
  if (name == "EPackage") return NodeKind::Package;
  if (name == "EClass") return NodeKind::Class;
  if (name == "EDataType") return NodeKind::DataType;
  if (name == "EEnum") return NodeKind::Enum;
  if (name == "EEnumLiteral") return NodeKind::EnumLiteral;
  if (name == "EAttribute") return NodeKind::Attribute;
  if (name == "EReference") return NodeKind::Reference;
  if (name == "EOperation") return NodeKind::Operation;
  if (name == "EParameter") return NodeKind::Parameter;
  throw ConfigError("unknown element kind '" + name + "'");
}

const ClassNode* find_root_class(const EcoreModel& m, const std::string& name_or_path) {
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

struct LintArgs {
  std::string model, layout, dict, config, format = "human";
};

int run_lint(const LintArgs& args) {
  RuleConfig cfg = effective_config(args.config);
  EcoreModel model = load_model(args.model);

  std::optional<LayoutModel> layout;
  if (!args.layout.empty()) layout = parse_layout(read_file(args.layout));

  std::optional<std::set<std::string>> dictionary;
  std::string dict_path = !args.dict.empty() ? args.dict : cfg.dictionary_path;
  if (!dict_path.empty()) dictionary = load_dictionary(dict_path);

  RuleInputs inputs;
  if (layout) inputs.layout = &*layout;
  if (dictionary) inputs.dictionary = &*dictionary;
  DiagnosticReport report = run_rules(model, inputs, cfg);

  if (args.format == "json") {
    std::cout << report_to_json(report);
  } else {
    std::cout << report_to_text(report, args.model);
  }
  return exit_for_report(report);
}

ReplaceScope parse_scope(const std::vector<std::string>& kinds,
                         const std::vector<std::string>& fields) {
  ReplaceScope scope;
  for (const std::string& k : kinds) scope.kinds.insert(kind_from_name(k));
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

void print_changeset(const ChangeSet& changes) {
  if (changes.empty()) {
    std::cout << "no changes\n";
    return;
  }
  for (const FieldChange& c : changes.renames) {
    std::cout << "~ " << c.path << " " << c.field << ": "
              << (c.old_value ? *c.old_value : "(unset)") << " -> "
              << (c.new_value ? *c.new_value : "(unset)") << "\n";
  }
}

int print_conflicts(const ConflictList& conflicts) {
  std::cerr << "conflicts, nothing written:\n";
  for (const Conflict& c : conflicts)
    std::cerr << "  " << c.name << " already exists at " << c.path << "\n";
  return kExitErrors;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ecore metamodel quality toolkit"};
  app.require_subcommand(1);

  // lint
  LintArgs lint_args;
  CLI::App* lint = app.add_subcommand("lint", "Evaluate the rule catalog over a model");
  lint->add_option("model", lint_args.model, "path to the .ecore file")->required();
  lint->add_option("--layout", lint_args.layout, "layout sidecar JSON");
  lint->add_option("--dict", lint_args.dict, "spell-check dictionary (one word per line)");
  lint->add_option("--config", lint_args.config, "rule config file (default: $ECORELINT_CONFIG)");
  lint->add_option("--format", lint_args.format, "human|json")
      ->check(CLI::IsMember({"human", "json"}));

  // rules
  std::string rules_format = "human";
  CLI::App* rules_cmd = app.add_subcommand("rules", "Print the rule catalog");
  rules_cmd->add_option("--format", rules_format, "human|json")
      ->check(CLI::IsMember({"human", "json"}));

  // diff
  std::string diff_a, diff_b, diff_format = "text";
  CLI::App* diff_cmd = app.add_subcommand("diff", "Changelog between two model versions");
  diff_cmd->add_option("a", diff_a, "old version")->required();
  diff_cmd->add_option("b", diff_b, "new version")->required();
  diff_cmd->add_option("--format", diff_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // replace
  std::string rep_model, rep_pattern, rep_replacement, rep_out;
  std::vector<std::string> rep_kinds, rep_fields;
  bool rep_regex = false, rep_icase = false, rep_dry = false, rep_write = false;
  CLI::App* replace_cmd = app.add_subcommand("replace", "Search and replace across the model");
  replace_cmd->add_option("model", rep_model)->required();
  replace_cmd->add_option("pattern", rep_pattern)->required();
  replace_cmd->add_option("replacement", rep_replacement)->required();
  replace_cmd->add_flag("--regex", rep_regex, "treat pattern as a regular expression");
  replace_cmd->add_flag("--ignore-case", rep_icase, "case-insensitive matching");
  replace_cmd->add_flag("--dry-run", rep_dry, "print the change set, touch nothing");
  replace_cmd->add_option("--kinds", rep_kinds, "element kinds to search (e.g. EClass)");
  replace_cmd->add_option("--fields", rep_fields,
                          "fields to search: name, defaultValueLiteral, instanceTypeName, "
                          "annotationValue");
  replace_cmd->add_option("-o,--out", rep_out, "write result here");
  replace_cmd->add_flag("--write", rep_write, "rewrite the input file in place");

  // import
  std::string imp_target, imp_source, imp_out;
  bool imp_write = false;
  CLI::App* import_cmd = app.add_subcommand("import", "Import a model into another");
  import_cmd->add_option("target", imp_target)->required();
  import_cmd->add_option("source", imp_source)->required();
  import_cmd->add_option("-o,--out", imp_out, "write the merged model here");
  import_cmd->add_flag("--write", imp_write, "rewrite the target file in place");

  // copy
  std::string copy_source, copy_target, copy_into, copy_out;
  std::vector<std::string> copy_select;
  bool copy_write = false;
  CLI::App* copy_cmd = app.add_subcommand("copy", "Copy selected elements across models");
  copy_cmd->add_option("source", copy_source)->required();
  copy_cmd->add_option("target", copy_target)->required();
  copy_cmd->add_option("--select", copy_select, "element path in the source")->required();
  copy_cmd->add_option("--into", copy_into, "target class path for feature copies");
  copy_cmd->add_option("-o,--out", copy_out, "write the result here");
  copy_cmd->add_flag("--write", copy_write, "rewrite the target file in place");

  // instance
  CLI::App* instance_cmd = app.add_subcommand("instance", "Dynamic-instance tools");
  instance_cmd->require_subcommand(1);
  std::string iv_instance, iv_model, iv_format = "human";
  CLI::App* ivalidate = instance_cmd->add_subcommand("validate", "Validate an instance document");
  ivalidate->add_option("instance", iv_instance)->required();
  ivalidate->add_option("model", iv_model)->required();
  ivalidate->add_option("--format", iv_format, "human|json")
      ->check(CLI::IsMember({"human", "json"}));
  std::string in_model, in_root, in_out;
  int in_depth = 100;
  CLI::App* inew = instance_cmd->add_subcommand("new", "Synthesize a minimal instance");
  inew->add_option("model", in_model)->required();
  inew->add_option("--root", in_root, "EClass name or path")->required();
  inew->add_option("--depth", in_depth, "containment recursion limit");
  inew->add_option("-o,--out", in_out, "write the instance here");

  // export
  CLI::App* export_cmd = app.add_subcommand("export", "Export the model to other formats");
  export_cmd->require_subcommand(1);
  std::string ej_model, ej_out;
  CLI::App* ejson = export_cmd->add_subcommand("json", "JSON rendering of the model");
  ejson->add_option("model", ej_model)->required();
  ejson->add_option("-o,--out", ej_out);
  std::string es_model, es_layout, es_out;
  CLI::App* esvg = export_cmd->add_subcommand("svg", "SVG diagram from a layout sidecar");
  esvg->add_option("model", es_model)->required();
  esvg->add_option("--layout", es_layout, "layout sidecar JSON")->required();
  esvg->add_option("-o,--out", es_out);
  std::string ed_model, ed_out;
  CLI::App* edocs = export_cmd->add_subcommand("docs", "Markdown documentation");
  edocs->add_option("model", ed_model)->required();
  edocs->add_option("-o,--out", ed_out);

  // filter
  std::string fil_model, fil_query;
  CLI::App* filter_cmd = app.add_subcommand("filter", "Select elements by query");
  filter_cmd->add_option("model", fil_model)->required();
  filter_cmd
      ->add_option("query", fil_query,
                   "supertypes-of:<class> | subtypes-of:<class> | related:<class> | "
                   "kind:EClass|EDataType|EEnum | name:<glob>")
      ->required();

  // age
  std::string age_model, age_log;
  long long age_now = -1;
  CLI::App* age_cmd = app.add_subcommand("age", "Element ages from the provenance log");
  age_cmd->add_option("model", age_model)->required();
  age_cmd->add_option("--log", age_log, "provenance log (ndjson)")->required();
  age_cmd->add_option("--now", age_now, "reference time (unix seconds, default: now)");

  // log-append
  std::string la_a, la_b, la_log;
  long long la_now = -1;
  CLI::App* log_cmd = app.add_subcommand(
      "log-append", "Append the delta between two versions to a provenance log");
  log_cmd->add_option("a", la_a, "old version")->required();
  log_cmd->add_option("b", la_b, "new version")->required();
  log_cmd->add_option("--log", la_log)->required();
  log_cmd->add_option("--now", la_now, "timestamp to record (default: now)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*lint) return run_lint(lint_args);

    if (*rules_cmd) {
      std::cout << (rules_format == "json" ? catalog_to_json() : catalog_to_text());
      return kExitClean;
    }

    if (*diff_cmd) {
      EcoreModel a = load_model(diff_a);
      EcoreModel b = load_model(diff_b);
      ModelDelta delta = diff(a, b);
      std::cout << render_changelog(delta, diff_format == "json" ? ChangelogFormat::Json
                                                                 : ChangelogFormat::Text);
      return kExitClean;
    }

    if (*replace_cmd) {
      EcoreModel model = load_model(rep_model);
      ReplaceScope scope = parse_scope(rep_kinds, rep_fields);
      ReplaceOptions options;
      options.regex = rep_regex;
      options.case_sensitive = !rep_icase;
      options.dry_run = rep_dry;
      auto [result, changes] = search_replace(model, rep_pattern, rep_replacement, scope,
                                              options, BuiltinRegistry::standard());
      print_changeset(changes);
      if (!rep_dry) {
        if (rep_write) write_file_atomic(rep_model, serialize_xmi(result));
        else if (!rep_out.empty()) write_file_atomic(rep_out, serialize_xmi(result));
      }
      return kExitClean;
    }

    if (*import_cmd) {
      EcoreModel target = load_model(imp_target);
      EcoreModel source = load_model(imp_source);
      auto result = import_package(target, source, BuiltinRegistry::standard());
      if (std::holds_alternative<ConflictList>(result))
        return print_conflicts(std::get<ConflictList>(result));
      std::string xmi = serialize_xmi(std::get<EcoreModel>(result));
      if (imp_write) write_file_atomic(imp_target, xmi);
      else emit(xmi, imp_out);
      return kExitClean;
    }

    if (*copy_cmd) {
      EcoreModel source = load_model(copy_source);
      EcoreModel target = load_model(copy_target);
      auto result =
          copy_elements(source, copy_select, target, BuiltinRegistry::standard(), copy_into);
      if (std::holds_alternative<ConflictList>(result))
        return print_conflicts(std::get<ConflictList>(result));
      std::string xmi = serialize_xmi(std::get<EcoreModel>(result));
      if (copy_write) write_file_atomic(copy_target, xmi);
      else emit(xmi, copy_out);
      return kExitClean;
    }

    if (*ivalidate) {
      EcoreModel model = load_model(iv_model);
      InstanceObject instance = parse_instance(read_file(iv_instance), model);
      DiagnosticReport report;
      report.diagnostics = validate_instance(instance, model);
      if (iv_format == "json") std::cout << report_to_json(report);
      else std::cout << report_to_text(report, iv_instance);
      return exit_for_report(report);
    }

    if (*inew) {
      EcoreModel model = load_model(in_model);
      const ClassNode* root = find_root_class(model, in_root);
      auto result = synthesize_minimal_instance(model, *root, in_depth);
      if (std::holds_alternative<Unsatisfiable>(result)) {
        std::cerr << "unsatisfiable: " << std::get<Unsatisfiable>(result).reason << "\n";
        return kExitErrors;
      }
      emit(serialize_instance(std::get<InstanceObject>(result), model), in_out);
      return kExitClean;
    }

    if (*ejson) {
      emit(export_json(load_model(ej_model)), ej_out);
      return kExitClean;
    }
    if (*esvg) {
      EcoreModel model = load_model(es_model);
      LayoutModel layout = parse_layout(read_file(es_layout));
      emit(export_svg(model, layout), es_out);
      return kExitClean;
    }
    if (*edocs) {
      emit(export_docs(load_model(ed_model)), ed_out);
      return kExitClean;
    }

    if (*filter_cmd) {
      EcoreModel model = load_model(fil_model);
      for (const std::string& path : filter_selection(model, FilterQuery::parse(fil_query)))
        std::cout << path << "\n";
      return kExitClean;
    }

    if (*age_cmd) {
      EcoreModel model = load_model(age_model);
      std::vector<std::string> warnings;
      long long now = now_or(age_now);
      auto ages = element_ages(age_log, model, now, &warnings);
      for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& [path, info] : ages) {
        std::cout << path << "\t";
        if (auto age = info.age(now)) std::cout << *age;
        else std::cout << "unknown";
        std::cout << "\t";
        if (info.last_modified) std::cout << *info.last_modified;
        else std::cout << "-";
        std::cout << "\n";
      }
      return kExitClean;
    }

    if (*log_cmd) {
      EcoreModel a = load_model(la_a);
      EcoreModel b = load_model(la_b);
      provenance_log_append(la_log, diff(a, b), now_or(la_now));
      return kExitClean;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
