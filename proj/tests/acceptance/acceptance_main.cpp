// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. argv[1] is the path to the ecorelint CLI binary.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ecorelint/compare.hpp"
#include "ecorelint/config.hpp"
#include "ecorelint/errors.hpp"
#include "ecorelint/exports.hpp"
#include "ecorelint/instances.hpp"
#include "ecorelint/json_io.hpp"
#include "ecorelint/layout.hpp"
#include "ecorelint/navigation.hpp"
#include "ecorelint/rules.hpp"
#include "ecorelint/xmi.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace ecorelint;
using namespace testsupport;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  if (ok) {
    std::printf("PASS  %d %s (%s)\n", number, name.c_str(), detail.c_str());
  } else {
    ++g_failures;
    std::printf("FAIL  %d %s: %s\n", number, name.c_str(), detail.c_str());
  }
  std::fflush(stdout);
}

const char* kCanonicalFixtures[] = {
    "minimal.ecore",   "library.ecore", "shapes.ecore",     "diamond.ecore",
    "company.ecore",   "orders.ecore",  "types.ecore",      "enums.ecore",
    "annotated.ecore", "empty.ecore",   "operations.ecore", "cycle.ecore",
};

// ---------------------------------------------------------------------------
// 1. round-trip stability
// ---------------------------------------------------------------------------

bool criterion_round_trip(std::string& detail) {
  int count = 0;
  for (const char* name : kCanonicalFixtures) {
    std::string text = read_file(fixture_dir() / "models" / name);
    EcoreModel m = parse_xmi(text);
    if (serialize_xmi(m) != text) {
      detail = std::string(name) + ": serialize(parse(F)) differs from F";
      return false;
    }
    EcoreModel back = parse_json(export_json(m));
    if (!models_structurally_equal(m, back)) {
      detail = std::string(name) + ": JSON round trip is not structurally equal";
      return false;
    }
    ++count;
  }
  if (count < 10) {
    detail = "only " + std::to_string(count) + " fixtures";
    return false;
  }
  detail = std::to_string(count) + " fixtures, byte-identical";
  return true;
}

// ---------------------------------------------------------------------------
// 2. rule-fixture matrix
// ---------------------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> golden_pairs(const fs::path& file) {
  nlohmann::json doc = nlohmann::json::parse(read_file(file));
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : doc)
    out.push_back({item["rule"].get<std::string>(), item["path"].get<std::string>()});
  return out;
}

std::string render_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::string out;
  for (const auto& [rule, path] : pairs) out += rule + "@" + path + " ";
  return out.empty() ? "(none) " : out;
}

bool criterion_rule_matrix(std::string& detail) {
  const char* model_rules[] = {"SYN-001", "SYN-002", "SYN-003", "SYN-004", "SYN-005",
                               "SYN-006", "SYN-007", "SEM-001", "SEM-002", "SEM-003",
                               "SEM-004", "EMP-001", "EMP-002"};
  const char* layout_rules[] = {"EMP-101", "EMP-102", "EMP-104"};
  const char* instance_rules[] = {"INS-001", "INS-002", "INS-003", "INS-004", "INS-005"};
  int checked = 0;

  auto compare = [&](const std::string& label, const DiagnosticReport& report,
                     const fs::path& golden_file) {
    auto expected = golden_pairs(golden_file);
    std::vector<std::pair<std::string, std::string>> got;
    for (const Diagnostic& d : report.diagnostics) got.push_back({d.rule_id, d.path});
    if (got != expected) {
      detail = label + ": expected " + render_pairs(expected) + "but got " + render_pairs(got);
      return false;
    }
    ++checked;
    return true;
  };

  for (const char* rule : model_rules) {
    for (const char* pol : {"pos", "neg"}) {
      std::string base = std::string(rule) + "-" + pol;
      EcoreModel m = parse_xmi(read_file(fixture_dir() / "rules" / (base + ".ecore")));
      resolve_types(m, BuiltinRegistry::standard());
      RuleInputs inputs;
      std::set<std::string> dict;
      fs::path dict_file = fixture_dir() / "rules" / (base + ".dict");
      if (fs::exists(dict_file)) {
        dict = load_dictionary(dict_file);
        inputs.dictionary = &dict;
      }
      DiagnosticReport report = run_rules(m, inputs, {});
      if (!compare(base, report, fixture_dir() / "rules" / (base + ".expected.json")))
        return false;
    }
  }

  EcoreModel base_model = parse_xmi(read_file(fixture_dir() / "rules/layout-base.ecore"));
  resolve_types(base_model, BuiltinRegistry::standard());
  for (const char* rule : layout_rules) {
    for (const char* pol : {"pos", "neg"}) {
      std::string base = std::string(rule) + "-" + pol;
      LayoutModel layout =
          parse_layout(read_file(fixture_dir() / "rules" / (base + ".layout.json")));
      RuleInputs inputs;
      inputs.layout = &layout;
      DiagnosticReport report = run_rules(base_model, inputs, {});
      if (!compare(base, report, fixture_dir() / "rules" / (base + ".expected.json")))
        return false;
    }
  }

  EcoreModel catalog = parse_xmi(read_file(fixture_dir() / "instances/catalog.ecore"));
  resolve_types(catalog, BuiltinRegistry::standard());
  for (const char* rule : instance_rules) {
    for (const char* pol : {"pos", "neg"}) {
      std::string base = std::string(rule) + "-" + pol;
      InstanceObject obj =
          parse_instance(read_file(fixture_dir() / "instances" / (base + ".xmi")), catalog);
      DiagnosticReport report;
      report.diagnostics = validate_instance(obj, catalog);
      if (!compare(base, report, fixture_dir() / "instances" / (base + ".expected.json")))
        return false;
    }
  }

  detail = std::to_string(checked) + " fixtures for 21 rule ids";
  return true;
}

// ---------------------------------------------------------------------------
// 3. cycle oracle
// ---------------------------------------------------------------------------

// Bitset transitive closure, independent of the library's traversal.
bool oracle_has_cycle(const std::array<unsigned, 12>& adj, int n) {
  std::array<unsigned, 12> closure = adj;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (closure[i] & (1u << k)) closure[i] |= closure[k];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (closure[i] & (1u << i)) return true;
  }
  return false;
}

bool criterion_cycle_oracle(std::string& detail) {
  // Exhaustive: every digraph on up to 5 labeled nodes, self-loops included.
  for (int n = 1; n <= 5; ++n) {
    const long total = 1L << (n * n);
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<long> mismatch{-1};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < hw; ++w) {
      workers.emplace_back([&, w, n] {
        std::vector<std::unique_ptr<ClassNode>> owned;
        std::vector<ClassNode*> cls;
        for (int i = 0; i < n; ++i) {
          owned.push_back(std::make_unique<ClassNode>());
          owned.back()->name = "C" + std::to_string(i);
          owned.back()->super_types.reserve(static_cast<std::size_t>(n));
          cls.push_back(owned.back().get());
        }
        for (long mask = w; mask < total; mask += hw) {
          if (mismatch.load(std::memory_order_relaxed) >= 0) return;
          std::array<unsigned, 12> adj{};
          for (int i = 0; i < n; ++i) {
            cls[i]->super_types.clear();
            for (int j = 0; j < n; ++j) {
              if (mask & (1L << (i * n + j))) {
                cls[i]->super_types.push_back({std::string(), cls[j]});
                adj[static_cast<std::size_t>(i)] |= 1u << j;
              }
            }
          }
          bool lib = false;
          for (int i = 0; i < n && !lib; ++i) lib = super_closure(*cls[i]).cycle.has_value();
          if (lib != oracle_has_cycle(adj, n)) {
            mismatch.store(mask, std::memory_order_relaxed);
            return;
          }
        }
      });
    }
    for (auto& t : workers) t.join();
    if (mismatch.load() >= 0) {
      detail = "disagreement on n=" + std::to_string(n) +
               " mask=" + std::to_string(mismatch.load());
      return false;
    }
  }

  // 500 random digraphs with up to 12 nodes through the full SEM-004 rule.
  Rng rng(170);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 2 + static_cast<int>(rng.below(11));
    ModelBuilder builder("g" + std::to_string(trial));
    std::vector<ClassNode*> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(builder.add_class("C" + std::to_string(i)));
    std::array<unsigned, 12> adj{};
    double density = 0.05 + rng.real() * 0.25;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (rng.chance(density)) {
          ModelBuilder::add_super(nodes[i], "C" + std::to_string(j));
          adj[static_cast<std::size_t>(i)] |= 1u << j;
        }
      }
    }
    EcoreModel m = builder.finish();
    bool fired = false;
    for (const Diagnostic& d : check_circular_inheritance(m)) {
      if (d.rule_id == "SEM-004") fired = true;
    }
    if (fired != oracle_has_cycle(adj, n)) {
      detail = "random digraph trial " + std::to_string(trial) + " disagrees";
      return false;
    }
  }
  detail = "exhaustive on <=5 nodes plus 500 random digraphs on <=12 nodes";
  return true;
}

// ---------------------------------------------------------------------------
// 4. geometry oracle
// ---------------------------------------------------------------------------

bool criterion_geometry(std::string& detail) {
  Rng rng(4004);
  auto close = [](double a, double b) {
    double scale = std::max({std::abs(a), std::abs(b), 1e-12});
    return std::abs(a - b) <= 1e-9 * scale;
  };
  for (int trial = 0; trial < 200; ++trial) {
    LayoutModel l = random_layout(rng, 50);
    LayoutMetrics got = compute_metrics(l);
    int expected_crossings = oracle_crossings(l);
    if (got.crossings != expected_crossings) {
      detail = "crossings mismatch on trial " + std::to_string(trial);
      return false;
    }
    // Independent recomputation of the scalar metrics.
    int bends = 0;
    double total = 0, longest = 0;
    for (const auto& e : l.edges) {
      bends += static_cast<int>(e.points.size()) - 2;
      double len = 0;
      for (std::size_t i = 0; i + 1 < e.points.size(); ++i) {
        double dx = e.points[i + 1].x - e.points[i].x;
        double dy = e.points[i + 1].y - e.points[i].y;
        len += std::sqrt(dx * dx + dy * dy);
      }
      total += len;
      longest = std::max(longest, len);
    }
    double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
    bool any = false;
    for (const auto& node : l.nodes) {
      any = true;
      min_x = std::min(min_x, node.box.x);
      min_y = std::min(min_y, node.box.y);
      max_x = std::max(max_x, node.box.x + node.box.w);
      max_y = std::max(max_y, node.box.y + node.box.h);
    }
    for (const auto& e : l.edges) {
      for (const auto& p : e.points) {
        any = true;
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
      }
    }
    double area = any ? (max_x - min_x) * (max_y - min_y) : 0;
    if (got.bends != bends || !close(got.total_edge_length, total) ||
        !close(got.longest_edge, longest) || !close(got.diagram_area, area)) {
      detail = "scalar metric mismatch on trial " + std::to_string(trial);
      return false;
    }
    // Angle recomputation: the library uses acos, this check uses atan2.
    std::optional<double> min_angle;
    struct Seg {
      Point a, b;
    };
    std::vector<Seg> segs;
    for (const auto& e : l.edges)
      for (std::size_t i = 0; i + 1 < e.points.size(); ++i)
        segs.push_back({e.points[i], e.points[i + 1]});
    auto angle_at = [](Point shared, Point pa, Point pb) -> std::optional<double> {
      if ((pa.x == shared.x && pa.y == shared.y) || (pb.x == shared.x && pb.y == shared.y))
        return std::nullopt;
      double a1 = std::atan2(pa.y - shared.y, pa.x - shared.x);
      double a2 = std::atan2(pb.y - shared.y, pb.x - shared.x);
      double deg = std::abs(a1 - a2) * 180.0 / 3.14159265358979323846;
      if (deg > 180.0) deg = 360.0 - deg;
      if (deg > 90.0) deg = 180.0 - deg;
      return deg;
    };
    for (std::size_t i = 0; i < segs.size(); ++i) {
      for (std::size_t j = i + 1; j < segs.size(); ++j) {
        std::optional<double> deg;
        auto same = [](Point p, Point q) { return p.x == q.x && p.y == q.y; };
        if (same(segs[i].a, segs[j].a)) deg = angle_at(segs[i].a, segs[i].b, segs[j].b);
        else if (same(segs[i].a, segs[j].b)) deg = angle_at(segs[i].a, segs[i].b, segs[j].a);
        else if (same(segs[i].b, segs[j].a)) deg = angle_at(segs[i].b, segs[i].a, segs[j].b);
        else if (same(segs[i].b, segs[j].b)) deg = angle_at(segs[i].b, segs[i].a, segs[j].a);
        if (deg && (!min_angle || *deg < *min_angle)) min_angle = deg;
      }
    }
    if (min_angle.has_value() != got.min_edge_angle_deg.has_value()) {
      detail = "angle presence mismatch on trial " + std::to_string(trial);
      return false;
    }
    if (min_angle && std::abs(*min_angle - *got.min_edge_angle_deg) > 1e-9 * 90.0) {
      detail = "angle value mismatch on trial " + std::to_string(trial);
      return false;
    }
    // Crossing count invariant under 20 random translations/scalings.
    for (int k = 0; k < 20; ++k) {
      double dx = rng.range(-1000, 1000), dy = rng.range(-1000, 1000);
      double scale = 0.05 + rng.real() * 8.0;
      LayoutModel moved = l;
      for (auto& e : moved.edges) {
        for (auto& p : e.points) {
          p.x = p.x * scale + dx;
          p.y = p.y * scale + dy;
        }
      }
      if (edge_crossings(moved) != expected_crossings) {
        detail = "crossings not invariant under transform, trial " + std::to_string(trial);
        return false;
      }
    }
  }
  detail = "200 random layouts, 20 transforms each, tolerances met";
  return true;
}

// ---------------------------------------------------------------------------
// 5. diff oracle
// ---------------------------------------------------------------------------

bool criterion_diff_oracle(std::string& detail) {
  for (const char* name : kCanonicalFixtures) {
    EcoreModel m = parse_xmi(read_file(fixture_dir() / "models" / name));
    resolve_types(m, BuiltinRegistry::standard());
    if (!diff(m, m).empty()) {
      detail = std::string("diff(a,a) not empty for ") + name;
      return false;
    }
  }
  Rng rng(5005);
  MutationKit kit{rng};
  for (int trial = 0; trial < 100; ++trial) {
    EcoreModel a = kit.random_model();
    EcoreModel b = clone_model(a);
    resolve_types(b, BuiltinRegistry::standard());
    kit.mutate(b, 1 + static_cast<int>(rng.below(5)));

    ModelDelta delta = diff(a, b);
    TripleOracle oa(a), ob(b);
    std::set<std::string> expect_add, expect_del, expect_chg;
    for (const std::string& p : ob.paths)
      if (!oa.paths.count(p)) expect_add.insert(p);
    for (const std::string& p : oa.paths)
      if (!ob.paths.count(p)) expect_del.insert(p);
    for (const auto& [key, value] : oa.triples) {
      auto it = ob.triples.find(key);
      if (it != ob.triples.end() && it->second != value) expect_chg.insert(key);
    }
    std::set<std::string> got_add(delta.additions.begin(), delta.additions.end());
    std::set<std::string> got_del(delta.deletions.begin(), delta.deletions.end());
    std::set<std::string> got_chg;
    for (const FieldChange& c : delta.changes) got_chg.insert(c.path + "|" + c.field);
    if (got_add != expect_add || got_del != expect_del || got_chg != expect_chg) {
      detail = "trial " + std::to_string(trial) + " disagrees with the triple oracle";
      return false;
    }
  }
  detail = "100 random mutation pairs plus reflexivity on all fixtures";
  return true;
}

// ---------------------------------------------------------------------------
// 6. identifier splitting
// ---------------------------------------------------------------------------

bool criterion_split(std::string& detail) {
  if (split_identifier("myBadSpelling") !=
      std::vector<std::string>{"my", "bad", "spelling"}) {
    detail = "myBadSpelling did not split into my/bad/spelling";
    return false;
  }
  Rng rng(606);
  const char alphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
  for (int trial = 0; trial < 1000; ++trial) {
    std::string id;
    int len = 1 + static_cast<int>(rng.below(30));
    for (int i = 0; i < len; ++i) id += alphabet[rng.below(sizeof(alphabet) - 1)];
    std::string joined;
    for (const std::string& w : split_identifier(id)) joined += w;
    std::string expected;
    for (char ch : id) {
      if (ch != '_') expected += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    }
    if (joined != expected) {
      detail = "reconstruction failed for '" + id + "'";
      return false;
    }
  }
  detail = "exact example plus 1000 random reconstructions";
  return true;
}

// ---------------------------------------------------------------------------
// 7. instance synthesis soundness
// ---------------------------------------------------------------------------

bool criterion_synthesis(std::string& detail) {
  auto sound_over = [&](const EcoreModel& mm, const std::string& label) {
    std::vector<const ClassNode*> classes;
    walk(*mm.root, [&](const Node& n) {
      if (const ClassNode* c = node_cast<ClassNode>(&n)) classes.push_back(c);
    });
    for (const ClassNode* cls : classes) {
      if (cls->abstract_flag) continue;
      auto r = synthesize_minimal_instance(mm, *cls);
      if (std::holds_alternative<InstanceObject>(r)) {
        std::vector<Diagnostic> ds = validate_instance(std::get<InstanceObject>(r), mm);
        if (!ds.empty()) {
          detail = label + "/" + cls->name + " synthesized but fails validation: " +
                   ds[0].rule_id + " " + ds[0].message;
          return false;
        }
      }
    }
    return true;
  };

  for (const char* name : kCanonicalFixtures) {
    EcoreModel mm = parse_xmi(read_file(fixture_dir() / "models" / name));
    resolve_types(mm, BuiltinRegistry::standard());
    if (!sound_over(mm, name)) return false;
  }
  {
    EcoreModel catalog = parse_xmi(read_file(fixture_dir() / "instances/catalog.ecore"));
    resolve_types(catalog, BuiltinRegistry::standard());
    if (!sound_over(catalog, "catalog.ecore")) return false;

    const ClassNode* media = node_cast<ClassNode>(catalog.find("/inst/Media"));
    if (!std::holds_alternative<Unsatisfiable>(synthesize_minimal_instance(catalog, *media))) {
      detail = "abstract root was satisfiable";
      return false;
    }
  }
  {
    EcoreModel mm = parse_xmi(read_file(fixture_dir() / "instances/unsat-no-concrete.ecore"));
    resolve_types(mm, BuiltinRegistry::standard());
    const ClassNode* holder = node_cast<ClassNode>(mm.find("/u/Holder"));
    if (!std::holds_alternative<Unsatisfiable>(synthesize_minimal_instance(mm, *holder))) {
      detail = "no-concrete-subclass fixture was satisfiable";
      return false;
    }
  }
  {
    EcoreModel mm = parse_xmi(read_file(fixture_dir() / "rules/SEM-002-pos.ecore"));
    resolve_types(mm, BuiltinRegistry::standard());
    const ClassNode* holder = node_cast<ClassNode>(mm.find("/p/Holder"));
    if (!std::holds_alternative<Unsatisfiable>(synthesize_minimal_instance(mm, *holder))) {
      detail = "frozen-required fixture was satisfiable";
      return false;
    }
  }

  Rng rng(707);
  int satisfiable = 0;
  for (int trial = 0; trial < 100; ++trial) {
    EcoreModel mm = random_metamodel(rng, trial);
    std::vector<const ClassNode*> classes;
    walk(*mm.root, [&](const Node& n) {
      if (const ClassNode* c = node_cast<ClassNode>(&n)) classes.push_back(c);
    });
    for (const ClassNode* cls : classes) {
      if (cls->abstract_flag) continue;
      auto r = synthesize_minimal_instance(mm, *cls);
      if (std::holds_alternative<InstanceObject>(r)) {
        ++satisfiable;
        std::vector<Diagnostic> ds = validate_instance(std::get<InstanceObject>(r), mm);
        if (!ds.empty()) {
          detail = "random metamodel " + std::to_string(trial) + "/" + cls->name +
                   " fails validation: " + ds[0].rule_id;
          return false;
        }
      }
    }
  }
  if (satisfiable < 50) {
    detail = "random generator produced too few satisfiable classes";
    return false;
  }
  detail = "fixtures, 100 random metamodels, 3 unsatisfiable shapes";
  return true;
}

// ---------------------------------------------------------------------------
// 8. atomicity / no mutation (CLI battery)
// ---------------------------------------------------------------------------

std::string g_cli;

struct CmdResult {
  int exit_code = -1;
  std::string output;
};

CmdResult run_cli(const std::string& args, const fs::path& scratch) {
  fs::path out_file = scratch / "stdout.txt";
  std::string cmd = g_cli + " " + args + " > \"" + out_file.string() + "\" 2>/dev/null";
  int rc = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.output = buf.str();
  return result;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool criterion_cli_atomicity(std::string& detail) {
  fs::path scratch =
      fs::temp_directory_path() / ("ecorelint_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch / "in");
  fs::create_directories(scratch / "out");
  struct Cleanup {
    fs::path p;
    ~Cleanup() { fs::remove_all(p); }
  } cleanup{scratch};

  std::vector<fs::path> inputs;
  for (const char* name : kCanonicalFixtures) {
    fs::copy_file(fixture_dir() / "models" / name, scratch / "in" / name);
    inputs.push_back(scratch / "in" / name);
  }
  for (const char* name : {"SEM-001-pos.ecore", "SYN-003-pos.ecore", "layout-base.ecore",
                           "EMP-101-pos.layout.json", "EMP-002-pos.dict"}) {
    fs::copy_file(fixture_dir() / "rules" / name, scratch / "in" / name);
    inputs.push_back(scratch / "in" / name);
  }
  for (const char* name : {"catalog.ecore", "INS-002-pos.xmi", "INS-005-neg.xmi"}) {
    fs::copy_file(fixture_dir() / "instances" / name, scratch / "in" / name);
    inputs.push_back(scratch / "in" / name);
  }

  std::map<std::string, std::uint64_t> before;
  for (const fs::path& p : inputs) before[p.string()] = fnv1a(read_file(p));

  fs::path in = scratch / "in";
  fs::path out = scratch / "out";
  int invocations = 0;
  auto expect_exit = [&](const std::string& args, int expected) {
    CmdResult r = run_cli(args, scratch);
    ++invocations;
    if (r.exit_code != expected) {
      detail = "`" + args + "` exited " + std::to_string(r.exit_code) + ", expected " +
               std::to_string(expected);
      return false;
    }
    return true;
  };

  bool ok =
      expect_exit("lint " + (in / "library.ecore").string(), 0) &&
      expect_exit("lint " + (in / "SEM-001-pos.ecore").string(), 1) &&
      expect_exit("lint " + (in / "SYN-003-pos.ecore").string(), 2) &&
      expect_exit("lint " + (in / "cycle.ecore").string(), 2) &&
      expect_exit("lint " + (in / "missing.ecore").string(), 3) &&
      expect_exit("lint " + (in / "EMP-101-pos.layout.json").string(), 3) &&
      expect_exit("lint " + (in / "layout-base.ecore").string() + " --layout " +
                      (in / "EMP-101-pos.layout.json").string(),
                  1) &&
      expect_exit("lint " + (in / "library.ecore").string() + " --dict " +
                      (in / "EMP-002-pos.dict").string(),
                  1) &&
      expect_exit("diff " + (in / "library.ecore").string() + " " +
                      (in / "shapes.ecore").string(),
                  0) &&
      expect_exit("diff " + (in / "library.ecore").string() + " " +
                      (in / "library.ecore").string() + " --format json",
                  0) &&
      expect_exit("filter " + (in / "diamond.ecore").string() + " supertypes-of:/diamond/D",
                  0) &&
      expect_exit("filter " + (in / "diamond.ecore").string() + " bogus-query", 3) &&
      expect_exit("export json " + (in / "library.ecore").string() + " -o " +
                      (out / "library.json").string(),
                  0) &&
      expect_exit("export svg " + (in / "layout-base.ecore").string() + " --layout " +
                      (in / "EMP-101-pos.layout.json").string() + " -o " +
                      (out / "diagram.svg").string(),
                  0) &&
      expect_exit("export docs " + (in / "annotated.ecore").string() + " -o " +
                      (out / "docs.md").string(),
                  0) &&
      expect_exit("replace " + (in / "library.ecore").string() + " Book Volume --dry-run", 0) &&
      expect_exit("replace " + (in / "library.ecore").string() + " Book Volume -o " +
                      (out / "replaced.ecore").string(),
                  0) &&
      expect_exit("import " + (in / "orders.ecore").string() + " " +
                      (in / "orders.ecore").string(),
                  2) &&
      expect_exit("import " + (in / "orders.ecore").string() + " " +
                      (in / "shapes.ecore").string() + " -o " + (out / "merged.ecore").string(),
                  0) &&
      expect_exit("copy " + (in / "orders.ecore").string() + " " +
                      (in / "shapes.ecore").string() + " --select /orders/Customer -o " +
                      (out / "copied.ecore").string(),
                  0) &&
      expect_exit("instance new " + (in / "catalog.ecore").string() + " --root Library -o " +
                      (out / "instance.xmi").string(),
                  0) &&
      expect_exit("instance new " + (in / "catalog.ecore").string() + " --root Media", 2) &&
      expect_exit("instance validate " + (in / "INS-002-pos.xmi").string() + " " +
                      (in / "catalog.ecore").string(),
                  2) &&
      expect_exit("instance validate " + (in / "INS-005-neg.xmi").string() + " " +
                      (in / "catalog.ecore").string(),
                  0) &&
      expect_exit("age " + (in / "library.ecore").string() + " --log " +
                      (out / "prov.ndjson").string() + " --now 100",
                  0) &&
      expect_exit("log-append " + (in / "library.ecore").string() + " " +
                      (in / "shapes.ecore").string() + " --log " +
                      (out / "prov.ndjson").string() + " --now 100",
                  0) &&
      expect_exit("rules --format json", 0);
  if (!ok) return false;

  // The synthesized instance validates cleanly end to end.
  if (!expect_exit("instance validate " + (out / "instance.xmi").string() + " " +
                       (in / "catalog.ecore").string(),
                   0))
    return false;

  // Rule config: disabling the only firing rule drops the exit code to 0,
  // and a config with an unknown key is a usage failure.
  write_file(scratch / "off.cfg", "rule.SEM-004 = off\n");
  write_file(scratch / "bad.cfg", "colour = blue\n");
  if (!expect_exit("lint " + (in / "cycle.ecore").string() + " --config " +
                       (scratch / "off.cfg").string(),
                   0))
    return false;
  if (!expect_exit("lint " + (in / "cycle.ecore").string() + " --config " +
                       (scratch / "bad.cfg").string(),
                   3))
    return false;

  // lint --format json output parses against the documented schema.
  CmdResult json_run =
      run_cli("lint " + (in / "SYN-003-pos.ecore").string() + " --format json", scratch);
  ++invocations;
  if (json_run.exit_code != 2) {
    detail = "json lint exit code " + std::to_string(json_run.exit_code);
    return false;
  }
  nlohmann::json doc = nlohmann::json::parse(json_run.output, nullptr, false);
  if (doc.is_discarded() || !doc.contains("diagnostics") || !doc.contains("summary")) {
    detail = "json lint output failed the schema check";
    return false;
  }
  int listed = 0;
  for (const auto& d : doc["diagnostics"]) {
    for (const char* key : {"rule", "level", "severity", "path", "message", "related"}) {
      if (!d.contains(key)) {
        detail = std::string("diagnostic missing key '") + key + "'";
        return false;
      }
    }
    ++listed;
  }
  if (doc["summary"]["total"].get<int>() != listed) {
    detail = "summary total does not match the diagnostics list";
    return false;
  }
  CmdResult json_again =
      run_cli("lint " + (in / "SYN-003-pos.ecore").string() + " --format json", scratch);
  ++invocations;
  if (json_again.output != json_run.output) {
    detail = "json output is not stable across invocations";
    return false;
  }

  for (const fs::path& p : inputs) {
    if (fnv1a(read_file(p)) != before[p.string()]) {
      detail = "input file changed without --write: " + p.string();
      return false;
    }
  }

  // --write rewrites in place through the atomic temp-and-rename path.
  fs::copy_file(fixture_dir() / "models/library.ecore", scratch / "writable.ecore");
  if (!expect_exit("replace " + (scratch / "writable.ecore").string() + " Book Volume --write",
                   0))
    return false;
  if (read_file(scratch / "writable.ecore").find("Volume") == std::string::npos) {
    detail = "--write did not rewrite the file";
    return false;
  }

  detail = std::to_string(invocations) + " invocations, input hashes unchanged";
  return true;
}

// ---------------------------------------------------------------------------
// 9. fuzz no-crash
// ---------------------------------------------------------------------------

bool criterion_fuzz(std::string& detail) {
  std::vector<std::string> seeds;
  for (const char* name : kCanonicalFixtures)
    seeds.push_back(read_file(fixture_dir() / "models" / name));
  Rng rng(909);
  int parsed = 0, rejected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text = seeds[rng.below(static_cast<std::uint32_t>(seeds.size()))];
    int edits = 1 + static_cast<int>(rng.below(8));
    for (int e = 0; e < edits && !text.empty(); ++e) {
      std::size_t pos = rng.below(static_cast<std::uint32_t>(text.size()));
      switch (rng.below(5)) {
        case 0:
          text[pos] = static_cast<char>(rng.below(256));
          break;
        case 1:
          text.erase(pos, 1 + rng.below(16));
          break;
        case 2: {
          const char* bits[] = {"<", ">", "\"", "&", "<eClassifiers", "xsi:type=\"x\"", "]]>"};
          text.insert(pos, bits[rng.below(7)]);
          break;
        }
        case 3:
          text.insert(pos, text.substr(pos / 2, rng.below(32)));
          break;
        default:
          text.resize(pos);
          break;
      }
    }
    try {
      EcoreModel m = parse_xmi(text);
      resolve_types(m, BuiltinRegistry::standard());
      RuleInputs inputs;
      DiagnosticReport report = run_rules(m, inputs, {});
      (void)report;
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    } catch (const FormatError&) {
      ++rejected;
    } catch (const std::exception& e) {
      detail = "trial " + std::to_string(trial) + " escaped with: " + e.what();
      return false;
    }
  }
  detail = std::to_string(parsed) + " parsed and linted, " + std::to_string(rejected) +
           " rejected with structured errors";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_tests <path-to-ecorelint-cli>\n");
    return 2;
  }
  g_cli = argv[1];

  struct Criterion {
    int number;
    const char* name;
    bool (*fn)(std::string&);
  };
  const Criterion criteria[] = {
      {1, "round-trip-stability", criterion_round_trip},
      {2, "rule-fixture-matrix", criterion_rule_matrix},
      {3, "cycle-oracle", criterion_cycle_oracle},
      {4, "geometry-oracle", criterion_geometry},
      {5, "diff-oracle", criterion_diff_oracle},
      {6, "identifier-splitting", criterion_split},
      {7, "instance-synthesis-soundness", criterion_synthesis},
      {8, "atomicity-no-mutation", criterion_cli_atomicity},
      {9, "fuzz-no-crash", criterion_fuzz},
  };
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
      ok = false;
    }
    report(c.number, c.name, ok, detail.empty() ? "failed" : detail);
  }
  return g_failures == 0 ? 0 : 1;
}
