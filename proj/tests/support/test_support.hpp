#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ecorelint/layout.hpp"
#include "ecorelint/model.hpp"
#include "ecorelint/navigation.hpp"

namespace testsupport {

inline std::filesystem::path fixture_dir() {
#ifdef ECORELINT_FIXTURE_DIR
  return std::filesystem::path(ECORELINT_FIXTURE_DIR);
#else
  return std::filesystem::path("tests/fixtures");
#endif
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read fixture: " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

/// Deterministic xorshift64* generator for property tests.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    return state * 0x2545F4914F6CDD1DULL;
  }

  std::uint32_t below(std::uint32_t n) { return n ? static_cast<std::uint32_t>(next() % n) : 0; }
  double real() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
  double range(double lo, double hi) { return lo + real() * (hi - lo); }
  bool chance(double p) { return real() < p; }
};

/// In-test builder for synthetic models; resolution is the caller's step.
struct ModelBuilder {
  ecorelint::EcoreModel model;
  ecorelint::PackageNode* root = nullptr;

  explicit ModelBuilder(const std::string& name = "gen",
                        const std::string& ns_uri = "http://example.org/gen",
                        const std::string& prefix = "gen") {
    auto pkg = std::make_unique<ecorelint::PackageNode>();
    pkg->name = name;
    pkg->ns_uri = ns_uri;
    pkg->ns_prefix = prefix;
    root = pkg.get();
    model.root = std::move(pkg);
  }

  ecorelint::ClassNode* add_class(const std::string& name, bool abstract_flag = false) {
    auto cls = std::make_unique<ecorelint::ClassNode>();
    cls->name = name;
    cls->abstract_flag = abstract_flag;
    ecorelint::ClassNode* out = cls.get();
    root->children.push_back(std::move(cls));
    return out;
  }

  ecorelint::EnumNode* add_enum(const std::string& name,
                                const std::vector<std::string>& literal_names) {
    auto en = std::make_unique<ecorelint::EnumNode>();
    en->name = name;
    long value = 0;
    for (const std::string& lit_name : literal_names) {
      auto lit = std::make_unique<ecorelint::EnumLiteralNode>();
      lit->name = lit_name;
      lit->value = value++;
      en->children.push_back(std::move(lit));
    }
    ecorelint::EnumNode* out = en.get();
    root->children.push_back(std::move(en));
    return out;
  }

  ecorelint::DataTypeNode* add_datatype(const std::string& name,
                                        const std::optional<std::string>& instance_type) {
    auto dt = std::make_unique<ecorelint::DataTypeNode>();
    dt->name = name;
    dt->instance_type_name = instance_type;
    ecorelint::DataTypeNode* out = dt.get();
    root->children.push_back(std::move(dt));
    return out;
  }

  static void add_super(ecorelint::ClassNode* cls, const std::string& target_name) {
    cls->super_types.push_back({"#//" + target_name, nullptr});
  }

  ecorelint::FeatureNode* add_attr(ecorelint::ClassNode* cls, const std::string& name,
                                   const std::string& raw_type, int lower = 0, int upper = 1) {
    auto f = std::make_unique<ecorelint::FeatureNode>(ecorelint::NodeKind::Attribute);
    f->name = name;
    f->e_type.raw = raw_type;
    f->lower_bound = lower;
    f->upper_bound = upper;
    ecorelint::FeatureNode* out = f.get();
    cls->children.push_back(std::move(f));
    return out;
  }

  ecorelint::FeatureNode* add_ref(ecorelint::ClassNode* cls, const std::string& name,
                                  const std::string& raw_type, int lower = 0, int upper = 1,
                                  bool containment = false) {
    auto f = std::make_unique<ecorelint::FeatureNode>(ecorelint::NodeKind::Reference);
    f->name = name;
    f->e_type.raw = raw_type;
    f->lower_bound = lower;
    f->upper_bound = upper;
    f->containment = containment;
    ecorelint::FeatureNode* out = f.get();
    cls->children.push_back(std::move(f));
    return out;
  }

  /// Reindex + resolve against the standard builtins; unresolved refs are fine.
  ecorelint::EcoreModel finish() {
    model.reindex();
    ecorelint::resolve_types(model, ecorelint::BuiltinRegistry::standard());
    return std::move(model);
  }
};

inline std::string builtin_raw(const std::string& name) {
  return "ecore:EDataType http://www.eclipse.org/emf/2002/Ecore#//" + name;
}

/// Random models and tracked random mutations for the diff oracle tests.
/// Names are always fresh, so element paths never need ordinals.
struct MutationKit {
  Rng& rng;
  int serial = 0;

  ecorelint::EcoreModel random_model() {
    ModelBuilder b("m" + std::to_string(serial++));
    int classes = 2 + static_cast<int>(rng.below(6));
    for (int i = 0; i < classes; ++i) {
      ecorelint::ClassNode* cls = b.add_class("Cls" + std::to_string(i), rng.chance(0.2));
      int feats = static_cast<int>(rng.below(4));
      for (int f = 0; f < feats; ++f) {
        if (rng.chance(0.6)) {
          b.add_attr(cls, "attr" + std::to_string(f),
                     builtin_raw(rng.chance(0.5) ? "EString" : "EInt"),
                     static_cast<int>(rng.below(2)), rng.chance(0.8) ? 1 : -1);
        } else {
          b.add_ref(cls, "ref" + std::to_string(f),
                    "#//Cls" + std::to_string(rng.below(static_cast<std::uint32_t>(classes))),
                    0, rng.chance(0.5) ? 1 : -1, rng.chance(0.3));
        }
      }
      if (i > 0 && rng.chance(0.4))
        ModelBuilder::add_super(cls,
                                "Cls" + std::to_string(rng.below(static_cast<std::uint32_t>(i))));
    }
    return b.finish();
  }

  void mutate(ecorelint::EcoreModel& m, int count) {
    using namespace ecorelint;
    for (int k = 0; k < count; ++k) {
      int action = static_cast<int>(rng.below(5));
      if (action == 0) {
        auto cls = std::make_unique<ClassNode>();
        cls->name = "Fresh" + std::to_string(serial++);
        m.root->children.push_back(std::move(cls));
      } else if (action == 1) {
        auto& kids = m.root->children;
        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < kids.size(); ++i) {
          if (kids[i] && is_classifier_kind(kids[i]->kind)) candidates.push_back(i);
        }
        if (candidates.size() > 1) {
          kids.erase(kids.begin() + static_cast<long>(candidates[rng.below(
                                        static_cast<std::uint32_t>(candidates.size()))]));
        }
      } else {
        std::vector<Node*> targets;
        walk(*m.root, [&](Node& n) {
          if (n.kind == NodeKind::Attribute || n.kind == NodeKind::Reference ||
              n.kind == NodeKind::Class)
            targets.push_back(&n);
        });
        if (targets.empty()) continue;
        Node* pick = targets[rng.below(static_cast<std::uint32_t>(targets.size()))];
        if (auto* f = node_cast<FeatureNode>(pick)) {
          switch (rng.below(4)) {
            case 0: f->upper_bound = f->upper_bound == -1 ? 1 : -1; break;
            case 1: f->lower_bound = 1 - f->lower_bound; break;
            case 2: f->changeable = !f->changeable; break;
            default: f->default_value_literal = "d" + std::to_string(serial++); break;
          }
        } else if (auto* c = node_cast<ClassNode>(pick)) {
          c->abstract_flag = !c->abstract_flag;
        }
      }
    }
    m.reindex();
    ecorelint::resolve_types(m, ecorelint::BuiltinRegistry::standard());
  }
};

/// Random small metamodels for instance-synthesis soundness. Every type
/// reference resolves; containment may require recursion and may be
/// genuinely unsatisfiable (abstract-only targets, containment cycles).
inline ecorelint::EcoreModel random_metamodel(Rng& rng, int serial) {
  ModelBuilder b("rm" + std::to_string(serial), "http://example.org/rm", "rm");
  int classes = 1 + static_cast<int>(rng.below(5));
  ecorelint::EnumNode* colors = b.add_enum("Hue", {"one", "two"});
  (void)colors;
  std::vector<ecorelint::ClassNode*> nodes;
  for (int i = 0; i < classes; ++i)
    nodes.push_back(b.add_class("K" + std::to_string(i), rng.chance(0.25)));
  for (int i = 0; i < classes; ++i) {
    if (i > 0 && rng.chance(0.3))
      ModelBuilder::add_super(nodes[i], "K" + std::to_string(rng.below(static_cast<std::uint32_t>(i))));
    int feats = static_cast<int>(rng.below(4));
    for (int f = 0; f < feats; ++f) {
      std::string name = "f" + std::to_string(i) + "_" + std::to_string(f);
      int lower = rng.chance(0.5) ? 1 : 0;
      switch (rng.below(4)) {
        case 0:
          b.add_attr(nodes[i], name, builtin_raw(rng.chance(0.5) ? "EInt" : "EString"),
                     lower, rng.chance(0.3) ? -1 : std::max(1, lower));
          break;
        case 1:
          b.add_attr(nodes[i], name, "#//Hue", lower, 1);
          break;
        case 2:
          b.add_ref(nodes[i], name,
                    "#//K" + std::to_string(rng.below(static_cast<std::uint32_t>(classes))),
                    lower, rng.chance(0.3) ? -1 : std::max(1, lower),
                    /*containment=*/true);
          break;
        default:
          b.add_ref(nodes[i], name,
                    "#//K" + std::to_string(rng.below(static_cast<std::uint32_t>(classes))),
                    lower, std::max(1, lower), /*containment=*/false);
          break;
      }
    }
  }
  return b.finish();
}

/// Deterministic structural rendering used for model equality in tests;
/// deliberately independent of the library's own serializers.
inline void render_structure(const ecorelint::Node& n, std::string& out, int depth) {
  using namespace ecorelint;
  out.append(depth * 2, ' ');
  out += to_string(n.kind);
  out += ' ';
  out += n.name;
  switch (n.kind) {
    case NodeKind::Package: {
      const auto& p = static_cast<const PackageNode&>(n);
      out += " uri=" + p.ns_uri + " prefix=" + p.ns_prefix;
      break;
    }
    case NodeKind::Class: {
      const auto& c = static_cast<const ClassNode&>(n);
      out += c.abstract_flag ? " abstract" : "";
      out += c.interface_flag ? " interface" : "";
      for (const TypeRef& t : c.super_types) out += " super=" + t.raw;
      break;
    }
    case NodeKind::DataType: {
      const auto& d = static_cast<const DataTypeNode&>(n);
      out += " itn=" + (d.instance_type_name ? *d.instance_type_name : std::string("<none>"));
      break;
    }
    case NodeKind::EnumLiteral: {
      const auto& l = static_cast<const EnumLiteralNode&>(n);
      out += " value=" + std::to_string(l.value);
      if (l.literal) out += " literal=" + *l.literal;
      break;
    }
    case NodeKind::Attribute:
    case NodeKind::Reference: {
      const auto& f = static_cast<const FeatureNode&>(n);
      out += " type=" + f.e_type.raw;
      out += " bounds=" + std::to_string(f.lower_bound) + ".." + std::to_string(f.upper_bound);
      out += f.changeable ? "" : " frozen";
      out += f.derived ? " derived" : "";
      if (f.default_value_literal) out += " default=" + *f.default_value_literal;
      if (f.is_reference()) {
        out += f.containment ? " containment" : "";
        if (f.opposite.present()) out += " opposite=" + f.opposite.raw;
      }
      break;
    }
    case NodeKind::Operation: {
      const auto& o = static_cast<const OperationNode&>(n);
      out += " type=" + o.e_type.raw;
      out += " bounds=" + std::to_string(o.lower_bound) + ".." + std::to_string(o.upper_bound);
      break;
    }
    case NodeKind::Parameter: {
      const auto& p = static_cast<const ParameterNode&>(n);
      out += " type=" + p.e_type.raw;
      out += " bounds=" + std::to_string(p.lower_bound) + ".." + std::to_string(p.upper_bound);
      break;
    }
    case NodeKind::Annotation:
      out += " source=" + static_cast<const ecorelint::AnnotationNode&>(n).source;
      break;
    case NodeKind::Detail: {
      const auto& d = static_cast<const DetailNode&>(n);
      out += " " + d.key + "=" + d.value;
      break;
    }
    default:
      return;  // opaque content is byte-layout, not structure
  }
  out += '\n';
  for (const auto& child : n.children) {
    if (child && child->kind != ecorelint::NodeKind::Opaque)
      render_structure(*child, out, depth + 1);
  }
}

inline std::string structure_of(const ecorelint::EcoreModel& m) {
  std::string out;
  if (m.root) render_structure(*m.root, out, 0);
  return out;
}

inline bool models_structurally_equal(const ecorelint::EcoreModel& a,
                                      const ecorelint::EcoreModel& b) {
  return structure_of(a) == structure_of(b);
}

/// Independent pairwise-segment crossing oracle: parametric intersection
/// instead of the library's orientation tests.
inline int oracle_crossings(const ecorelint::LayoutModel& l) {
  using ecorelint::Point;
  struct Seg {
    Point a, b;
    std::size_t edge;
  };
  std::vector<Seg> segs;
  for (std::size_t e = 0; e < l.edges.size(); ++e) {
    for (std::size_t i = 0; i + 1 < l.edges[e].points.size(); ++i)
      segs.push_back({l.edges[e].points[i], l.edges[e].points[i + 1], e});
  }
  int count = 0;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segs[i].edge == segs[j].edge) continue;
      double rx = segs[i].b.x - segs[i].a.x, ry = segs[i].b.y - segs[i].a.y;
      double sx = segs[j].b.x - segs[j].a.x, sy = segs[j].b.y - segs[j].a.y;
      double denom = rx * sy - ry * sx;
      double qpx = segs[j].a.x - segs[i].a.x, qpy = segs[j].a.y - segs[i].a.y;
      if (denom != 0) {
        double t = (qpx * sy - qpy * sx) / denom;
        double u = (qpx * ry - qpy * rx) / denom;
        if (t > 0 && t < 1 && u > 0 && u < 1) ++count;
      } else if (qpx * ry - qpy * rx == 0) {
        double len2 = rx * rx + ry * ry;
        if (len2 == 0) continue;
        double t0 = (qpx * rx + qpy * ry) / len2;
        double t1 = t0 + (sx * rx + sy * ry) / len2;
        if (t0 > t1) std::swap(t0, t1);
        if (std::min(t1, 1.0) - std::max(t0, 0.0) > 0) ++count;
      }
    }
  }
  return count;
}

inline ecorelint::LayoutModel random_layout(Rng& rng, int max_edges = 50) {
  ecorelint::LayoutModel l;
  int edges = 1 + static_cast<int>(rng.below(static_cast<std::uint32_t>(max_edges)));
  for (int e = 0; e < edges; ++e) {
    ecorelint::LayoutEdge le;
    le.path = "/p/e" + std::to_string(e);
    le.kind = rng.chance(0.5) ? ecorelint::EdgeKind::Reference : ecorelint::EdgeKind::Supertype;
    int points = 2 + static_cast<int>(rng.below(3));
    for (int p = 0; p < points; ++p) le.points.push_back({rng.range(0, 100), rng.range(0, 100)});
    l.edges.push_back(std::move(le));
  }
  int nodes = static_cast<int>(rng.below(6));
  for (int n = 0; n < nodes; ++n) {
    l.nodes.push_back({"/p/n" + std::to_string(n),
                       {rng.range(0, 90), rng.range(0, 90), 1 + rng.range(0, 10),
                        1 + rng.range(0, 10)}});
  }
  return l;
}

/// Rendered (path, field, value) triples for the diff set-difference oracle.
struct TripleOracle {
  std::set<std::string> paths;
  std::map<std::string, std::string> triples;  // "path|field" -> value

  explicit TripleOracle(const ecorelint::EcoreModel& m) {
    using namespace ecorelint;
    for (const auto& [path, node] : m.element_index) {
      paths.insert(path);
      auto put = [&, p = path](const std::string& field, const std::string& value) {
        triples[p + "|" + field] = value;
      };
      if (const auto* c = node_cast<ClassNode>(node)) {
        put("abstract", c->abstract_flag ? "true" : "false");
        put("interface", c->interface_flag ? "true" : "false");
        std::string supers;
        for (const TypeRef& t : c->super_types) supers += t.raw + " ";
        put("eSuperTypes", supers);
      } else if (const auto* f = node_cast<FeatureNode>(node)) {
        put("eType", f->e_type.raw);
        put("lowerBound", std::to_string(f->lower_bound));
        put("upperBound", std::to_string(f->upper_bound));
        put("changeable", f->changeable ? "true" : "false");
        put("derived", f->derived ? "true" : "false");
        put("defaultValueLiteral",
            f->default_value_literal ? "=" + *f->default_value_literal : "<unset>");
        if (f->is_reference()) {
          put("containment", f->containment ? "true" : "false");
          put("eOpposite", f->opposite.raw);
        }
      } else if (const auto* l = node_cast<EnumLiteralNode>(node)) {
        put("value", std::to_string(l->value));
        put("literal", l->literal ? "=" + *l->literal : "<unset>");
      } else if (const auto* p = node_cast<PackageNode>(node)) {
        put("nsURI", p->ns_uri);
        put("nsPrefix", p->ns_prefix);
      }
    }
  }
};

}  // namespace testsupport
