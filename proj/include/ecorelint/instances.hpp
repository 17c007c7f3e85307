#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ecorelint/diagnostics.hpp"
#include "ecorelint/model.hpp"

namespace ecorelint {

/// One node of a dynamic-instance tree. Unknown features survive parsing
/// with a marker so validation can report them (INS-005).
struct InstanceObject {
  const ClassNode* eclass = nullptr;

  struct AttrValue {
    std::string feature;
    std::vector<std::string> values;
  };
  struct ChildSlot {
    std::string feature;
    std::unique_ptr<InstanceObject> object;
  };
  struct CrossRef {
    std::string feature;
    std::vector<std::string> targets;  // instance paths: "/", "/@books.0", ...
  };
  struct UnknownFeature {
    std::string feature;
    SourceLoc loc;
  };

  std::vector<AttrValue> attribute_values;
  std::vector<ChildSlot> children;
  std::vector<CrossRef> cross_refs;
  std::vector<UnknownFeature> unknown_features;
  SourceLoc loc;
};

/// Reads an instance document against its metamodel. The root element's
/// namespace must be the nsURI of a package in the metamodel and its local
/// name an EClass of that package. Throws ParseError / FormatError.
InstanceObject parse_instance(std::string_view xml_text, const EcoreModel& metamodel);

/// INS-001 abstract class instantiated, INS-002 multiplicity violated,
/// INS-003 literal does not parse as the builtin type, INS-004 value not an
/// enum literal, INS-005 feature unknown on the class, INS-006 dangling
/// cross-reference. Diagnostic paths are instance paths.
std::vector<Diagnostic> validate_instance(const InstanceObject& instance,
                                          const EcoreModel& metamodel);

struct Unsatisfiable {
  std::string reason;
};

/// Smallest instance meeting every lower bound: required attributes get
/// type-default literals, required containment recurses into the first
/// concrete class in declaration order. Unsatisfiable when the root is
/// abstract, a required containment target has no concrete class, the
/// recursion exceeds `max_depth`, or a frozen required feature lacks a
/// default.
std::variant<InstanceObject, Unsatisfiable> synthesize_minimal_instance(
    const EcoreModel& metamodel, const ClassNode& root, int max_depth = 100);

/// Instance XMI writer; parse_instance(serialize_instance(i)) == i.
std::string serialize_instance(const InstanceObject& instance, const EcoreModel& metamodel);

bool instance_equal(const InstanceObject& a, const InstanceObject& b);

}  // namespace ecorelint
