#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ecorelint/common.hpp"
#include "ecorelint/errors.hpp"

namespace ecorelint {

struct XmlAttr {
  std::string qname;  // as written, e.g. "xsi:type"
  std::string value;  // entity-decoded
  SourceLoc loc;
};

/// Element of the lightweight XML reader used for `.ecore` and instance
/// documents. Non-element content (comments, PIs, CDATA, non-whitespace
/// text) is captured verbatim as fragment children so a writer can put it
/// back untouched.
struct XmlElement {
  std::string qname;
  std::string prefix;  // "" when unprefixed
  std::string local;
  std::string ns_uri;  // resolved; "" when the prefix is unbound
  std::vector<XmlAttr> attrs;

  struct Child {
    enum class Type { Element, Fragment };
    Type type;
    std::unique_ptr<XmlElement> element;  // when Element
    std::string fragment;                 // verbatim source slice
    SourceLoc loc;
  };
  std::vector<Child> children;

  SourceLoc loc;
  std::size_t src_begin = 0;  // offset of '<'
  std::size_t src_end = 0;    // one past the closing '>'

  const XmlAttr* attr(std::string_view qname) const;
};

/// Parses one document; throws ParseError with line/column on malformed
/// input. DOCTYPE is rejected. Whitespace-only text between elements is
/// treated as formatting and dropped.
XmlElement xml_parse(std::string_view text);

std::string xml_escape_attr(std::string_view s);
std::string xml_escape_text(std::string_view s);

}  // namespace ecorelint
