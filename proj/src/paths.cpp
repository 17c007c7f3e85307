#include "ecorelint/paths.hpp"

#include <stdexcept>

namespace ecorelint {

std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Package: return "EPackage";
    case NodeKind::Class: return "EClass";
    case NodeKind::DataType: return "EDataType";
    case NodeKind::Enum: return "EEnum";
    case NodeKind::EnumLiteral: return "EEnumLiteral";
    case NodeKind::Attribute: return "EAttribute";
    case NodeKind::Reference: return "EReference";
    case NodeKind::Operation: return "EOperation";
    case NodeKind::Parameter: return "EParameter";
    case NodeKind::Annotation: return "EAnnotation";
    case NodeKind::Detail: return "detail";
    case NodeKind::Opaque: return "opaque";
    case NodeKind::Unknown: return "unknown";
  }
  return "unknown";
}

bool is_named_kind(NodeKind k) {
  switch (k) {
    case NodeKind::Package:
    case NodeKind::Class:
    case NodeKind::DataType:
    case NodeKind::Enum:
    case NodeKind::EnumLiteral:
    case NodeKind::Attribute:
    case NodeKind::Reference:
    case NodeKind::Operation:
    case NodeKind::Parameter:
      return true;
    default:
      return false;
  }
}

bool is_classifier_kind(NodeKind k) {
  return k == NodeKind::Class || k == NodeKind::DataType || k == NodeKind::Enum;
}

std::string ElementPath::render() const {
  std::string out;
  for (const PathSegment& seg : segments) {
    out += '/';
    out += seg.name;
    if (seg.ordinal > 1) {
      out += '[';
      out += std::to_string(seg.ordinal);
      out += ']';
    }
  }
  if (out.empty()) out = "/";
  return out;
}

ElementPath ElementPath::parse(std::string_view text) {
  ElementPath path;
  if (text.empty() || text[0] != '/') return path;
  std::size_t pos = 1;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    std::string_view part = text.substr(pos, next == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : next - pos);
    if (!part.empty()) {
      PathSegment seg;
      if (part.back() == ']') {
        std::size_t open = part.rfind('[');
        if (open != std::string_view::npos) {
          std::string_view digits = part.substr(open + 1, part.size() - open - 2);
          int ord = 0;
          bool numeric = !digits.empty();
          for (char c : digits) {
            if (c < '0' || c > '9') { numeric = false; break; }
            ord = ord * 10 + (c - '0');
          }
          if (numeric && ord >= 2) {
            seg.ordinal = ord;
            part = part.substr(0, open);
          }
        }
      }
      seg.name = std::string(part);
      path.segments.push_back(std::move(seg));
    }
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return path;
}

}  // namespace ecorelint
