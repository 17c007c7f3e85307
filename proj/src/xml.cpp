#include "ecorelint/xml.hpp"

#include <cctype>
#include <map>

namespace ecorelint {

namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_name_char(char c) {
  return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '-' || c == '.';
}

constexpr int kMaxElementDepth = 512;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  XmlElement parse_document() {
    skip_bom();
    skip_prolog();
    if (eof() || peek() != '<') fail("expected root element");
    XmlElement root = parse_element();
    // Trailing content: whitespace and comments only.
    for (;;) {
      skip_ws();
      if (eof()) break;
      if (starts_with("<!--")) {
        skip_comment();
        continue;
      }
      fail("content after root element");
    }
    return root;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  int depth_ = 0;

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void advance_n(std::size_t n) {
    for (std::size_t i = 0; i < n && !eof(); ++i) advance();
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  void skip_bom() {
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") {
      pos_ = 3;
    }
  }

  SourceLoc here() const { return SourceLoc{line_, col_, pos_}; }

  void skip_comment() {
    advance_n(4);  // <!--
    std::size_t end = text_.find("-->", pos_);
    if (end == std::string_view::npos) fail("unterminated comment");
    while (pos_ < end + 3) advance();
  }

  void skip_pi() {
    advance_n(2);  // <?
    std::size_t end = text_.find("?>", pos_);
    if (end == std::string_view::npos) fail("unterminated processing instruction");
    while (pos_ < end + 2) advance();
  }

  void skip_prolog() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_pi();
      } else if (starts_with("<!--")) {
        skip_comment();
      } else if (starts_with("<!DOCTYPE") || starts_with("<!doctype")) {
        fail("DOCTYPE is not supported");
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    if (eof() || !is_name_start(peek())) fail("expected a name");
    std::size_t start = pos_;
    while (!eof() && is_name_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string decode_entities(std::string_view raw, SourceLoc at) {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      char c = raw[i];
      if (c != '&') {
        out += c;
        continue;
      }
      std::size_t semi = raw.find(';', i + 1);
      if (semi == std::string_view::npos)
        throw ParseError("unterminated entity reference", at.line, at.col);
      std::string_view ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "amp") out += '&';
      else if (ent == "lt") out += '<';
      else if (ent == "gt") out += '>';
      else if (ent == "quot") out += '"';
      else if (ent == "apos") out += '\'';
      else if (!ent.empty() && ent[0] == '#') {
        long code = 0;
        bool ok = ent.size() > 1;
        if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
          for (std::size_t k = 2; k < ent.size(); ++k) {
            char h = ent[k];
            int digit;
            if (h >= '0' && h <= '9') digit = h - '0';
            else if (h >= 'a' && h <= 'f') digit = h - 'a' + 10;
            else if (h >= 'A' && h <= 'F') digit = h - 'A' + 10;
            else { ok = false; break; }
            code = code * 16 + digit;
          }
          if (ent.size() == 2) ok = false;
        } else {
          for (std::size_t k = 1; k < ent.size(); ++k) {
            if (ent[k] < '0' || ent[k] > '9') { ok = false; break; }
            code = code * 10 + (ent[k] - '0');
          }
        }
        if (!ok || code <= 0 || code > 0x10FFFF)
          throw ParseError("invalid character reference", at.line, at.col);
        // UTF-8 encode.
        if (code < 0x80) {
          out += static_cast<char>(code);
        } else if (code < 0x800) {
          out += static_cast<char>(0xC0 | (code >> 6));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else if (code < 0x10000) {
          out += static_cast<char>(0xE0 | (code >> 12));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
          out += static_cast<char>(0xF0 | (code >> 18));
          out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
          out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
          out += static_cast<char>(0x80 | (code & 0x3F));
        }
      } else {
        throw ParseError("unknown entity '&" + std::string(ent) + ";'", at.line, at.col);
      }
      i = semi;
    }
    return out;
  }

  XmlElement parse_element() {
    if (++depth_ > kMaxElementDepth) fail("element nesting is too deep");
    XmlElement elem;
    elem.loc = here();
    elem.src_begin = pos_;
    advance();  // '<'
    elem.qname = parse_name();
    split_qname(elem);

    // Attributes.
    for (;;) {
      bool had_ws = !eof() && std::isspace(static_cast<unsigned char>(peek()));
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>' || starts_with("/>")) break;
      if (!had_ws) fail("expected whitespace before attribute");
      XmlAttr attr;
      attr.loc = here();
      attr.qname = parse_name();
      skip_ws();
      if (eof() || peek() != '=') fail("expected '=' after attribute name");
      advance();
      skip_ws();
      if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
      char quote = advance();
      std::size_t vstart = pos_;
      SourceLoc vloc = here();
      while (!eof() && peek() != quote) {
        if (peek() == '<') fail("'<' in attribute value");
        advance();
      }
      if (eof()) fail("unterminated attribute value");
      attr.value = decode_entities(text_.substr(vstart, pos_ - vstart), vloc);
      advance();  // closing quote
      for (const XmlAttr& prev : elem.attrs) {
        if (prev.qname == attr.qname)
          throw ParseError("duplicate attribute '" + attr.qname + "'", attr.loc.line, attr.loc.col);
      }
      elem.attrs.push_back(std::move(attr));
    }

    if (starts_with("/>")) {
      advance_n(2);
      elem.src_end = pos_;
      --depth_;
      return elem;
    }
    advance();  // '>'

    // Content.
    for (;;) {
      if (eof()) fail("unterminated element '" + elem.qname + "'");
      if (peek() == '<') {
        if (starts_with("</")) {
          advance_n(2);
          std::string close = parse_name();
          if (close != elem.qname)
            fail("mismatched closing tag '" + close + "' for '" + elem.qname + "'");
          skip_ws();
          if (eof() || peek() != '>') fail("malformed closing tag");
          advance();
          elem.src_end = pos_;
          --depth_;
          return elem;
        }
        if (starts_with("<!--")) {
          XmlElement::Child child;
          child.type = XmlElement::Child::Type::Fragment;
          child.loc = here();
          std::size_t begin = pos_;
          skip_comment();
          child.fragment = std::string(text_.substr(begin, pos_ - begin));
          elem.children.push_back(std::move(child));
          continue;
        }
        if (starts_with("<![CDATA[")) {
          XmlElement::Child child;
          child.type = XmlElement::Child::Type::Fragment;
          child.loc = here();
          std::size_t begin = pos_;
          std::size_t end = text_.find("]]>", pos_);
          if (end == std::string_view::npos) fail("unterminated CDATA section");
          while (pos_ < end + 3) advance();
          child.fragment = std::string(text_.substr(begin, pos_ - begin));
          elem.children.push_back(std::move(child));
          continue;
        }
        if (starts_with("<?")) {
          XmlElement::Child child;
          child.type = XmlElement::Child::Type::Fragment;
          child.loc = here();
          std::size_t begin = pos_;
          skip_pi();
          child.fragment = std::string(text_.substr(begin, pos_ - begin));
          elem.children.push_back(std::move(child));
          continue;
        }
        if (starts_with("<!")) fail("unsupported markup declaration");
        XmlElement::Child child;
        child.type = XmlElement::Child::Type::Element;
        child.loc = here();
        child.element = std::make_unique<XmlElement>(parse_element());
        elem.children.push_back(std::move(child));
        continue;
      }
      // Text run up to the next '<'.
      std::size_t begin = pos_;
      SourceLoc tloc = here();
      while (!eof() && peek() != '<') advance();
      std::string_view run = text_.substr(begin, pos_ - begin);
      // Validate entity syntax even in runs we drop.
      decode_entities(run, tloc);
      std::size_t first = run.find_first_not_of(" \t\r\n");
      if (first != std::string_view::npos) {
        std::size_t last = run.find_last_not_of(" \t\r\n");
        XmlElement::Child child;
        child.type = XmlElement::Child::Type::Fragment;
        child.loc = tloc;
        child.fragment = std::string(run.substr(first, last - first + 1));
        elem.children.push_back(std::move(child));
      }
    }
  }

  static void split_qname(XmlElement& elem) {
    std::size_t colon = elem.qname.find(':');
    if (colon == std::string::npos) {
      elem.local = elem.qname;
    } else {
      elem.prefix = elem.qname.substr(0, colon);
      elem.local = elem.qname.substr(colon + 1);
    }
  }
};

void resolve_namespaces(XmlElement& elem, std::map<std::string, std::string> scope) {
  for (const XmlAttr& attr : elem.attrs) {
    if (attr.qname == "xmlns") {
      scope[""] = attr.value;
    } else if (attr.qname.rfind("xmlns:", 0) == 0) {
      scope[attr.qname.substr(6)] = attr.value;
    }
  }
  auto it = scope.find(elem.prefix);
  elem.ns_uri = it == scope.end() ? std::string() : it->second;
  for (auto& child : elem.children) {
    if (child.type == XmlElement::Child::Type::Element) {
      resolve_namespaces(*child.element, scope);
    }
  }
}

}  // namespace

const XmlAttr* XmlElement::attr(std::string_view name) const {
  for (const XmlAttr& a : attrs) {
    if (a.qname == name) return &a;
  }
  return nullptr;
}

XmlElement xml_parse(std::string_view text) {
  Parser parser(text);
  XmlElement root = parser.parse_document();
  resolve_namespaces(root, {});
  return root;
}

std::string xml_escape_attr(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#xA;"; break;
      case '\t': out += "&#x9;"; break;
      case '\r': out += "&#xD;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string xml_escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace ecorelint
