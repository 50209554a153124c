// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

// Strict, minimal XML reader for tests. Parsing fails (throws) on anything
// that is not well-formed: unbalanced or mismatched tags, unquoted or
// duplicate attributes, bare '<' or '&' in text, more than one root element.

#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ridgeline::testing {

struct XmlElement {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<std::unique_ptr<XmlElement>> children;
  std::string text;

  bool has_class(std::string_view cls) const {
    auto it = attrs.find("class");
    if (it == attrs.end()) return false;
    std::istringstream ss(it->second);
    std::string token;
    while (ss >> token)
      if (token == cls) return true;
    return false;
  }

  const std::string& attr(const std::string& key) const {
    auto it = attrs.find(key);
    if (it == attrs.end()) throw std::runtime_error("missing attribute " + key);
    return it->second;
  }

  void visit(const std::function<void(const XmlElement&)>& fn) const {
    fn(*this);
    for (const auto& c : children) c->visit(fn);
  }

  std::vector<const XmlElement*> find_all(std::string_view tag,
                                          std::string_view cls = {}) const {
    std::vector<const XmlElement*> out;
    visit([&](const XmlElement& e) {
      if (e.name == tag && (cls.empty() || e.has_class(cls))) out.push_back(&e);
    });
    return out;
  }
};

class XmlReader {
 public:
  static std::unique_ptr<XmlElement> parse(std::string_view doc) {
    XmlReader r(doc);
    return r.document();
  }

 private:
  explicit XmlReader(std::string_view doc) : s_(doc) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("XML error at offset " + std::to_string(pos_) +
                             ": " + what);
  }

  bool eof() const { return pos_ >= s_.size(); }
  bool starts(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(std::string_view p) {
    if (!starts(p)) fail("expected '" + std::string(p) + "'");
    pos_ += p.size();
  }

  void skip_until(std::string_view end) {
    const auto at = s_.find(end, pos_);
    if (at == std::string_view::npos) fail("unterminated construct");
    pos_ = at + end.size();
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts("<!--")) {
        skip_until("-->");
      } else if (starts("<?")) {
        skip_until("?>");
      } else {
        return;
      }
    }
  }

  static bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
  }
  static bool name_char(char c) {
    return name_start(c) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '-' || c == '.';
  }

  std::string name() {
    if (eof() || !name_start(s_[pos_])) fail("expected a name");
    const std::size_t begin = pos_;
    while (!eof() && name_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(begin, pos_ - begin));
  }

  // Decodes character data up to `stop`, validating entity references.
  std::string chars(char stop) {
    std::string out;
    while (!eof() && s_[pos_] != stop) {
      const char c = s_[pos_];
      if (c == '<') fail("bare '<' in character data");
      if (c == '&') {
        const auto semi = s_.find(';', pos_);
        if (semi == std::string_view::npos) fail("unterminated entity");
        const std::string_view ent = s_.substr(pos_ + 1, semi - pos_ - 1);
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (!ent.empty() && ent[0] == '#') out += '?';
        else fail("unknown entity &" + std::string(ent) + ";");
        pos_ = semi + 1;
        continue;
      }
      out += c;
      ++pos_;
    }
    return out;
  }

  std::unique_ptr<XmlElement> element() {
    expect("<");
    auto e = std::make_unique<XmlElement>();
    e->name = name();
    for (;;) {
      const bool had_ws = !eof() && std::isspace(static_cast<unsigned char>(s_[pos_]));
      skip_ws();
      if (starts("/>")) {
        pos_ += 2;
        return e;
      }
      if (starts(">")) {
        ++pos_;
        break;
      }
      if (!had_ws) fail("attributes must be separated by whitespace");
      std::string key = name();
      skip_ws();
      expect("=");
      skip_ws();
      if (eof() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("unquoted attribute");
      const char quote = s_[pos_++];
      std::string value = chars(quote);
      expect(std::string_view(&quote, 1));
      if (!e->attrs.emplace(key, value).second) fail("duplicate attribute " + key);
    }
    for (;;) {
      if (eof()) fail("unterminated element <" + e->name + ">");
      if (starts("</")) {
        pos_ += 2;
        if (name() != e->name) fail("mismatched end tag for <" + e->name + ">");
        skip_ws();
        expect(">");
        return e;
      }
      if (starts("<!--")) {
        skip_until("-->");
      } else if (starts("<![CDATA[")) {
        const std::size_t begin = pos_ + 9;
        skip_until("]]>");
        e->text += std::string(s_.substr(begin, pos_ - 3 - begin));
      } else if (starts("<")) {
        e->children.push_back(element());
      } else {
        e->text += chars('<');
      }
    }
  }

  std::unique_ptr<XmlElement> document() {
    skip_misc();
    if (eof()) fail("no root element");
    auto root = element();
    skip_misc();
    if (!eof()) fail("content after the root element");
    return root;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace ridgeline::testing
