// Copyright 2026 The misl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "misl/html.h"

#include <algorithm>
#include <charconv>
#include <set>

#include <fmt/format.h>

#include "misl/error.h"
#include "misl/text.h"

namespace misl::html {

namespace {

const std::set<std::string> &VoidElements() {
  static const std::set<std::string> kVoid = {"area", "base", "br",    "col",  "embed",
                                              "hr",   "img",  "input", "link", "meta",
                                              "source", "track", "wbr"};
  return kVoid;
}

bool IsRawText(const std::string &tag) { return tag == "script" || tag == "style"; }

void AppendText(Node *parent, std::string_view raw) {
  if (raw.empty()) return;
  auto node = std::make_unique<Node>();
  node->text = DecodeEntities(raw);
  node->parent = parent;
  parent->children.push_back(std::move(node));
}

// Parses attributes from the inside of a start tag, after the tag name.
void ParseAttributes(std::string_view s, std::map<std::string, std::string> *attrs) {
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (text::IsSpace(s[i]) || s[i] == '/')) ++i;
    size_t name_begin = i;
    while (i < s.size() && !text::IsSpace(s[i]) && s[i] != '=' && s[i] != '/') ++i;
    if (i == name_begin) break;
    std::string name = text::Lower(s.substr(name_begin, i - name_begin));
    while (i < s.size() && text::IsSpace(s[i])) ++i;
    std::string value;
    if (i < s.size() && s[i] == '=') {
      ++i;
      while (i < s.size() && text::IsSpace(s[i])) ++i;
      if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
        char quote = s[i++];
        size_t end = s.find(quote, i);
        if (end == std::string_view::npos) end = s.size();
        value = DecodeEntities(s.substr(i, end - i));
        i = end + 1;
      } else {
        size_t begin = i;
        while (i < s.size() && !text::IsSpace(s[i])) ++i;
        value = DecodeEntities(s.substr(begin, i - begin));
      }
    }
    attrs->emplace(std::move(name), std::move(value));
  }
}

class TreeBuilder {
 public:
  TreeBuilder() : root_(std::make_unique<Node>()) {
    root_->tag = "#document";
    current_ = root_.get();
  }

  void Open(std::string tag, std::map<std::string, std::string> attrs, bool self_closing) {
    ImplicitClose(tag);
    auto node = std::make_unique<Node>();
    node->tag = std::move(tag);
    node->attrs = std::move(attrs);
    node->parent = current_;
    Node *raw = node.get();
    current_->children.push_back(std::move(node));
    if (!self_closing && !VoidElements().count(raw->tag)) current_ = raw;
  }

  void Close(const std::string &tag) {
    for (Node *n = current_; n != root_.get(); n = n->parent) {
      if (n->tag == tag) {
        current_ = n->parent;
        return;
      }
    }
    // Stray end tag: ignored.
  }

  Node *current() { return current_; }
  std::unique_ptr<Node> Finish() { return std::move(root_); }

 private:
  // Closes an open element the new tag cannot nest in, without crossing
  // the given boundary tags.
  void CloseOpen(const std::set<std::string> &targets, const std::set<std::string> &bounds) {
    for (Node *n = current_; n != root_.get(); n = n->parent) {
      if (bounds.count(n->tag)) return;
      if (targets.count(n->tag)) {
        current_ = n->parent;
        return;
      }
    }
  }

  void ImplicitClose(const std::string &tag) {
    if (tag == "td" || tag == "th") {
      CloseOpen({"td", "th"}, {"tr", "table"});
    } else if (tag == "tr") {
      CloseOpen({"tr"}, {"table", "tbody", "thead", "tfoot"});
    } else if (tag == "li") {
      CloseOpen({"li"}, {"ul", "ol"});
    } else if (tag == "p") {
      CloseOpen({"p"}, {"div", "td", "th", "li", "body"});
    }
  }

  std::unique_ptr<Node> root_;
  Node *current_;
};

}  // namespace

std::optional<std::string> Node::Attr(const std::string &name) const {
  auto it = attrs.find(name);
  if (it == attrs.end()) return std::nullopt;
  return it->second;
}

std::string Node::InnerText() const {
  std::string raw;
  std::vector<const Node *> stack = {this};
  while (!stack.empty()) {
    const Node *n = stack.back();
    stack.pop_back();
    if (n->is_text()) {
      raw += n->text;
      continue;
    }
    if (IsRawText(n->tag)) continue;
    if (n->tag == "br") raw.push_back(' ');
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) {
      stack.push_back(it->get());
    }
  }
  return text::CollapseWhitespace(raw);
}

int Node::ElementIndex() const {
  if (!parent) return 1;
  int index = 0;
  for (const auto &sibling : parent->children) {
    if (sibling->is_text()) continue;
    ++index;
    if (sibling.get() == this) return index;
  }
  return index;
}

std::string DecodeEntities(std::string_view s) {
  static const std::map<std::string, char32_t, std::less<>> kNamed = {
      {"amp", '&'},       {"lt", '<'},        {"gt", '>'},        {"quot", '"'},
      {"apos", '\''},     {"nbsp", 0xA0},     {"ndash", 0x2013},  {"mdash", 0x2014},
      {"lsquo", 0x2018},  {"rsquo", 0x2019},  {"ldquo", 0x201C},  {"rdquo", 0x201D},
      {"hellip", 0x2026}, {"copy", 0xA9},
  };
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back('&');
      continue;
    }
    std::string_view ref = s.substr(i + 1, semi - i - 1);
    std::optional<char32_t> cp;
    if (ref.size() > 1 && ref[0] == '#') {
      bool hex = ref[1] == 'x' || ref[1] == 'X';
      std::string_view digits = ref.substr(hex ? 2 : 1);
      uint32_t v = 0;
      auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v,
                                     hex ? 16 : 10);
      if (ec == std::errc() && p == digits.data() + digits.size() && !digits.empty()) {
        cp = (v == 0 || v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) ? 0xFFFD : v;
      }
    } else if (auto it = kNamed.find(ref); it != kNamed.end()) {
      cp = it->second;
    }
    if (!cp) {
      out.push_back('&');
      continue;
    }
    text::AppendUtf8(*cp, &out);
    i = semi;
  }
  return out;
}

std::unique_ptr<Node> Parse(std::string_view input) {
  std::string html = text::SanitizeUtf8(input);
  std::string_view s = html;
  TreeBuilder builder;
  size_t text_begin = 0;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '<') {
      ++i;
      continue;
    }
    if (s.substr(i, 4) == "<!--") {
      AppendText(builder.current(), s.substr(text_begin, i - text_begin));
      size_t end = s.find("-->", i + 4);
      i = end == std::string_view::npos ? s.size() : end + 3;
      text_begin = i;
      continue;
    }
    if (i + 1 < s.size() && (s[i + 1] == '!' || s[i + 1] == '?')) {
      AppendText(builder.current(), s.substr(text_begin, i - text_begin));
      size_t end = s.find('>', i);
      i = end == std::string_view::npos ? s.size() : end + 1;
      text_begin = i;
      continue;
    }
    bool closing = i + 1 < s.size() && s[i + 1] == '/';
    size_t name_begin = i + (closing ? 2 : 1);
    size_t name_end = name_begin;
    while (name_end < s.size() && (text::IsAsciiAlnum(s[name_end]) || s[name_end] == '-')) {
      ++name_end;
    }
    if (name_end == name_begin || !text::IsAsciiAlpha(s[name_begin])) {
      ++i;  // a literal '<'
      continue;
    }
    size_t tag_end = s.find('>', name_end);
    if (tag_end == std::string_view::npos) break;
    AppendText(builder.current(), s.substr(text_begin, i - text_begin));
    std::string tag = text::Lower(s.substr(name_begin, name_end - name_begin));
    if (closing) {
      builder.Close(tag);
      i = tag_end + 1;
      text_begin = i;
      continue;
    }
    std::string_view inside = s.substr(name_end, tag_end - name_end);
    bool self_closing = !inside.empty() && inside.back() == '/';
    std::map<std::string, std::string> attrs;
    ParseAttributes(inside, &attrs);
    builder.Open(tag, std::move(attrs), self_closing);
    i = tag_end + 1;
    text_begin = i;
    if (IsRawText(tag) && !self_closing) {
      std::string close = "</" + tag;
      size_t end = i;
      while (true) {
        end = s.find("</", end);
        if (end == std::string_view::npos ||
            text::EqualsIgnoreCase(s.substr(end, close.size()), close)) {
          break;
        }
        end += 2;
      }
      if (end == std::string_view::npos) end = s.size();
      // Raw text is kept undecoded; InnerText skips it.
      auto node = std::make_unique<Node>();
      node->text = std::string(s.substr(i, end - i));
      node->parent = builder.current();
      builder.current()->children.push_back(std::move(node));
      builder.Close(tag);
      size_t gt = s.find('>', end);
      i = gt == std::string_view::npos ? s.size() : gt + 1;
      text_begin = i;
    }
  }
  AppendText(builder.current(), s.substr(text_begin, std::min(i, s.size()) - text_begin));
  return builder.Finish();
}

// --- Selectors ----------------------------------------------------------------

Selector::Selector(std::string_view spec) {
  auto bad = [&](std::string_view why) {
    return Error(ErrorCode::kConfig, fmt::format("selector '{}': {}", spec, why));
  };
  for (const auto &part : text::Split(text::CollapseWhitespace(spec), ' ')) {
    if (part.empty()) continue;
    Step step;
    std::string_view p = part;
    size_t nth = p.find(":nth-child(");
    if (nth != std::string_view::npos) {
      std::string_view arg = p.substr(nth + 11);
      if (arg.empty() || arg.back() != ')') throw bad("unterminated :nth-child");
      arg.remove_suffix(1);
      auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), step.nth_child);
      if (ec != std::errc() || ptr != arg.data() + arg.size() || step.nth_child < 1) {
        throw bad("bad :nth-child argument");
      }
      p = p.substr(0, nth);
    }
    size_t i = 0;
    auto read_name = [&] {
      size_t b = i;
      while (i < p.size() && (text::IsAsciiAlnum(p[i]) || p[i] == '-' || p[i] == '_')) ++i;
      return std::string(p.substr(b, i - b));
    };
    step.tag = text::Lower(read_name());
    while (i < p.size()) {
      char kind = p[i++];
      std::string name = read_name();
      if (name.empty()) throw bad("empty class or id");
      if (kind == '.') {
        step.classes.push_back(name);
      } else if (kind == '#') {
        step.id = name;
      } else {
        throw bad(fmt::format("unexpected '{}'", kind));
      }
    }
    if (step.tag.empty() && step.classes.empty() && step.id.empty() && step.nth_child == 0) {
      throw bad("empty step");
    }
    if (step.tag == "*") step.tag.clear();
    steps_.push_back(std::move(step));
  }
  if (steps_.empty()) throw bad("empty selector");
}

bool Selector::Matches(const Step &step, const Node &node) {
  if (node.is_text()) return false;
  if (!step.tag.empty() && node.tag != step.tag) return false;
  if (!step.id.empty() && node.Attr("id").value_or("") != step.id) return false;
  if (!step.classes.empty()) {
    auto classes = text::Split(text::CollapseWhitespace(node.Attr("class").value_or("")), ' ');
    for (const auto &want : step.classes) {
      if (std::find(classes.begin(), classes.end(), want) == classes.end()) return false;
    }
  }
  if (step.nth_child > 0 && node.ElementIndex() != step.nth_child) return false;
  return true;
}

// True when `node` matches steps_[0..step] as a descendant chain inside
// `scope`, with steps_[step] matching `node` itself.
bool Selector::MatchesChain(const Node &node, size_t step, const Node &scope) const {
  if (!Matches(steps_[step], node)) return false;
  if (step == 0) return true;
  for (const Node *a = node.parent; a && a != &scope; a = a->parent) {
    if (MatchesChain(*a, step - 1, scope)) return true;
  }
  return false;
}

std::vector<const Node *> Selector::SelectAll(const Node &scope) const {
  std::vector<const Node *> out;
  std::vector<const Node *> stack;
  for (auto it = scope.children.rbegin(); it != scope.children.rend(); ++it) {
    stack.push_back(it->get());
  }
  while (!stack.empty()) {
    const Node *n = stack.back();
    stack.pop_back();
    if (MatchesChain(*n, steps_.size() - 1, scope)) out.push_back(n);
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) {
      stack.push_back(it->get());
    }
  }
  return out;
}

const Node *Selector::SelectFirst(const Node &scope) const {
  auto all = SelectAll(scope);
  return all.empty() ? nullptr : all.front();
}

}  // namespace misl::html
