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

// A forgiving HTML parser for listing pages and a small selector language.
//
// The parser builds an element tree, tolerating unclosed and stray tags the
// way listing pages usually need. Selectors are whitespace-separated
// descendant steps, each of the form
//
//   tag.class#id:nth-child(n)
//
// where every part is optional but at least one must be present.

#ifndef MISL_HTML_H_
#define MISL_HTML_H_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace misl::html {

struct Node {
  // Empty tag for text nodes; `text` holds their decoded content.
  std::string tag;
  std::map<std::string, std::string> attrs;
  std::string text;
  std::vector<std::unique_ptr<Node>> children;
  Node *parent = nullptr;

  bool is_text() const { return tag.empty(); }
  std::optional<std::string> Attr(const std::string &name) const;
  // Concatenated descendant text with whitespace collapsed.
  std::string InnerText() const;
  // 1-based position among element siblings.
  int ElementIndex() const;
};

// Root is a synthetic "#document" element. Input is decoded lossily.
std::unique_ptr<Node> Parse(std::string_view html);

// Decodes character references (&amp;, &#39;, &#x27; and common names).
std::string DecodeEntities(std::string_view s);

class Selector {
 public:
  // Throws Error(kConfig) for malformed selectors.
  explicit Selector(std::string_view spec);

  // Matching descendants of `scope` in document order.
  std::vector<const Node *> SelectAll(const Node &scope) const;
  const Node *SelectFirst(const Node &scope) const;

 private:
  struct Step {
    std::string tag;
    std::vector<std::string> classes;
    std::string id;
    int nth_child = 0;
  };
  static bool Matches(const Step &step, const Node &node);
  bool MatchesChain(const Node &node, size_t step, const Node &scope) const;

  std::vector<Step> steps_;
};

}  // namespace misl::html

#endif  // MISL_HTML_H_
