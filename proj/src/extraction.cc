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

#include "misl/extraction.h"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/default_data.h"
#include "misl/error.h"
#include "misl/text.h"

namespace misl {

using text::IsAsciiAlnum;
using text::IsAsciiAlpha;
using text::IsAsciiDigit;
using text::IsSpace;

GrammarConfig GrammarConfig::FromConfig(const KeyValueConfig &config) {
  GrammarConfig g;
  g.article_keywords = config.GetList("article_keywords", g.article_keywords);
  g.max_article = static_cast<int>(config.GetInt("max_article", g.max_article));
  g.pld_keyword = config.GetOr("pld_keyword", g.pld_keyword);
  g.scmr_keyword = config.GetOr("scmr_keyword", g.scmr_keyword);
  if (config.Has("court_codes")) {
    auto codes = config.GetList("court_codes", {});
    g.court_codes = std::set<std::string>(codes.begin(), codes.end());
  }
  g.presence_marker = config.GetOr("presence_marker", g.presence_marker);
  g.honorifics = config.GetList("honorifics", g.honorifics);
  g.heading_tokens = config.GetList("heading_tokens", g.heading_tokens);
  g.preamble_max_lines =
      static_cast<int>(config.GetInt("preamble_max_lines", g.preamble_max_lines));
  g.suo_moto_designators = config.GetList("suo_moto_designators", g.suo_moto_designators);
  for (auto &d : g.suo_moto_designators) d = text::Lower(d);
  if (g.article_keywords.empty() || g.pld_keyword.empty() || g.scmr_keyword.empty() ||
      g.presence_marker.empty() || g.max_article < 1 || g.preamble_max_lines < 1) {
    throw Error(ErrorCode::kConfig, "grammar: keywords must be non-empty and limits positive");
  }
  return g;
}

GrammarConfig GrammarConfig::Load(const std::filesystem::path &path) {
  return FromConfig(KeyValueConfig::Load(path));
}

const GrammarConfig &GrammarConfig::Default() {
  static const GrammarConfig kGrammar =
      FromConfig(KeyValueConfig::Parse(default_data::kGrammarConf));
  return kGrammar;
}

// --- Domain types -----------------------------------------------------------

namespace {

constexpr JurisdictionKind kJurisdictionOrder[] = {
    JurisdictionKind::kOriginal, JurisdictionKind::kAppellate, JurisdictionKind::kReview,
    JurisdictionKind::kAdvisory, JurisdictionKind::kContempt};

}  // namespace

std::string_view JurisdictionKindName(JurisdictionKind kind) {
  switch (kind) {
    case JurisdictionKind::kOriginal: return "Original";
    case JurisdictionKind::kAppellate: return "Appellate";
    case JurisdictionKind::kReview: return "Review";
    case JurisdictionKind::kAdvisory: return "Advisory";
    case JurisdictionKind::kContempt: return "Contempt";
  }
  return "Unknown";
}

Jurisdiction::Jurisdiction(std::initializer_list<JurisdictionKind> kinds) {
  for (auto k : kinds) Add(k);
}

std::string Jurisdiction::Label() const {
  if (empty()) return "Unknown";
  std::string out;
  for (auto k : kJurisdictionOrder) {
    if (!Contains(k)) continue;
    if (!out.empty()) out.push_back('/');
    out += JurisdictionKindName(k);
  }
  return out;
}

std::optional<Jurisdiction> Jurisdiction::FromLabel(std::string_view label) {
  if (label == "Unknown") return Jurisdiction{};
  Jurisdiction j;
  for (const auto &part : text::Split(label, '/')) {
    bool found = false;
    for (auto k : kJurisdictionOrder) {
      if (JurisdictionKindName(k) == part && !j.Contains(k)) {
        j.Add(k);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  if (j.Label() != label) return std::nullopt;
  return j;
}

std::string ArticleRef::Render() const {
  std::string out = std::to_string(article);
  if (suffix) out.push_back(*suffix);
  if (clause) out += fmt::format("({})", *clause);
  return out;
}

std::string PldCitation::Render() const {
  return fmt::format("PLD {} {} {}", year, court, number);
}

std::string ScmrCitation::Render() const {
  return fmt::format("{} SCMR {}", year, number);
}

// --- Scanning helpers -------------------------------------------------------

namespace {

// Parses a run of digits at `pos` (at most 9). Returns the value and
// advances `pos`; nullopt when there is no digit or the run is too long.
std::optional<int> ReadInt(std::string_view s, size_t *pos) {
  size_t b = *pos, e = b;
  while (e < s.size() && IsAsciiDigit(s[e])) ++e;
  if (e == b || e - b > 9) return std::nullopt;
  int v = 0;
  std::from_chars(s.data() + b, s.data() + e, v);
  *pos = e;
  return v;
}

size_t SkipSpaces(std::string_view s, size_t pos) {
  while (pos < s.size() && IsSpace(s[pos])) ++pos;
  return pos;
}

size_t SkipHorizontal(std::string_view s, size_t pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  return pos;
}

bool BoundaryBefore(std::string_view s, size_t pos) {
  return pos == 0 || !IsAsciiAlnum(s[pos - 1]);
}

bool BoundaryAfter(std::string_view s, size_t pos) {
  return pos >= s.size() || !IsAsciiAlnum(s[pos]);
}

bool ValidYear(int y) { return y >= 1947 && y <= 2100; }

// Matches `word` at `pos`, as a whole token.
bool WordAt(std::string_view s, size_t pos, std::string_view word, bool ignore_case) {
  if (pos + word.size() > s.size()) return false;
  std::string_view here = s.substr(pos, word.size());
  bool eq = ignore_case ? text::EqualsIgnoreCase(here, word) : here == word;
  return eq && BoundaryBefore(s, pos) && BoundaryAfter(s, pos + word.size());
}

// One article reference starting at `pos`. Advances `pos` past it.
std::optional<ArticleRef> ReadArticleRef(std::string_view s, size_t *pos, int max_article) {
  size_t p = *pos;
  auto number = ReadInt(s, &p);
  if (!number || *number < 1 || *number > max_article) return std::nullopt;
  ArticleRef ref;
  ref.article = *number;
  if (p < s.size() && s[p] >= 'A' && s[p] <= 'Z' && BoundaryAfter(s, p + 1)) {
    ref.suffix = s[p];
    ++p;
  }
  if (!BoundaryAfter(s, p)) return std::nullopt;
  size_t q = SkipHorizontal(s, p);
  if (q < s.size() && s[q] == '(') {
    size_t r = q + 1;
    auto clause = ReadInt(s, &r);
    if (clause && *clause >= 1 && r < s.size() && s[r] == ')') {
      ref.clause = *clause;
      p = r + 1;
    }
  }
  *pos = p;
  return ref;
}

// Position of the next reference after a list separator, or npos.
size_t NextRefAfterSeparator(std::string_view s, size_t pos) {
  size_t p = SkipSpaces(s, pos);
  bool separated = false;
  if (p < s.size() && s[p] == ',') {
    separated = true;
    p = SkipSpaces(s, p + 1);
  }
  if (WordAt(s, p, "and", /*ignore_case=*/true)) {
    separated = true;
    p = SkipSpaces(s, p + 3);
  }
  if (!separated || p >= s.size() || !IsAsciiDigit(s[p])) return std::string_view::npos;
  return p;
}

}  // namespace

std::optional<ArticleRef> ArticleRef::Parse(std::string_view rendered) {
  size_t pos = 0;
  auto ref = ReadArticleRef(rendered, &pos, 1 << 30);
  if (!ref || pos != rendered.size()) return std::nullopt;
  return ref;
}

// --- Extractors -------------------------------------------------------------

std::string_view Preamble(std::string_view text, const GrammarConfig &g) {
  size_t pos = 0;
  int lines = 0;
  while (pos < text.size() && lines < g.preamble_max_lines) {
    size_t nl = text.find('\n', pos);
    size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string line = text::CollapseWhitespace(text.substr(pos, end - pos));
    while (!line.empty() && (line.back() == ':' || line.back() == '.')) line.pop_back();
    for (const auto &heading : g.heading_tokens) {
      if (!line.empty() && text::EqualsIgnoreCase(line, heading)) return text.substr(0, pos);
    }
    ++lines;
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
  }
  return text.substr(0, pos);
}

Jurisdiction ExtractJurisdiction(std::string_view text, const GrammarConfig &g) {
  std::string_view pre = Preamble(text, g);
  Jurisdiction out;
  for (auto kind : kJurisdictionOrder) {
    std::string_view name = JurisdictionKindName(kind);
    for (size_t i = 0; i + name.size() <= pre.size(); ++i) {
      if (!WordAt(pre, i, name, /*ignore_case=*/true)) continue;
      size_t p = i + name.size();
      size_t q = SkipSpaces(pre, p);
      if (q > p && WordAt(pre, q, "Jurisdiction", /*ignore_case=*/true)) {
        out.Add(kind);
        break;
      }
    }
  }
  return out;
}

std::vector<std::string> ExtractBench(std::string_view text, const GrammarConfig &g) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  auto add = [&](std::string_view raw) {
    std::string name = text::CollapseWhitespace(raw);
    std::string key = NormalizeJudgeName(name, g.honorifics);
    if (key.empty() || !seen.insert(key).second) return;
    names.push_back(std::move(name));
  };
  bool in_block = false;
  for (std::string_view raw_line : text::Lines(Preamble(text, g))) {
    std::string_view line = text::Trim(raw_line);
    if (!in_block) {
      if (!text::StartsWithIgnoreCase(line, g.presence_marker)) continue;
      std::string_view rest = line.substr(g.presence_marker.size());
      if (!rest.empty() && IsAsciiAlnum(rest.front())) continue;
      in_block = true;
      rest = text::Trim(rest);
      while (!rest.empty() && (rest.front() == ':' || rest.front() == '-')) {
        rest = text::Trim(rest.substr(1));
      }
      if (!rest.empty() && StartsWithHonorific(rest, g.honorifics)) add(rest);
      continue;
    }
    if (line.empty()) continue;
    if (!StartsWithHonorific(line, g.honorifics)) break;
    add(line);
  }
  return names;
}

std::vector<ArticleRef> ExtractArticleRefs(std::string_view text, const GrammarConfig &g) {
  std::vector<std::string> keywords = g.article_keywords;
  std::sort(keywords.begin(), keywords.end(),
            [](const auto &a, const auto &b) { return a.size() > b.size(); });
  std::vector<ArticleRef> out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!IsAsciiAlpha(text[i]) || !BoundaryBefore(text, i)) continue;
    for (const auto &kw : keywords) {
      if (!WordAt(text, i, kw, /*ignore_case=*/true)) continue;
      size_t p = i + kw.size();
      if (p >= text.size() || !IsSpace(text[p])) break;
      p = SkipSpaces(text, p);
      while (true) {
        auto ref = ReadArticleRef(text, &p, g.max_article);
        if (!ref) break;
        out.push_back(*ref);
        size_t next = NextRefAfterSeparator(text, p);
        if (next == std::string_view::npos) break;
        p = next;
      }
      i = p > i ? p - 1 : i;
      break;
    }
  }
  return out;
}

std::vector<PldMatch> ExtractPld(std::string_view text, const GrammarConfig &g) {
  std::vector<PldMatch> out;
  const std::string &kw = g.pld_keyword;
  for (size_t i = text.find(kw); i != std::string_view::npos; i = text.find(kw, i + 1)) {
    if (!WordAt(text, i, kw, /*ignore_case=*/false)) continue;
    size_t p = i + kw.size();
    if (p >= text.size() || !IsSpace(text[p])) continue;
    p = SkipSpaces(text, p);
    size_t year_begin = p;
    auto year = ReadInt(text, &p);
    if (!year || p - year_begin != 4 || !ValidYear(*year)) continue;
    if (p >= text.size() || !IsSpace(text[p])) continue;
    p = SkipSpaces(text, p);
    size_t court_begin = p;
    while (p < text.size() && IsAsciiAlpha(text[p])) ++p;
    size_t court_len = p - court_begin;
    if (court_len < 1 || court_len > 8) continue;
    if (p >= text.size() || !IsSpace(text[p])) continue;
    std::string court(text.substr(court_begin, court_len));
    p = SkipSpaces(text, p);
    auto number = ReadInt(text, &p);
    if (!number || *number < 1 || !BoundaryAfter(text, p)) continue;
    out.push_back(PldMatch{PldCitation{*year, court, *number}, g.court_codes.count(court) > 0});
  }
  return out;
}

std::vector<ScmrCitation> ExtractScmr(std::string_view text, const GrammarConfig &g) {
  std::vector<ScmrCitation> out;
  const std::string &kw = g.scmr_keyword;
  for (size_t i = text.find(kw); i != std::string_view::npos; i = text.find(kw, i + 1)) {
    if (!WordAt(text, i, kw, /*ignore_case=*/false)) continue;
    // The year precedes the keyword, separated by whitespace.
    if (i == 0 || !IsSpace(text[i - 1])) continue;
    size_t year_end = i;
    while (year_end > 0 && IsSpace(text[year_end - 1])) --year_end;
    size_t year_begin = year_end;
    while (year_begin > 0 && IsAsciiDigit(text[year_begin - 1])) --year_begin;
    if (year_end - year_begin != 4 || !BoundaryBefore(text, year_begin)) continue;
    size_t yp = year_begin;
    auto year = ReadInt(text, &yp);
    if (!year || !ValidYear(*year)) continue;
    size_t p = i + kw.size();
    if (p >= text.size() || !IsSpace(text[p])) continue;
    p = SkipSpaces(text, p);
    auto number = ReadInt(text, &p);
    if (!number || *number < 1 || !BoundaryAfter(text, p)) continue;
    out.push_back(ScmrCitation{*year, *number});
  }
  return out;
}

std::optional<PldCitation> ParsePldCitation(std::string_view s, const GrammarConfig &g) {
  s = text::Trim(s);
  auto found = ExtractPld(s, g);
  if (found.size() != 1 || found[0].citation.Render() != text::CollapseWhitespace(s)) {
    return std::nullopt;
  }
  return found[0].citation;
}

std::optional<ScmrCitation> ParseScmrCitation(std::string_view s, const GrammarConfig &g) {
  s = text::Trim(s);
  auto found = ExtractScmr(s, g);
  if (found.size() != 1 || found[0].Render() != text::CollapseWhitespace(s)) {
    return std::nullopt;
  }
  return found[0];
}

bool IsSuoMoto(const std::set<CaseType> &types, std::string_view title,
               const GrammarConfig &g) {
  if (types.count(CaseType::kSuoMoto)) return true;
  std::string lowered = text::Lower(text::CollapseWhitespace(title));
  for (const auto &designator : g.suo_moto_designators) {
    for (size_t pos = lowered.find(designator); pos != std::string::npos;
         pos = lowered.find(designator, pos + 1)) {
      if (BoundaryBefore(lowered, pos)) return true;
    }
  }
  return false;
}

DocFacts AnalyzeDocument(const Document &doc, const AnalysisTables &tables,
                         AnalyzeMode mode) {
  const GrammarConfig &g = *tables.grammar;
  bool has_text = doc.status == DocStatus::kConverted && doc.text.has_value();
  if (!has_text && mode == AnalyzeMode::kStrict) {
    throw Error(ErrorCode::kNotAnalyzable,
                fmt::format("'{}' has no text (status {})", doc.id.value(),
                            StatusName(doc.status)));
  }
  DocFacts facts;
  facts.id = doc.id;
  if (doc.meta.release_date) facts.year = doc.meta.release_date->year;
  CaseTypeResolution resolution = ResolveCaseTypes(doc.meta.title, *tables.lookup);
  facts.types = std::move(resolution.types);
  facts.ambiguities = std::move(resolution.ambiguities);
  facts.suo_moto = IsSuoMoto(facts.types, doc.meta.title, g);
  if (!has_text) return facts;

  const std::string &body = *doc.text;
  facts.text_analyzed = true;
  facts.jurisdiction = ExtractJurisdiction(body, g);
  NameMatchOptions name_options{tables.max_name_distance, g.honorifics};
  std::set<std::string> seen;
  for (const auto &raw : ExtractBench(body, g)) {
    JudgeMatch match = CanonicalizeJudge(raw, *tables.roster, name_options);
    std::string key = match.matched() ? "id:" + match.judge_id : "new:" + match.name;
    if (seen.insert(key).second) facts.bench.push_back(std::move(match));
  }
  for (const auto &ref : ExtractArticleRefs(body, g)) ++facts.articles[ref];
  for (const auto &m : ExtractPld(body, g)) {
    ++facts.pld[m.citation];
    if (!m.known_court) facts.unknown_courts.insert(m.citation.court);
  }
  for (const auto &c : ExtractScmr(body, g)) ++facts.scmr[c];
  return facts;
}

}  // namespace misl

// --- Facts JSON ---------------------------------------------------------------

namespace misl {

namespace {

template <typename K, typename RenderFn>
nlohmann::json CountsToJson(const std::map<K, int> &m, RenderFn render) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto &[k, n] : m) out[render(k)] = n;
  return out;
}

template <typename K, typename ParseFn>
std::map<K, int> CountsFromJson(const nlohmann::json &j, ParseFn parse) {
  std::map<K, int> out;
  for (const auto &[key, n] : j.items()) {
    std::optional<K> k = parse(key);
    if (!k) throw Error(ErrorCode::kInvalidRecord, fmt::format("facts: bad key '{}'", key));
    out[*k] = n.template get<int>();
  }
  return out;
}

}  // namespace

nlohmann::json FactsToJson(const DocFacts &f) {
  nlohmann::json j;
  j["id"] = f.id.value();
  j["year"] = f.year ? nlohmann::json(*f.year) : nlohmann::json(nullptr);
  j["types"] = nlohmann::json::array();
  for (CaseType t : f.types) j["types"].push_back(std::string(CaseTypeName(t)));
  j["ambiguities"] = nlohmann::json::array();
  for (const auto &a : f.ambiguities) {
    nlohmann::json candidates = nlohmann::json::array();
    for (CaseType t : a.candidates) candidates.push_back(std::string(CaseTypeName(t)));
    j["ambiguities"].push_back({{"designator", a.designator}, {"candidates", candidates}});
  }
  j["suo_moto"] = f.suo_moto;
  j["text_analyzed"] = f.text_analyzed;
  j["jurisdiction"] = f.jurisdiction.Label();
  j["bench"] = nlohmann::json::array();
  for (const auto &m : f.bench) {
    j["bench"].push_back({{"matched", m.matched()}, {"judge_id", m.judge_id}, {"name", m.name}});
  }
  j["articles"] = CountsToJson(f.articles, [](const ArticleRef &r) { return r.Render(); });
  j["pld"] = CountsToJson(f.pld, [](const PldCitation &c) { return c.Render(); });
  j["scmr"] = CountsToJson(f.scmr, [](const ScmrCitation &c) { return c.Render(); });
  j["unknown_courts"] = f.unknown_courts;
  return j;
}

DocFacts FactsFromJson(const nlohmann::json &j) {
  auto type_of = [](const nlohmann::json &v) {
    auto t = ParseCaseTypeName(v.get<std::string>());
    if (!t) throw Error(ErrorCode::kInvalidRecord, "facts: unknown case type");
    return *t;
  };
  try {
    DocFacts f;
    f.id = DocId(j.at("id").get<std::string>());
    if (!j.at("year").is_null()) f.year = j.at("year").get<int>();
    for (const auto &t : j.at("types")) f.types.insert(type_of(t));
    for (const auto &a : j.at("ambiguities")) {
      Ambiguity amb;
      amb.designator = a.at("designator").get<std::string>();
      for (const auto &t : a.at("candidates")) amb.candidates.insert(type_of(t));
      f.ambiguities.push_back(std::move(amb));
    }
    f.suo_moto = j.at("suo_moto").get<bool>();
    f.text_analyzed = j.at("text_analyzed").get<bool>();
    auto jurisdiction = Jurisdiction::FromLabel(j.at("jurisdiction").get<std::string>());
    if (!jurisdiction) throw Error(ErrorCode::kInvalidRecord, "facts: bad jurisdiction");
    f.jurisdiction = *jurisdiction;
    for (const auto &b : j.at("bench")) {
      JudgeMatch m;
      m.kind = b.at("matched").get<bool>() ? JudgeMatch::Kind::kMatched : JudgeMatch::Kind::kNew;
      m.judge_id = b.at("judge_id").get<std::string>();
      m.name = b.at("name").get<std::string>();
      f.bench.push_back(std::move(m));
    }
    f.articles = CountsFromJson<ArticleRef>(
        j.at("articles"), [](const std::string &s) { return ArticleRef::Parse(s); });
    f.pld = CountsFromJson<PldCitation>(
        j.at("pld"), [](const std::string &s) { return ParsePldCitation(s); });
    f.scmr = CountsFromJson<ScmrCitation>(
        j.at("scmr"), [](const std::string &s) { return ParseScmrCitation(s); });
    f.unknown_courts = j.at("unknown_courts").get<std::set<std::string>>();
    return f;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidRecord, fmt::format("facts: {}", e.what()));
  }
}

}  // namespace misl
