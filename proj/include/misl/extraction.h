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

// Extraction of legal facts from converted judgment text.
//
// Every extractor is a pure function of its input and an immutable
// GrammarConfig. The grammars are hand-written scanners:
//
//   articles:  ("Article" | "Articles") ref (sep ref)*
//              ref = int [A-Z]? ([ \t]* "(" int ")")?
//              sep = "," | "and" | ", and"
//   PLD:       "PLD" year court number     e.g. PLD 1955 FC 240
//   SCMR:      year "SCMR" number          e.g. 1991 SCMR 1041
//
// Keywords are whole tokens and fields may be separated by any run of
// whitespace. Bench and jurisdiction are read from the preamble only: the
// text before the first heading line ("JUDGMENT", "ORDER", ...) or the
// first `preamble_max_lines` lines, whichever is shorter.

#ifndef MISL_EXTRACTION_H_
#define MISL_EXTRACTION_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "misl/config.h"
#include "misl/corpus_store.h"
#include "misl/normalization.h"

namespace misl {

struct GrammarConfig {
  std::vector<std::string> article_keywords = {"Article", "Articles"};
  int max_article = 280;
  std::string pld_keyword = "PLD";
  std::string scmr_keyword = "SCMR";
  std::set<std::string> court_codes = {"SC", "FC", "Lah", "Kar", "Pesh", "Quetta", "AJK"};
  std::string presence_marker = "PRESENT";
  std::vector<std::string> honorifics = DefaultHonorifics();
  std::vector<std::string> heading_tokens = {"JUDGMENT", "JUDGEMENT", "ORDER", "O R D E R"};
  int preamble_max_lines = 120;
  std::vector<std::string> suo_moto_designators = {"suo moto", "suo motu", "s.m.c"};

  // Unset keys keep their defaults.
  static GrammarConfig FromConfig(const KeyValueConfig &config);
  static GrammarConfig Load(const std::filesystem::path &path);
  // data/grammar.conf as compiled into the library.
  static const GrammarConfig &Default();
};

// --- Domain types -------------------------------------------------------

enum class JurisdictionKind : uint8_t { kOriginal, kAppellate, kReview, kAdvisory, kContempt };

std::string_view JurisdictionKindName(JurisdictionKind kind);

// A set of jurisdiction kinds. The label joins members with "/" in the order
// Original, Appellate, Review, Advisory, Contempt; the empty set is "Unknown".
class Jurisdiction {
 public:
  Jurisdiction() = default;
  Jurisdiction(std::initializer_list<JurisdictionKind> kinds);

  void Add(JurisdictionKind kind) { bits_ |= Bit(kind); }
  bool Contains(JurisdictionKind kind) const { return (bits_ & Bit(kind)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::string Label() const;
  // Inverse of Label(); nullopt for anything Label() cannot produce.
  static std::optional<Jurisdiction> FromLabel(std::string_view label);

  auto operator<=>(const Jurisdiction &) const = default;

 private:
  static uint8_t Bit(JurisdictionKind k) {
    return static_cast<uint8_t>(1u << static_cast<unsigned>(k));
  }
  uint8_t bits_ = 0;
};

struct ArticleRef {
  int article = 1;                  // 1..max_article
  std::optional<char> suffix;       // uppercase letter, as in 2A
  std::optional<int> clause;        // as in 184(3)

  // "184(3)", "2A", "9".
  std::string Render() const;
  static std::optional<ArticleRef> Parse(std::string_view rendered);

  auto operator<=>(const ArticleRef &) const = default;
};

struct PldCitation {
  int year = 0;
  std::string court;
  int number = 0;

  // "PLD 1955 FC 240".
  std::string Render() const;
  auto operator<=>(const PldCitation &) const = default;
};

struct ScmrCitation {
  int year = 0;
  int number = 0;

  // "1991 SCMR 1041".
  std::string Render() const;
  auto operator<=>(const ScmrCitation &) const = default;
};

struct PldMatch {
  PldCitation citation;
  bool known_court = true;  // court code is in the configured whitelist

  bool operator==(const PldMatch &) const = default;
};

// Parses one rendered citation exactly (the whole string must match).
std::optional<PldCitation> ParsePldCitation(std::string_view s,
                                            const GrammarConfig &g = GrammarConfig::Default());
std::optional<ScmrCitation> ParseScmrCitation(std::string_view s,
                                              const GrammarConfig &g = GrammarConfig::Default());

// Everything known about one document. Count maps hold occurrences; their
// key sets are the document-level presence sets.
struct DocFacts {
  DocId id;
  std::optional<int> year;
  std::set<CaseType> types;
  std::vector<Ambiguity> ambiguities;
  bool suo_moto = false;
  // False for metadata-only analysis; the fields below are then empty.
  bool text_analyzed = false;
  Jurisdiction jurisdiction;
  std::vector<JudgeMatch> bench;
  std::map<ArticleRef, int> articles;
  std::map<PldCitation, int> pld;
  std::map<ScmrCitation, int> scmr;
  std::set<std::string> unknown_courts;

  bool operator==(const DocFacts &) const = default;
};

// One object per document, as stored in facts.jsonl. FactsFromJson throws
// Error(kInvalidRecord) for malformed input.
nlohmann::json FactsToJson(const DocFacts &facts);
DocFacts FactsFromJson(const nlohmann::json &j);

// --- Extractors ---------------------------------------------------------

std::string_view Preamble(std::string_view text, const GrammarConfig &g = GrammarConfig::Default());

Jurisdiction ExtractJurisdiction(std::string_view text,
                                 const GrammarConfig &g = GrammarConfig::Default());

// Raw judge lines of the PRESENT block, first occurrence order, without
// duplicates (compared after name normalization). Empty when there is no
// block.
std::vector<std::string> ExtractBench(std::string_view text,
                                      const GrammarConfig &g = GrammarConfig::Default());

std::vector<ArticleRef> ExtractArticleRefs(std::string_view text,
                                           const GrammarConfig &g = GrammarConfig::Default());
std::vector<PldMatch> ExtractPld(std::string_view text,
                                 const GrammarConfig &g = GrammarConfig::Default());
std::vector<ScmrCitation> ExtractScmr(std::string_view text,
                                      const GrammarConfig &g = GrammarConfig::Default());

// Title-based: true when SuoMoto is among the resolved types or the title
// carries a Suo Moto designator.
bool IsSuoMoto(const std::set<CaseType> &types, std::string_view title,
               const GrammarConfig &g = GrammarConfig::Default());

struct AnalysisTables {
  const LookupTable *lookup = &LookupTable::Default();
  const JudgeRoster *roster = &JudgeRoster::Default();
  const GrammarConfig *grammar = &GrammarConfig::Default();
  int max_name_distance = 2;
};

enum class AnalyzeMode {
  kStrict,            // text required
  kAllowMetadataOnly  // unconverted documents yield metadata-only facts
};

// Throws Error(kNotAnalyzable) for a document without text in strict mode.
DocFacts AnalyzeDocument(const Document &doc, const AnalysisTables &tables = {},
                         AnalyzeMode mode = AnalyzeMode::kStrict);

}  // namespace misl

#endif  // MISL_EXTRACTION_H_
