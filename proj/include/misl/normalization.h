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

// Resolution of noisy open-data terms: case-type designators in titles,
// judge names against a roster, and release dates.
//
// The lookup table and roster are data files (see data/). Both are
// immutable once loaded and safe to share across threads.

#ifndef MISL_NORMALIZATION_H_
#define MISL_NORMALIZATION_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "misl/corpus_store.h"
#include "misl/date.h"

namespace misl {

enum class CaseType {
  kConstitution,
  kCivilMiscApplication,
  kSuoMoto,
  kHumanRights,
  kCivil,
  kCivilAppeal,
  kCivilReview,
  kCriminal,
  kCriminalAppeal,
  kCriminalMiscApplication,
  kReference,
  kJailPetition,
  kCivilPetitionLeaveToAppeal,
  kUnknown,
};

inline constexpr CaseType kAllCaseTypes[] = {
    CaseType::kConstitution,        CaseType::kCivilMiscApplication,
    CaseType::kSuoMoto,             CaseType::kHumanRights,
    CaseType::kCivil,               CaseType::kCivilAppeal,
    CaseType::kCivilReview,         CaseType::kCriminal,
    CaseType::kCriminalAppeal,      CaseType::kCriminalMiscApplication,
    CaseType::kReference,           CaseType::kJailPetition,
    CaseType::kCivilPetitionLeaveToAppeal, CaseType::kUnknown,
};

// Identifier used in data files, e.g. "SuoMoto".
std::string_view CaseTypeName(CaseType type);
std::optional<CaseType> ParseCaseTypeName(std::string_view name);
// Human-readable label used in reports, e.g. "Suo Moto Case".
std::string_view CaseTypeLabel(CaseType type);

// Lower-cases and splits a designator into space-separated tokens. Periods
// between single letters are abbreviation marks and are dropped ("c.p." ->
// "cp", "C.M.A." -> "cma"); any other period, punctuation or whitespace
// separates tokens ("Const.P." -> "const p"). Letters and digits never share
// a token. Apostrophes are dropped.
std::string NormalizeTypeKey(std::string_view s);

class LookupTable {
 public:
  LookupTable() = default;

  // CSV with header `abbreviation,candidates`; candidates are
  // '|'-separated CaseType names. A later row for the same normalized key
  // replaces the earlier one, so a corpus-specific file can pin the meaning
  // of an ambiguous abbreviation. Throws Error(kInvalidLookup).
  static LookupTable Parse(std::string_view csv);
  static LookupTable Load(const std::filesystem::path &path);
  // The seed table shipped in data/case_types.csv.
  static const LookupTable &Default();

  void Set(std::string_view abbreviation, std::set<CaseType> candidates);
  // `key` must already be normalized.
  const std::set<CaseType> *Find(const std::string &key) const;

  const std::map<std::string, std::set<CaseType>> &entries() const {
    return entries_;
  }
  size_t max_key_tokens() const { return max_key_tokens_; }

 private:
  std::map<std::string, std::set<CaseType>> entries_;
  size_t max_key_tokens_ = 0;
};

struct Ambiguity {
  std::string designator;  // as written in the title
  std::set<CaseType> candidates;

  bool operator==(const Ambiguity &) const = default;
};

struct CaseTypeResolution {
  std::set<CaseType> types;
  std::vector<Ambiguity> ambiguities;
};

// Resolves the type designators in a case title. Ambiguous designators are
// reported, never guessed. The result is {Unknown} only when nothing in the
// title matched the table.
CaseTypeResolution ResolveCaseTypes(std::string_view title, const LookupTable &table);

// --- Judges -------------------------------------------------------------

inline const std::vector<std::string> &DefaultHonorifics() {
  static const std::vector<std::string> kHonorifics = {
      "Chief Justice", "Justice", "Mr.", "Mrs.", "Ms."};
  return kHonorifics;
}

// Strips leading honorifics and any trailing designation after a comma
// (", CJ"), collapses whitespace and case-folds.
std::string NormalizeJudgeName(std::string_view raw,
                               const std::vector<std::string> &honorifics =
                                   DefaultHonorifics());

// True when `line` starts with one of the honorifics (token-wise,
// case-insensitive, trailing periods ignored).
bool StartsWithHonorific(std::string_view line,
                         const std::vector<std::string> &honorifics);

struct Judge {
  std::string id;
  std::string canonical_name;
  std::vector<std::string> aliases;
};

class JudgeRoster {
 public:
  // Every name form of one judge must lie further than this from every name
  // form of every other judge, so that edits within the match threshold can
  // never cross between judges.
  static constexpr int kMinSeparation = 5;

  JudgeRoster() = default;
  // Validates ids, name uniqueness and separation. Throws Error(kInvalidRoster).
  explicit JudgeRoster(std::vector<Judge> judges);

  // CSV with header `id,canonical_name,aliases`, aliases '|'-separated.
  static JudgeRoster Parse(std::string_view csv);
  static JudgeRoster Load(const std::filesystem::path &path);
  // The seed roster shipped in data/judges.csv.
  static const JudgeRoster &Default();

  const std::vector<Judge> &judges() const { return judges_; }
  const Judge *Find(std::string_view id) const;
  size_t size() const { return judges_.size(); }

  // (judge index, normalized name form) in roster order, canonical first.
  const std::vector<std::pair<size_t, std::string>> &name_forms() const {
    return forms_;
  }

 private:
  std::vector<Judge> judges_;
  std::vector<std::pair<size_t, std::string>> forms_;
};

struct JudgeMatch {
  enum class Kind { kMatched, kNew };
  Kind kind = Kind::kNew;
  std::string judge_id;  // empty for kNew
  // Canonical roster name when matched, else the normalized raw name.
  std::string name;

  bool matched() const { return kind == Kind::kMatched; }
  bool operator==(const JudgeMatch &) const = default;
};

struct NameMatchOptions {
  int max_distance = 2;
  std::vector<std::string> honorifics = DefaultHonorifics();
};

// Nearest roster name by edit distance on normalized names; ties go to the
// earlier roster entry.
JudgeMatch CanonicalizeJudge(std::string_view raw, const JudgeRoster &roster,
                             const NameMatchOptions &options = {});

// --- Dates --------------------------------------------------------------

// Day-first formats: DD-MM-YYYY, DD/MM/YYYY, DD.MM.YYYY, "14th August 2014",
// "August 14, 2014", plus ISO YYYY-MM-DD. Month names may be abbreviated.
// Returns nullopt for anything else or a date outside `range`.
std::optional<Date> ParseReleaseDate(std::string_view raw,
                                     const DateRange &range = DateRange{});

using DateOverrides = std::map<DocId, Date>;

// CSV with header `docid,date`. Throws Error(kInvalidOverride) for an
// unparseable date or one outside `range`.
DateOverrides ParseOverrides(std::string_view csv,
                             const DateRange &range = DateRange::UpToToday());
DateOverrides LoadOverrides(const std::filesystem::path &path,
                            const DateRange &range = DateRange::UpToToday());

// The override for `id`, when present, replaces the record's date.
MetadataRecord ApplyOverrides(const DocId &id, const MetadataRecord &record,
                              const DateOverrides &overrides,
                              const DateRange &range = DateRange::UpToToday());

}  // namespace misl

#endif  // MISL_NORMALIZATION_H_
