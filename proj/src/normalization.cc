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

#include "misl/normalization.h"

#include <algorithm>
#include <charconv>
#include <limits>

#include <fmt/format.h>

#include "misl/config.h"
#include "misl/csv.h"
#include "misl/default_data.h"
#include "misl/error.h"
#include "misl/text.h"

namespace misl {

namespace {

struct CaseTypeInfo {
  CaseType type;
  std::string_view name;
  std::string_view label;
};

constexpr CaseTypeInfo kCaseTypeInfo[] = {
    {CaseType::kConstitution, "Constitution", "Constitution"},
    {CaseType::kCivilMiscApplication, "CivilMiscApplication",
     "Civil Miscellaneous Application"},
    {CaseType::kSuoMoto, "SuoMoto", "Suo Moto Case"},
    {CaseType::kHumanRights, "HumanRights", "Human Rights Case"},
    {CaseType::kCivil, "Civil", "Civil"},
    {CaseType::kCivilAppeal, "CivilAppeal", "Civil Appeal"},
    {CaseType::kCivilReview, "CivilReview", "Civil Review"},
    {CaseType::kCriminal, "Criminal", "Criminal"},
    {CaseType::kCriminalAppeal, "CriminalAppeal", "Criminal Appeal"},
    {CaseType::kCriminalMiscApplication, "CriminalMiscApplication",
     "Criminal Miscellaneous Application"},
    {CaseType::kReference, "Reference", "Reference"},
    {CaseType::kJailPetition, "JailPetition", "Jail Petition"},
    {CaseType::kCivilPetitionLeaveToAppeal, "CivilPetitionLeaveToAppeal",
     "Civil Petition for Leave to Appeal"},
    {CaseType::kUnknown, "Unknown", "Unknown"},
};

const CaseTypeInfo &Info(CaseType type) {
  return kCaseTypeInfo[static_cast<size_t>(type)];
}

// A designator token with its byte span in the source string. The span
// includes a trailing period so reported designators read as written.
struct TypeToken {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
  bool numeric = false;
};

size_t LetterRun(std::string_view s, size_t pos) {
  size_t n = 0;
  while (pos + n < s.size() && text::IsAsciiAlpha(s[pos + n])) ++n;
  return n;
}

std::vector<TypeToken> TokenizeDesignators(std::string_view s) {
  std::vector<TypeToken> tokens;
  TypeToken cur;
  bool active = false;
  size_t run = 0;  // letters since the token start or the last dropped period
  auto flush = [&](size_t end) {
    if (active) {
      cur.end = end;
      tokens.push_back(std::move(cur));
    }
    cur = TypeToken{};
    active = false;
    run = 0;
  };
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (text::IsAsciiAlpha(c)) {
      if (active && cur.numeric) flush(i);
      if (!active) {
        cur.begin = i;
        active = true;
      }
      cur.text.push_back(text::ToLower(c));
      ++run;
      cur.end = i + 1;
    } else if (text::IsAsciiDigit(c)) {
      if (active && !cur.numeric) flush(i);
      if (!active) {
        cur.begin = i;
        cur.numeric = true;
        active = true;
      }
      cur.text.push_back(c);
      cur.end = i + 1;
    } else if (c == '\'' && active && !cur.numeric && i + 1 < s.size() &&
               text::IsAsciiAlpha(s[i + 1])) {
      // Dropped: "Hon'ble" -> "honble".
    } else if (c == '.' && active && !cur.numeric) {
      if (run == 1 && LetterRun(s, i + 1) == 1) {
        run = 0;  // abbreviation mark between single letters
      } else {
        flush(i + 1);
      }
    } else {
      flush(active ? cur.end : i);
    }
  }
  flush(active ? cur.end : s.size());
  return tokens;
}

std::string JoinTokens(const std::vector<TypeToken> &tokens, size_t from, size_t to) {
  std::string out;
  for (size_t i = from; i < to; ++i) {
    if (i > from) out.push_back(' ');
    out += tokens[i].text;
  }
  return out;
}

}  // namespace

std::string_view CaseTypeName(CaseType type) { return Info(type).name; }
std::string_view CaseTypeLabel(CaseType type) { return Info(type).label; }

std::optional<CaseType> ParseCaseTypeName(std::string_view name) {
  for (const auto &info : kCaseTypeInfo) {
    if (info.name == name) return info.type;
  }
  return std::nullopt;
}

std::string NormalizeTypeKey(std::string_view s) {
  auto tokens = TokenizeDesignators(s);
  return JoinTokens(tokens, 0, tokens.size());
}

// --- LookupTable ----------------------------------------------------------

void LookupTable::Set(std::string_view abbreviation, std::set<CaseType> candidates) {
  std::string key = NormalizeTypeKey(abbreviation);
  if (key.empty()) {
    throw Error(ErrorCode::kInvalidLookup,
                fmt::format("abbreviation '{}' normalizes to nothing", abbreviation));
  }
  if (std::any_of(key.begin(), key.end(), text::IsAsciiDigit)) {
    throw Error(ErrorCode::kInvalidLookup,
                fmt::format("abbreviation '{}' contains digits", abbreviation));
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidLookup,
                fmt::format("abbreviation '{}' has no candidates", abbreviation));
  }
  if (candidates.count(CaseType::kUnknown)) {
    throw Error(ErrorCode::kInvalidLookup,
                fmt::format("abbreviation '{}' maps to Unknown", abbreviation));
  }
  size_t ntokens = static_cast<size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
  max_key_tokens_ = std::max(max_key_tokens_, ntokens);
  entries_[key] = std::move(candidates);
}

const std::set<CaseType> *LookupTable::Find(const std::string &key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

LookupTable LookupTable::Parse(std::string_view data) {
  csv::Table t;
  try {
    t = csv::Read(data, {"abbreviation", "candidates"});
  } catch (const Error &e) {
    throw Error(ErrorCode::kInvalidLookup, e.what(), e.line());
  }
  LookupTable table;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    int line = static_cast<int>(r + 2);
    std::set<CaseType> candidates;
    for (const auto &name : text::SplitTrimmed(t.rows[r][1], '|')) {
      auto type = ParseCaseTypeName(name);
      if (!type) {
        throw Error(ErrorCode::kInvalidLookup,
                    fmt::format("unknown case type '{}'", name), line);
      }
      candidates.insert(*type);
    }
    try {
      table.Set(t.rows[r][0], std::move(candidates));
    } catch (const Error &e) {
      throw Error(ErrorCode::kInvalidLookup, e.what(), line);
    }
  }
  return table;
}

LookupTable LookupTable::Load(const std::filesystem::path &path) {
  return Parse(ReadFile(path));
}

const LookupTable &LookupTable::Default() {
  static const LookupTable kTable = Parse(default_data::kCaseTypesCsv);
  return kTable;
}

CaseTypeResolution ResolveCaseTypes(std::string_view title, const LookupTable &table) {
  CaseTypeResolution out;
  auto tokens = TokenizeDesignators(title);
  size_t i = 0;
  while (i < tokens.size()) {
    if (tokens[i].numeric) {
      ++i;
      continue;
    }
    size_t alpha_run = 0;
    while (i + alpha_run < tokens.size() && !tokens[i + alpha_run].numeric) ++alpha_run;
    size_t longest = std::min(alpha_run, table.max_key_tokens());
    bool matched = false;
    for (size_t len = longest; len >= 1; --len) {
      const std::set<CaseType> *candidates = table.Find(JoinTokens(tokens, i, i + len));
      if (candidates == nullptr) continue;
      if (candidates->size() == 1) {
        out.types.insert(*candidates->begin());
      } else {
        size_t b = tokens[i].begin, e = tokens[i + len - 1].end;
        out.ambiguities.push_back(
            Ambiguity{std::string(title.substr(b, e - b)), *candidates});
      }
      i += len;
      matched = true;
      break;
    }
    if (!matched) ++i;
  }
  if (out.types.empty() && out.ambiguities.empty()) out.types.insert(CaseType::kUnknown);
  return out;
}

// --- Judges ---------------------------------------------------------------

namespace {

std::string_view StripPeriods(std::string_view token) {
  while (!token.empty() && token.back() == '.') token.remove_suffix(1);
  return token;
}

std::vector<std::string_view> WhitespaceTokens(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && text::IsSpace(s[i])) ++i;
    size_t b = i;
    while (i < s.size() && !text::IsSpace(s[i])) ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

// Number of leading tokens of `tokens` (from `at`) covered by `honorific`,
// or 0 when it does not match.
size_t MatchHonorific(const std::vector<std::string_view> &tokens, size_t at,
                      std::string_view honorific) {
  auto parts = WhitespaceTokens(honorific);
  if (parts.empty() || at + parts.size() > tokens.size()) return 0;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (!text::EqualsIgnoreCase(StripPeriods(tokens[at + k]), StripPeriods(parts[k]))) {
      return 0;
    }
  }
  return parts.size();
}

// Longest honorific first, so "Chief Justice" wins over "Justice".
size_t MatchAnyHonorific(const std::vector<std::string_view> &tokens, size_t at,
                         const std::vector<std::string> &honorifics) {
  size_t best = 0;
  for (const auto &h : honorifics) best = std::max(best, MatchHonorific(tokens, at, h));
  return best;
}

bool IsDesignationSuffix(std::string_view token) {
  std::string t = text::Lower(StripPeriods(token));
  return t == "cj" || t == "hcj" || t == "j" || t == "acj";
}

}  // namespace

bool StartsWithHonorific(std::string_view line,
                         const std::vector<std::string> &honorifics) {
  auto tokens = WhitespaceTokens(line);
  return MatchAnyHonorific(tokens, 0, honorifics) > 0;
}

std::string NormalizeJudgeName(std::string_view raw,
                               const std::vector<std::string> &honorifics) {
  if (auto comma = raw.find(','); comma != std::string_view::npos) {
    raw = raw.substr(0, comma);
  }
  auto tokens = WhitespaceTokens(raw);
  size_t at = 0;
  while (size_t n = MatchAnyHonorific(tokens, at, honorifics)) at += n;
  size_t end = tokens.size();
  while (end > at + 1 && IsDesignationSuffix(tokens[end - 1])) --end;
  std::string out;
  for (size_t k = at; k < end; ++k) {
    if (!out.empty()) out.push_back(' ');
    out += text::Lower(tokens[k]);
  }
  return out;
}

namespace {

void ValidateRoster(const std::vector<Judge> &judges, int first_line) {
  auto line_of = [&](size_t idx) {
    return first_line > 0 ? first_line + static_cast<int>(idx) : 0;
  };
  std::set<std::string> ids;
  std::vector<std::vector<std::string>> forms(judges.size());
  for (size_t i = 0; i < judges.size(); ++i) {
    const Judge &j = judges[i];
    if (j.id.empty()) throw Error(ErrorCode::kInvalidRoster, "empty judge id", line_of(i));
    if (!ids.insert(j.id).second) {
      throw Error(ErrorCode::kInvalidRoster, fmt::format("duplicate id '{}'", j.id),
                  line_of(i));
    }
    forms[i].push_back(NormalizeJudgeName(j.canonical_name));
    if (forms[i].front().empty()) {
      throw Error(ErrorCode::kInvalidRoster,
                  fmt::format("judge '{}' has an empty canonical name", j.id), line_of(i));
    }
    for (const auto &alias : j.aliases) forms[i].push_back(NormalizeJudgeName(alias));
  }
  for (size_t i = 0; i < judges.size(); ++i) {
    for (size_t k = i + 1; k < judges.size(); ++k) {
      for (const auto &a : forms[i]) {
        for (const auto &b : forms[k]) {
          int d = text::EditDistance(a, b);
          if (d < JudgeRoster::kMinSeparation) {
            throw Error(ErrorCode::kInvalidRoster,
                        fmt::format("'{}' ({}) and '{}' ({}) are only {} edits apart",
                                    a, judges[i].id, b, judges[k].id, d),
                        line_of(k));
          }
        }
      }
    }
  }
}

}  // namespace

JudgeRoster::JudgeRoster(std::vector<Judge> judges) : judges_(std::move(judges)) {
  ValidateRoster(judges_, 0);
  for (size_t i = 0; i < judges_.size(); ++i) {
    forms_.emplace_back(i, NormalizeJudgeName(judges_[i].canonical_name));
    for (const auto &alias : judges_[i].aliases) {
      forms_.emplace_back(i, NormalizeJudgeName(alias));
    }
  }
}

JudgeRoster JudgeRoster::Parse(std::string_view data) {
  csv::Table t;
  try {
    t = csv::Read(data, {"id", "canonical_name", "aliases"});
  } catch (const Error &e) {
    throw Error(ErrorCode::kInvalidRoster, e.what(), e.line());
  }
  std::vector<Judge> judges;
  for (const auto &row : t.rows) {
    judges.push_back(Judge{std::string(text::Trim(row[0])),
                           std::string(text::Trim(row[1])),
                           text::SplitTrimmed(row[2], '|')});
  }
  ValidateRoster(judges, 2);
  return JudgeRoster(std::move(judges));
}

JudgeRoster JudgeRoster::Load(const std::filesystem::path &path) {
  return Parse(ReadFile(path));
}

const JudgeRoster &JudgeRoster::Default() {
  static const JudgeRoster kRoster = Parse(default_data::kJudgesCsv);
  return kRoster;
}

const Judge *JudgeRoster::Find(std::string_view id) const {
  for (const auto &j : judges_) {
    if (j.id == id) return &j;
  }
  return nullptr;
}

JudgeMatch CanonicalizeJudge(std::string_view raw, const JudgeRoster &roster,
                             const NameMatchOptions &options) {
  std::string name = NormalizeJudgeName(raw, options.honorifics);
  int best = std::numeric_limits<int>::max();
  const Judge *best_judge = nullptr;
  for (const auto &[idx, form] : roster.name_forms()) {
    int d = text::EditDistance(name, form);
    if (d < best) {
      best = d;
      best_judge = &roster.judges()[idx];
    }
  }
  if (best_judge != nullptr && best <= options.max_distance) {
    return JudgeMatch{JudgeMatch::Kind::kMatched, best_judge->id,
                      best_judge->canonical_name};
  }
  return JudgeMatch{JudgeMatch::Kind::kNew, "", std::move(name)};
}

// --- Dates ----------------------------------------------------------------

namespace {

struct DateToken {
  enum Kind { kNumber, kWord, kPunct } kind;
  std::string text;  // lower-cased for words
  int digits = 0;
  bool ordinal = false;
};

std::vector<DateToken> TokenizeDate(std::string_view s) {
  std::vector<DateToken> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (text::IsSpace(c)) {
      ++i;
    } else if (text::IsAsciiDigit(c)) {
      DateToken t{DateToken::kNumber, "", 0, false};
      while (i < s.size() && text::IsAsciiDigit(s[i])) t.text.push_back(s[i++]);
      t.digits = static_cast<int>(t.text.size());
      if (i + 1 < s.size()) {
        std::string suffix = text::Lower(s.substr(i, 2));
        bool letter_after = i + 2 < s.size() && text::IsAsciiAlpha(s[i + 2]);
        if ((suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") &&
            !letter_after) {
          t.ordinal = true;
          i += 2;
        }
      }
      out.push_back(std::move(t));
    } else if (text::IsAsciiAlpha(c)) {
      DateToken t{DateToken::kWord, "", 0, false};
      while (i < s.size() && text::IsAsciiAlpha(s[i])) t.text.push_back(text::ToLower(s[i++]));
      out.push_back(std::move(t));
    } else {
      out.push_back(DateToken{DateToken::kPunct, std::string(1, c), 0, false});
      ++i;
    }
  }
  return out;
}

std::optional<int> MonthFromName(std::string_view word) {
  static constexpr std::string_view kMonths[] = {
      "january", "february", "march",     "april",   "may",      "june",
      "july",    "august",   "september", "october", "november", "december"};
  for (int m = 0; m < 12; ++m) {
    if (word == kMonths[m] || (word.size() == 3 && kMonths[m].substr(0, 3) == word)) {
      return m + 1;
    }
  }
  if (word == "sept") return 9;
  return std::nullopt;
}

int ToInt(const std::string &digits) {
  int v = 0;
  std::from_chars(digits.data(), digits.data() + digits.size(), v);
  return v;
}

std::optional<Date> ParseDateTokens(const std::vector<DateToken> &t) {
  using K = DateToken::Kind;
  auto is_num = [&](size_t i, int min_digits, int max_digits) {
    return i < t.size() && t[i].kind == K::kNumber && !t[i].ordinal &&
           t[i].digits >= min_digits && t[i].digits <= max_digits;
  };
  // Numeric forms: D-M-Y, D/M/Y, D.M.Y and ISO Y-M-D.
  if (t.size() == 5 && t[1].kind == K::kPunct && t[3].kind == K::kPunct &&
      t[1].text == t[3].text) {
    const std::string &sep = t[1].text;
    if (sep == "-" || sep == "/" || sep == ".") {
      if (is_num(0, 1, 2) && is_num(2, 1, 2) && is_num(4, 4, 4)) {
        return Date::FromYmd(ToInt(t[4].text), ToInt(t[2].text), ToInt(t[0].text));
      }
      if (sep == "-" && is_num(0, 4, 4) && is_num(2, 1, 2) && is_num(4, 1, 2)) {
        return Date::FromYmd(ToInt(t[0].text), ToInt(t[2].text), ToInt(t[4].text));
      }
    }
    return std::nullopt;
  }
  // Word forms; commas and a period after the month name are optional.
  std::vector<DateToken> core;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i].kind == K::kPunct && (t[i].text == "," || t[i].text == ".")) continue;
    if (t[i].kind == K::kWord && t[i].text == "of") continue;
    core.push_back(t[i]);
  }
  if (core.size() != 3) return std::nullopt;
  auto day_ok = [](const DateToken &d) { return d.kind == K::kNumber && d.digits <= 2; };
  auto year_ok = [](const DateToken &y) {
    return y.kind == K::kNumber && !y.ordinal && y.digits == 4;
  };
  if (day_ok(core[0]) && core[1].kind == K::kWord && year_ok(core[2])) {
    if (auto m = MonthFromName(core[1].text)) {
      return Date::FromYmd(ToInt(core[2].text), *m, ToInt(core[0].text));
    }
  }
  if (core[0].kind == K::kWord && day_ok(core[1]) && year_ok(core[2])) {
    if (auto m = MonthFromName(core[0].text)) {
      return Date::FromYmd(ToInt(core[2].text), *m, ToInt(core[1].text));
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Date> ParseReleaseDate(std::string_view raw, const DateRange &range) {
  auto date = ParseDateTokens(TokenizeDate(text::Trim(raw)));
  if (!date || !range.Contains(*date)) return std::nullopt;
  return date;
}

DateOverrides ParseOverrides(std::string_view data, const DateRange &range) {
  csv::Table t;
  try {
    t = csv::Read(data, {"docid", "date"});
  } catch (const Error &e) {
    throw Error(ErrorCode::kInvalidOverride, e.what(), e.line());
  }
  DateOverrides out;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    int line = static_cast<int>(r + 2);
    std::string id(text::Trim(t.rows[r][0]));
    if (id.empty()) throw Error(ErrorCode::kInvalidOverride, "empty docid", line);
    // Parse without a range first so out-of-range dates are reported as such.
    auto date = ParseDateTokens(TokenizeDate(text::Trim(t.rows[r][1])));
    if (!date) {
      throw Error(ErrorCode::kInvalidOverride,
                  fmt::format("unparseable date '{}'", t.rows[r][1]), line);
    }
    if (!range.Contains(*date)) {
      throw Error(ErrorCode::kInvalidOverride,
                  fmt::format("date {} outside {}..{}", date->ToIso(),
                              range.min.ToIso(), range.max.ToIso()),
                  line);
    }
    out[DocId(id)] = *date;
  }
  return out;
}

DateOverrides LoadOverrides(const std::filesystem::path &path, const DateRange &range) {
  return ParseOverrides(ReadFile(path), range);
}

MetadataRecord ApplyOverrides(const DocId &id, const MetadataRecord &record,
                              const DateOverrides &overrides, const DateRange &range) {
  auto it = overrides.find(id);
  if (it == overrides.end()) return record;
  if (!range.Contains(it->second)) {
    throw Error(ErrorCode::kInvalidOverride,
                fmt::format("override for '{}' ({}) outside {}..{}", id.value(),
                            it->second.ToIso(), range.min.ToIso(), range.max.ToIso()));
  }
  MetadataRecord out = record;
  out.release_date = it->second;
  return out;
}

}  // namespace misl
