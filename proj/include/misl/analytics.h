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

// Mergeable corpus statistics.
//
// A StatsPartial summarizes any set of documents. Partials combine with
// Merge, which is associative and commutative with the default-constructed
// partial as identity, so a corpus can be folded in any partition and any
// order with identical results. All arithmetic is exact; rounding happens
// only when results are rendered.

#ifndef MISL_ANALYTICS_H_
#define MISL_ANALYTICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "misl/extraction.h"

namespace misl {

struct StatsPartial {
  int64_t docs_total = 0;
  int64_t docs_dated = 0;
  int64_t docs_text_analyzed = 0;
  int64_t docs_ambiguous = 0;
  int64_t suo_undated = 0;
  std::map<int, int64_t> by_year;
  std::map<int, int64_t> suo_by_year;
  std::map<CaseType, int64_t> by_type;
  std::map<std::string, int64_t> by_jurisdiction;  // rendered label
  std::map<std::string, int64_t> by_judge;         // canonical or normalized new name
  std::map<ArticleRef, int64_t> by_article;
  std::map<PldCitation, int64_t> by_pld;
  std::map<ScmrCitation, int64_t> by_scmr;
  std::map<int, int64_t> bench_sizes;  // bench size -> number of documents

  // Raw occurrence totals; the by_* maps above count documents.
  std::map<ArticleRef, int64_t> article_occurrences;
  std::map<PldCitation, int64_t> pld_occurrences;
  std::map<ScmrCitation, int64_t> scmr_occurrences;

  bool operator==(const StatsPartial &) const = default;
};

// The partial for exactly one document. Presence keys (types, judges,
// articles, citations) contribute 1 each; a document without an extracted
// bench contributes no bench size.
StatsPartial FactsToPartial(const DocFacts &facts);

StatsPartial Merge(const StatsPartial &a, const StatsPartial &b);
void MergeInto(StatsPartial *into, const StatsPartial &from);

StatsPartial Fold(std::span<const DocFacts> facts);
// Folds `parts` contiguous groups separately, then merges the group results
// as a balanced tree. Runs groups on up to `threads` threads.
StatsPartial FoldPartitioned(std::span<const DocFacts> facts, size_t parts,
                             size_t threads = 1);

nlohmann::json PartialToJson(const StatsPartial &p);
StatsPartial PartialFromJson(const nlohmann::json &j);

// --- Queries --------------------------------------------------------------

// Exact non-negative rational.
struct Ratio {
  int64_t num = 0;
  int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  // num/den with half-up rounding to `decimals` places, e.g. "8.1".
  std::string Fixed(int decimals) const;
  // Reduced "num/den".
  std::string Exact() const;
  bool operator==(const Ratio &) const = default;
};

struct YearSeries {
  std::vector<std::pair<int, int64_t>> points;  // ascending, gap years as 0
  int64_t undated = 0;
};

YearSeries CasesByYear(const StatsPartial &p);
// Spans the same years as CasesByYear so the two series align.
YearSeries SuoMotoByYear(const StatsPartial &p);

struct SuoMotoShare {
  int64_t pre_suo = 0, pre_total = 0;
  int64_t post_suo = 0, post_total = 0;
  // Percentages; absent when the side has no dated documents.
  std::optional<Ratio> pre;
  std::optional<Ratio> post;
};

// Splits dated documents into year < split_year and year >= split_year.
SuoMotoShare ComputeSuoMotoShare(const StatsPartial &p, int split_year);

enum class Dimension { kType, kJurisdiction, kJudge, kArticle, kPld, kScmr };

// Throws Error(kInvalidDimension).
Dimension ParseDimension(std::string_view name);
std::string_view DimensionName(Dimension d);

struct RankedEntry {
  std::string key;  // rendered
  int64_t count = 0;

  bool operator==(const RankedEntry &) const = default;
};

// Count descending, ties by rendered key ascending ignoring case. k must be
// at least 1 (Error(kInvalidArgument)); k = 0 is not accepted, use
// RankAll for the full ranking.
std::vector<RankedEntry> TopK(const StatsPartial &p, Dimension d, size_t k);
std::vector<RankedEntry> RankAll(const StatsPartial &p, Dimension d);

struct BenchStats {
  int64_t benches = 0;          // documents with an extracted bench
  std::optional<Ratio> mean;
  std::optional<int> max;
  int64_t full_bench_count = 0;
  int full_bench_size = 17;
};

BenchStats ComputeBenchStats(const StatsPartial &p, int full_bench_size = 17);

struct OccurrenceTotals {
  int64_t articles = 0;
  int64_t pld = 0;
  int64_t scmr = 0;
};

OccurrenceTotals ComputeOccurrenceTotals(const StatsPartial &p);

}  // namespace misl

#endif  // MISL_ANALYTICS_H_
