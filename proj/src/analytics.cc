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

#include "misl/analytics.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <numeric>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/error.h"
#include "misl/text.h"

namespace misl {

StatsPartial FactsToPartial(const DocFacts &f) {
  StatsPartial p;
  p.docs_total = 1;
  if (f.year) {
    p.docs_dated = 1;
    p.by_year[*f.year] = 1;
    if (f.suo_moto) p.suo_by_year[*f.year] = 1;
  } else if (f.suo_moto) {
    p.suo_undated = 1;
  }
  if (!f.ambiguities.empty()) p.docs_ambiguous = 1;
  for (CaseType t : f.types) p.by_type[t] = 1;
  if (!f.text_analyzed) return p;

  p.docs_text_analyzed = 1;
  p.by_jurisdiction[f.jurisdiction.Label()] = 1;
  for (const auto &judge : f.bench) p.by_judge[judge.name] = 1;
  if (!f.bench.empty()) p.bench_sizes[static_cast<int>(f.bench.size())] = 1;
  for (const auto &[ref, n] : f.articles) {
    p.by_article[ref] = 1;
    p.article_occurrences[ref] = n;
  }
  for (const auto &[c, n] : f.pld) {
    p.by_pld[c] = 1;
    p.pld_occurrences[c] = n;
  }
  for (const auto &[c, n] : f.scmr) {
    p.by_scmr[c] = 1;
    p.scmr_occurrences[c] = n;
  }
  return p;
}

namespace {

template <typename K>
void AddCounts(std::map<K, int64_t> *into, const std::map<K, int64_t> &from) {
  for (const auto &[k, v] : from) (*into)[k] += v;
}

}  // namespace

void MergeInto(StatsPartial *into, const StatsPartial &from) {
  into->docs_total += from.docs_total;
  into->docs_dated += from.docs_dated;
  into->docs_text_analyzed += from.docs_text_analyzed;
  into->docs_ambiguous += from.docs_ambiguous;
  into->suo_undated += from.suo_undated;
  AddCounts(&into->by_year, from.by_year);
  AddCounts(&into->suo_by_year, from.suo_by_year);
  AddCounts(&into->by_type, from.by_type);
  AddCounts(&into->by_jurisdiction, from.by_jurisdiction);
  AddCounts(&into->by_judge, from.by_judge);
  AddCounts(&into->by_article, from.by_article);
  AddCounts(&into->by_pld, from.by_pld);
  AddCounts(&into->by_scmr, from.by_scmr);
  AddCounts(&into->bench_sizes, from.bench_sizes);
  AddCounts(&into->article_occurrences, from.article_occurrences);
  AddCounts(&into->pld_occurrences, from.pld_occurrences);
  AddCounts(&into->scmr_occurrences, from.scmr_occurrences);
}

StatsPartial Merge(const StatsPartial &a, const StatsPartial &b) {
  StatsPartial out = a;
  MergeInto(&out, b);
  return out;
}

StatsPartial Fold(std::span<const DocFacts> facts) {
  StatsPartial out;
  for (const auto &f : facts) MergeInto(&out, FactsToPartial(f));
  return out;
}

StatsPartial FoldPartitioned(std::span<const DocFacts> facts, size_t parts,
                             size_t threads) {
  parts = std::max<size_t>(parts, 1);
  threads = std::clamp<size_t>(threads, 1, parts);
  std::vector<StatsPartial> partials(parts);
  auto range = [&](size_t g) {
    size_t b = facts.size() * g / parts, e = facts.size() * (g + 1) / parts;
    return facts.subspan(b, e - b);
  };
  if (threads == 1) {
    for (size_t g = 0; g < parts; ++g) partials[g] = Fold(range(g));
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t g = next++; g < parts; g = next++) partials[g] = Fold(range(g));
      });
    }
    for (auto &th : pool) th.join();
  }
  // Balanced tree reduction.
  while (partials.size() > 1) {
    std::vector<StatsPartial> level;
    for (size_t i = 0; i + 1 < partials.size(); i += 2) {
      level.push_back(Merge(partials[i], partials[i + 1]));
    }
    if (partials.size() % 2 == 1) level.push_back(std::move(partials.back()));
    partials = std::move(level);
  }
  return std::move(partials.front());
}

// --- JSON -----------------------------------------------------------------

namespace {

using nlohmann::json;

template <typename K, typename KeyFn>
json MapToJson(const std::map<K, int64_t> &m, KeyFn key) {
  json out = json::object();
  for (const auto &[k, v] : m) out[key(k)] = v;
  return out;
}

template <typename K, typename ParseFn>
std::map<K, int64_t> MapFromJson(const json &j, const char *field, ParseFn parse) {
  std::map<K, int64_t> out;
  if (!j.contains(field)) return out;
  for (const auto &[k, v] : j.at(field).items()) {
    std::optional<K> key = parse(k);
    if (!key) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("partial: bad key '{}' in {}", k, field));
    }
    out[*key] = v.template get<int64_t>();
  }
  return out;
}

std::optional<int> ParseIntKey(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

nlohmann::json PartialToJson(const StatsPartial &p) {
  auto int_key = [](int k) { return std::to_string(k); };
  auto str_key = [](const std::string &k) { return k; };
  json j;
  j["docs_total"] = p.docs_total;
  j["docs_dated"] = p.docs_dated;
  j["docs_text_analyzed"] = p.docs_text_analyzed;
  j["docs_ambiguous"] = p.docs_ambiguous;
  j["suo_undated"] = p.suo_undated;
  j["by_year"] = MapToJson(p.by_year, int_key);
  j["suo_by_year"] = MapToJson(p.suo_by_year, int_key);
  j["by_type"] = MapToJson(p.by_type, [](CaseType t) { return std::string(CaseTypeName(t)); });
  j["by_jurisdiction"] = MapToJson(p.by_jurisdiction, str_key);
  j["by_judge"] = MapToJson(p.by_judge, str_key);
  j["by_article"] = MapToJson(p.by_article, [](const ArticleRef &r) { return r.Render(); });
  j["by_pld"] = MapToJson(p.by_pld, [](const PldCitation &c) { return c.Render(); });
  j["by_scmr"] = MapToJson(p.by_scmr, [](const ScmrCitation &c) { return c.Render(); });
  j["bench_sizes"] = MapToJson(p.bench_sizes, int_key);
  j["article_occurrences"] =
      MapToJson(p.article_occurrences, [](const ArticleRef &r) { return r.Render(); });
  j["pld_occurrences"] =
      MapToJson(p.pld_occurrences, [](const PldCitation &c) { return c.Render(); });
  j["scmr_occurrences"] =
      MapToJson(p.scmr_occurrences, [](const ScmrCitation &c) { return c.Render(); });
  return j;
}

StatsPartial PartialFromJson(const nlohmann::json &j) {
  StatsPartial p;
  try {
    p.docs_total = j.at("docs_total").get<int64_t>();
    p.docs_dated = j.at("docs_dated").get<int64_t>();
    p.docs_text_analyzed = j.at("docs_text_analyzed").get<int64_t>();
    p.docs_ambiguous = j.at("docs_ambiguous").get<int64_t>();
    p.suo_undated = j.at("suo_undated").get<int64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("partial: {}", e.what()));
  }
  auto str = [](std::string_view s) { return std::optional<std::string>(s); };
  auto type = [](std::string_view s) { return ParseCaseTypeName(s); };
  auto article = [](std::string_view s) { return ArticleRef::Parse(s); };
  auto pld = [](std::string_view s) { return ParsePldCitation(s); };
  auto scmr = [](std::string_view s) { return ParseScmrCitation(s); };
  p.by_year = MapFromJson<int>(j, "by_year", ParseIntKey);
  p.suo_by_year = MapFromJson<int>(j, "suo_by_year", ParseIntKey);
  p.by_type = MapFromJson<CaseType>(j, "by_type", type);
  p.by_jurisdiction = MapFromJson<std::string>(j, "by_jurisdiction", str);
  p.by_judge = MapFromJson<std::string>(j, "by_judge", str);
  p.by_article = MapFromJson<ArticleRef>(j, "by_article", article);
  p.by_pld = MapFromJson<PldCitation>(j, "by_pld", pld);
  p.by_scmr = MapFromJson<ScmrCitation>(j, "by_scmr", scmr);
  p.bench_sizes = MapFromJson<int>(j, "bench_sizes", ParseIntKey);
  p.article_occurrences = MapFromJson<ArticleRef>(j, "article_occurrences", article);
  p.pld_occurrences = MapFromJson<PldCitation>(j, "pld_occurrences", pld);
  p.scmr_occurrences = MapFromJson<ScmrCitation>(j, "scmr_occurrences", scmr);
  return p;
}

// --- Queries --------------------------------------------------------------

std::string Ratio::Fixed(int decimals) const {
  int64_t scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  // Half-up rounding of num * scale / den.
  int64_t scaled = (2 * num * scale + den) / (2 * den);
  if (decimals == 0) return std::to_string(scaled);
  return fmt::format("{}.{:0{}d}", scaled / scale, scaled % scale, decimals);
}

std::string Ratio::Exact() const {
  int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return fmt::format("{}/{}", num / g, den / g);
}

namespace {

YearSeries SeriesOver(const std::map<int, int64_t> &range_source,
                      const std::map<int, int64_t> &counts, int64_t undated) {
  YearSeries s;
  s.undated = undated;
  if (range_source.empty()) return s;
  int first = range_source.begin()->first, last = range_source.rbegin()->first;
  for (int y = first; y <= last; ++y) {
    auto it = counts.find(y);
    s.points.emplace_back(y, it == counts.end() ? 0 : it->second);
  }
  return s;
}

}  // namespace

YearSeries CasesByYear(const StatsPartial &p) {
  return SeriesOver(p.by_year, p.by_year, p.docs_total - p.docs_dated);
}

YearSeries SuoMotoByYear(const StatsPartial &p) {
  return SeriesOver(p.by_year, p.suo_by_year, p.suo_undated);
}

SuoMotoShare ComputeSuoMotoShare(const StatsPartial &p, int split_year) {
  SuoMotoShare s;
  for (const auto &[year, n] : p.by_year) (year < split_year ? s.pre_total : s.post_total) += n;
  for (const auto &[year, n] : p.suo_by_year) (year < split_year ? s.pre_suo : s.post_suo) += n;
  if (s.pre_total > 0) s.pre = Ratio{100 * s.pre_suo, s.pre_total};
  if (s.post_total > 0) s.post = Ratio{100 * s.post_suo, s.post_total};
  return s;
}

namespace {

constexpr std::pair<Dimension, std::string_view> kDimensionNames[] = {
    {Dimension::kType, "type"},     {Dimension::kJurisdiction, "jurisdiction"},
    {Dimension::kJudge, "judge"},   {Dimension::kArticle, "article"},
    {Dimension::kPld, "pld"},       {Dimension::kScmr, "scmr"},
};

template <typename K, typename RenderFn>
std::vector<RankedEntry> Rendered(const std::map<K, int64_t> &m, RenderFn render) {
  std::vector<RankedEntry> out;
  out.reserve(m.size());
  for (const auto &[k, v] : m) out.push_back(RankedEntry{render(k), v});
  return out;
}

}  // namespace

Dimension ParseDimension(std::string_view name) {
  for (const auto &[d, n] : kDimensionNames) {
    if (n == name) return d;
  }
  throw Error(ErrorCode::kInvalidDimension, fmt::format("unknown dimension '{}'", name));
}

std::string_view DimensionName(Dimension d) {
  for (const auto &[dim, n] : kDimensionNames) {
    if (dim == d) return n;
  }
  return "?";
}

std::vector<RankedEntry> RankAll(const StatsPartial &p, Dimension d) {
  std::vector<RankedEntry> entries;
  switch (d) {
    case Dimension::kType:
      entries = Rendered(p.by_type, [](CaseType t) { return std::string(CaseTypeLabel(t)); });
      break;
    case Dimension::kJurisdiction:
      entries = Rendered(p.by_jurisdiction, [](const std::string &s) { return s; });
      break;
    case Dimension::kJudge:
      entries = Rendered(p.by_judge, [](const std::string &s) { return s; });
      break;
    case Dimension::kArticle:
      entries = Rendered(p.by_article, [](const ArticleRef &r) { return r.Render(); });
      break;
    case Dimension::kPld:
      entries = Rendered(p.by_pld, [](const PldCitation &c) { return c.Render(); });
      break;
    case Dimension::kScmr:
      entries = Rendered(p.by_scmr, [](const ScmrCitation &c) { return c.Render(); });
      break;
  }
  std::sort(entries.begin(), entries.end(), [](const RankedEntry &a, const RankedEntry &b) {
    if (a.count != b.count) return a.count > b.count;
    std::string la = text::Lower(a.key), lb = text::Lower(b.key);
    if (la != lb) return la < lb;
    return a.key < b.key;
  });
  return entries;
}

std::vector<RankedEntry> TopK(const StatsPartial &p, Dimension d, size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "top_k: k must be at least 1");
  auto entries = RankAll(p, d);
  if (entries.size() > k) entries.resize(k);
  return entries;
}

BenchStats ComputeBenchStats(const StatsPartial &p, int full_bench_size) {
  BenchStats s;
  s.full_bench_size = full_bench_size;
  int64_t judges = 0;
  for (const auto &[size, n] : p.bench_sizes) {
    s.benches += n;
    judges += static_cast<int64_t>(size) * n;
    if (size == full_bench_size) s.full_bench_count += n;
  }
  if (s.benches > 0) {
    s.mean = Ratio{judges, s.benches};
    s.max = p.bench_sizes.rbegin()->first;
  }
  return s;
}

OccurrenceTotals ComputeOccurrenceTotals(const StatsPartial &p) {
  OccurrenceTotals t;
  for (const auto &[k, n] : p.article_occurrences) t.articles += n;
  for (const auto &[k, n] : p.pld_occurrences) t.pld += n;
  for (const auto &[k, n] : p.scmr_occurrences) t.scmr += n;
  return t;
}

}  // namespace misl
