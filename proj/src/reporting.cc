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

#include "misl/reporting.h"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/config.h"
#include "misl/csv.h"
#include "misl/error.h"

namespace misl {

namespace fs = std::filesystem;

std::string CellText(const Cell &cell) {
  if (const auto *s = std::get_if<std::string>(&cell)) return *s;
  if (const auto *n = std::get_if<int64_t>(&cell)) return std::to_string(*n);
  return "";
}

std::string EmitTable(const ReportTable &table, TableFormat format) {
  for (size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.columns.size()) {
      throw Error(ErrorCode::kInvalidTable,
                  fmt::format("'{}' row {} has {} cells for {} columns", table.title, r + 1,
                              table.rows[r].size(), table.columns.size()));
    }
  }
  if (format == TableFormat::kCsv) {
    std::string out;
    csv::AppendRow(table.columns, &out);
    for (const auto &row : table.rows) {
      csv::Row fields;
      for (const auto &cell : row) fields.push_back(CellText(cell));
      csv::AppendRow(fields, &out);
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["title"] = table.title;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto &row : table.rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const auto &cell : row) {
      if (const auto *s = std::get_if<std::string>(&cell)) {
        jr.push_back(*s);
      } else if (const auto *n = std::get_if<int64_t>(&cell)) {
        jr.push_back(*n);
      } else {
        jr.push_back(nullptr);
      }
    }
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::string EmitYearSeries(const YearSeries &series, std::string_view label) {
  for (size_t i = 1; i < series.points.size(); ++i) {
    if (series.points[i].first <= series.points[i - 1].first) {
      throw Error(ErrorCode::kInvalidSeries,
                  fmt::format("year {} follows {}", series.points[i].first,
                              series.points[i - 1].first));
    }
  }
  std::string out;
  csv::AppendRow({"year", std::string(label)}, &out);
  for (const auto &[year, n] : series.points) {
    csv::AppendRow({std::to_string(year), std::to_string(n)}, &out);
  }
  if (series.undated > 0) csv::AppendRow({"undated", std::to_string(series.undated)}, &out);
  return out;
}

std::string_view ConstitutionChapter(int article) {
  struct Span {
    int first, last;
    std::string_view chapter;
  };
  static constexpr Span kChapters[] = {
      {1, 6, "Introductory"},
      {7, 7, "Fundamental Rights and Principles of Policy"},
      {8, 28, "Fundamental Rights"},
      {29, 40, "Principles of Policy"},
      {41, 49, "The President"},
      {50, 89, "The Parliament"},
      {90, 100, "The Federal Government"},
      {101, 105, "The Governors"},
      {106, 128, "The Provincial Assemblies"},
      {129, 140, "The Provincial Governments"},
      {141, 159, "Relations between Federation and Provinces"},
      {160, 174, "Finance, Property, Contracts and Suits"},
      {175, 175, "The Courts"},
      {176, 191, "The Supreme Court"},
      {192, 203, "The High Courts"},
      {204, 212, "General Provisions relating to the Judicature"},
      {213, 226, "Elections"},
      {227, 231, "Islamic Provisions"},
      {232, 237, "Emergency Provisions"},
      {238, 239, "Amendment of Constitution"},
      {240, 280, "Miscellaneous"},
  };
  for (const auto &span : kChapters) {
    if (article >= span.first && article <= span.last) return span.chapter;
  }
  return "";
}

std::string ReportTitle(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> kTitles = {
      {"cases_by_year", "Distribution of cases by year"},
      {"suo_moto_by_year", "Distribution of Suo Moto cases by year"},
      {"by_type", "Distribution of cases by type"},
      {"by_jurisdiction", "Distribution of cases by jurisdiction"},
      {"top_judges", "Most prolific judges"},
      {"top_articles", "Most cited Articles of the Constitution"},
      {"top_pld", "Most cited PLD judgements"},
      {"top_scmr", "Most cited SCMR judgements"},
      {"bench_stats", "Bench size statistics"},
      {"suo_moto_share", "Share of Suo Moto cases around the split year"},
  };
  auto it = kTitles.find(name);
  if (it == kTitles.end()) {
    throw Error(ErrorCode::kInvalidTable, fmt::format("unknown report '{}'", name));
  }
  return it->second;
}

// --- Table builders ---------------------------------------------------------

ReportTable RankedTable(std::string title, std::string key_column,
                        const std::vector<RankedEntry> &entries) {
  ReportTable t{std::move(title), {"S#", std::move(key_column), "# of Cases"}, {}};
  int64_t serial = 0;
  for (const auto &e : entries) t.rows.push_back({++serial, e.key, e.count});
  return t;
}

ReportTable YearSeriesTable(std::string title, std::string_view label,
                            const YearSeries &series) {
  ReportTable t{std::move(title), {"year", std::string(label)}, {}};
  for (const auto &[year, n] : series.points) {
    t.rows.push_back({static_cast<int64_t>(year), n});
  }
  if (series.undated > 0) t.rows.push_back({std::string("undated"), series.undated});
  return t;
}

ReportTable ArticleTable(const std::vector<RankedEntry> &entries) {
  ReportTable t{ReportTitle("top_articles"),
                {"S#", "Article #", "Category (Chapter)", "# of Cases"},
                {}};
  int64_t serial = 0;
  for (const auto &e : entries) {
    auto ref = ArticleRef::Parse(e.key);
    std::string chapter = ref ? std::string(ConstitutionChapter(ref->article)) : "";
    t.rows.push_back({++serial, e.key, chapter, e.count});
  }
  return t;
}

ReportTable BenchStatsTable(const BenchStats &s) {
  ReportTable t{ReportTitle("bench_stats"), {"metric", "value"}, {}};
  Cell mean, mean_exact, max;
  if (s.mean) {
    mean = s.mean->Fixed(1);
    mean_exact = s.mean->Exact();
  }
  if (s.max) max = static_cast<int64_t>(*s.max);
  t.rows.push_back({std::string("documents_with_bench"), s.benches});
  t.rows.push_back({std::string("mean"), mean});
  t.rows.push_back({std::string("mean_exact"), mean_exact});
  t.rows.push_back({std::string("max"), max});
  t.rows.push_back({std::string("full_bench_size"), static_cast<int64_t>(s.full_bench_size)});
  t.rows.push_back({std::string("full_bench_count"), s.full_bench_count});
  return t;
}

ReportTable SuoMotoShareTable(const SuoMotoShare &s, int split_year) {
  ReportTable t{ReportTitle("suo_moto_share"),
                {"period", "suo_moto", "total", "percent"},
                {}};
  auto pct = [](const std::optional<Ratio> &r) { return r ? Cell{r->Fixed(1)} : Cell{}; };
  t.rows.push_back({fmt::format("before {}", split_year), s.pre_suo, s.pre_total, pct(s.pre)});
  t.rows.push_back({fmt::format("{} onwards", split_year), s.post_suo, s.post_total, pct(s.post)});
  return t;
}

std::map<std::string, ReportTable> BuildReportTables(const StatsPartial &p,
                                                     const ReportOptions &options) {
  std::map<std::string, ReportTable> tables;
  tables["cases_by_year"] =
      YearSeriesTable(ReportTitle("cases_by_year"), "cases", CasesByYear(p));
  tables["suo_moto_by_year"] = YearSeriesTable(ReportTitle("suo_moto_by_year"),
                                               "suo_moto_cases", SuoMotoByYear(p));
  tables["by_type"] =
      RankedTable(ReportTitle("by_type"), "Type", RankAll(p, Dimension::kType));
  tables["by_jurisdiction"] = RankedTable(ReportTitle("by_jurisdiction"),
                                          "Jurisdiction", RankAll(p, Dimension::kJurisdiction));
  tables["top_judges"] = RankedTable(ReportTitle("top_judges"), "Name",
                                     TopK(p, Dimension::kJudge, options.top_k));
  tables["top_articles"] = ArticleTable(TopK(p, Dimension::kArticle, options.top_k));
  tables["top_pld"] = RankedTable(ReportTitle("top_pld"), "Citation",
                                  TopK(p, Dimension::kPld, options.top_k));
  tables["top_scmr"] = RankedTable(ReportTitle("top_scmr"), "Citation",
                                   TopK(p, Dimension::kScmr, options.top_k));
  tables["bench_stats"] = BenchStatsTable(ComputeBenchStats(p, options.full_bench_size));
  tables["suo_moto_share"] =
      SuoMotoShareTable(ComputeSuoMotoShare(p, options.split_year), options.split_year);
  return tables;
}

ReportBundle RenderBundle(const std::map<std::string, ReportTable> &tables,
                          const YearSeries &cases, const YearSeries &suo) {
  ReportBundle bundle;
  for (std::string_view name : kReportNames) {
    auto it = tables.find(std::string(name));
    if (it == tables.end()) {
      throw Error(ErrorCode::kInvalidTable, fmt::format("missing report '{}'", name));
    }
    std::string base(name);
    bundle[base + ".json"] = EmitTable(it->second, TableFormat::kJson);
    if (name == "cases_by_year") {
      bundle[base + ".csv"] = EmitYearSeries(cases, "cases");
    } else if (name == "suo_moto_by_year") {
      bundle[base + ".csv"] = EmitYearSeries(suo, "suo_moto_cases");
    } else {
      bundle[base + ".csv"] = EmitTable(it->second, TableFormat::kCsv);
    }
  }
  return bundle;
}

ReportBundle BuildReportBundle(const StatsPartial &p, const ReportOptions &options) {
  return RenderBundle(BuildReportTables(p, options), CasesByYear(p), SuoMotoByYear(p));
}

void WriteBundle(const ReportBundle &bundle, const fs::path &dir) {
  fs::create_directories(dir);
  for (const auto &[name, bytes] : bundle) WriteFileAtomic(dir / name, bytes);
}

ReportBundle ReadBundle(const fs::path &dir) {
  ReportBundle bundle;
  for (std::string_view name : kReportNames) {
    for (const char *ext : {".csv", ".json"}) {
      std::string file = std::string(name) + ext;
      bundle[file] = ReadFile(dir / file);
    }
  }
  return bundle;
}

}  // namespace misl
