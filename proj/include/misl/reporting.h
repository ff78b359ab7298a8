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

// Rendering of statistics into report tables and plot-ready series.
//
// A report bundle is a fixed set of files under `reports/`:
//
//   cases_by_year  suo_moto_by_year  by_type  by_jurisdiction  top_judges
//   top_articles  top_pld  top_scmr  bench_stats  suo_moto_share
//
// each as .csv and .json. Output bytes depend only on the input values.

#ifndef MISL_REPORTING_H_
#define MISL_REPORTING_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "misl/analytics.h"

namespace misl {

// Null renders as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::string, int64_t>;

std::string CellText(const Cell &cell);

struct ReportTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const ReportTable &) const = default;
};

enum class TableFormat { kCsv, kJson };

// Throws Error(kInvalidTable) when a row's arity differs from the columns'.
std::string EmitTable(const ReportTable &table, TableFormat format);

// "year,<label>" rows in year order, plus an "undated,<n>" trailer when n > 0.
// Throws Error(kInvalidSeries) unless years strictly ascend.
std::string EmitYearSeries(const YearSeries &series, std::string_view label = "count");

// Chapter of the Constitution an Article belongs to ("Fundamental Rights").
std::string_view ConstitutionChapter(int article);

struct ReportOptions {
  int split_year = 2009;
  size_t top_k = 10;
  int full_bench_size = 17;
};

inline constexpr std::string_view kReportNames[] = {
    "cases_by_year", "suo_moto_by_year", "by_type",  "by_jurisdiction", "top_judges",
    "top_articles",  "top_pld",          "top_scmr", "bench_stats",     "suo_moto_share"};

// Display title of a named report; throws Error(kInvalidTable) for
// unknown names.
std::string ReportTitle(std::string_view name);

// File name ("by_type.csv") -> bytes.
using ReportBundle = std::map<std::string, std::string>;

// Builders shared by the pipeline. Serial numbers are assigned here.
ReportTable RankedTable(std::string title, std::string key_column,
                        const std::vector<RankedEntry> &entries);
ReportTable YearSeriesTable(std::string title, std::string_view label,
                            const YearSeries &series);
ReportTable ArticleTable(const std::vector<RankedEntry> &entries);
ReportTable BenchStatsTable(const BenchStats &stats);
ReportTable SuoMotoShareTable(const SuoMotoShare &share, int split_year);

std::map<std::string, ReportTable> BuildReportTables(const StatsPartial &p,
                                                     const ReportOptions &options = {});

// Emits every table as CSV and JSON. The two year series use
// EmitYearSeries for their CSV form.
ReportBundle RenderBundle(const std::map<std::string, ReportTable> &tables,
                          const YearSeries &cases, const YearSeries &suo);
ReportBundle BuildReportBundle(const StatsPartial &p, const ReportOptions &options = {});

void WriteBundle(const ReportBundle &bundle, const std::filesystem::path &dir);
ReportBundle ReadBundle(const std::filesystem::path &dir);

}  // namespace misl

#endif  // MISL_REPORTING_H_
