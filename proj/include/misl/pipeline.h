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

// End-to-end stages over a corpus root:
//
//   crawl    index page -> index.csv + manifest.jsonl
//   fetch    Indexed documents -> raw/<id>
//   convert  raw/<id> -> text/<id>.txt
//   analyze  manifest + text -> facts.jsonl + partial.json
//   report   partial.json -> reports/
//
// Every stage skips work that is already done, so rerunning a stage is a
// no-op. Per-document failures are recorded in the manifest and never abort
// a stage.

#ifndef MISL_PIPELINE_H_
#define MISL_PIPELINE_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "misl/acquisition.h"
#include "misl/corpus_store.h"
#include "misl/extraction.h"
#include "misl/reporting.h"

namespace misl {

struct RunConfig {
  std::filesystem::path root = ".";
  std::string index_url;
  IndexSelectors selectors;
  FetchPolicy fetch;
  std::chrono::milliseconds politeness{1000};
  ConvertOptions convert;
  // Empty paths select the built-in tables.
  std::filesystem::path lookup_path;
  std::filesystem::path roster_path;
  std::filesystem::path grammar_path;
  std::filesystem::path overrides_path;
  ReportOptions report;
  size_t jobs = 1;
  // Fraction of documents that may fail (dead link or conversion failure)
  // before the run reports failure. --strict sets it to 0.
  double max_failure_rate = 1.0;

  // Every recognized key with its default value.
  static KeyValueConfig DefaultValues();
  // Unset keys keep their defaults. Throws Error(kConfig) on bad values.
  static RunConfig FromConfig(const KeyValueConfig &config);
  // Defaults, then the key=value file when given, then MISL_* environment
  // variables (MISL_SPLIT_YEAR overrides split_year, MISL_FETCH_RETRIES
  // overrides fetch.retries). Relative paths are taken as given, that is
  // relative to the working directory.
  static RunConfig Load(const std::optional<std::filesystem::path> &file);
  // Throws Error(kConfig) unless split_year >= 1947, top_k >= 1 and
  // jobs >= 1.
  void Validate() const;
};

// Document counts after a stage, in funnel order.
struct Funnel {
  size_t indexed = 0;  // all records
  size_t dead_link = 0;
  size_t fetched = 0;  // ever fetched: Fetched + Converted + ConversionFailed
  size_t converted = 0;
  size_t conversion_failed = 0;
  size_t pending = 0;  // still Indexed

  static Funnel FromCounts(const std::map<DocStatus, size_t> &counts);
  std::string ToString() const;
  double FailureRate() const;
};

struct StageResult {
  size_t processed = 0;  // documents the stage worked on
  size_t failed = 0;     // of those, permanently failed
  size_t transient = 0;  // left for a later run
  Funnel funnel;
};

class Pipeline {
 public:
  // `transport` defaults to DefaultTransport; tests inject stubs.
  explicit Pipeline(RunConfig config, Transport *transport = nullptr,
                    std::ostream *log = nullptr);
  ~Pipeline();

  // Reads the index page at index_url, or index.csv when no URL is set.
  StageResult Crawl();
  // These three throw Error(kStageOrder) naming "crawl" when there is no
  // manifest yet.
  StageResult Fetch();
  StageResult Convert();
  StageResult Analyze();
  // Throws Error(kStageOrder, "analyze") when partial.json is missing.
  ReportBundle Report();
  // The full chain. Returns the report bundle.
  ReportBundle All();

  const RunConfig &config() const { return config_; }
  std::filesystem::path index_csv_path() const { return config_.root / "index.csv"; }
  std::filesystem::path facts_path() const { return config_.root / "facts.jsonl"; }
  std::filesystem::path partial_path() const { return config_.root / "partial.json"; }
  std::filesystem::path reports_dir() const { return config_.root / "reports"; }

  Funnel CurrentFunnel();

 private:
  CorpusStore &Store();
  void RequireManifest() const;
  void Log(const std::string &line);

  RunConfig config_;
  Transport *transport_;
  std::unique_ptr<Transport> owned_transport_;
  std::ostream *log_;
  std::unique_ptr<CorpusStore> store_;
};

}  // namespace misl

#endif  // MISL_PIPELINE_H_
