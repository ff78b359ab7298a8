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

#include "misl/pipeline.h"

#include <atomic>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/analytics.h"
#include "misl/config.h"
#include "misl/error.h"
#include "misl/normalization.h"
#include "misl/text.h"

namespace misl {

namespace fs = std::filesystem;

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn>
void ParallelFor(size_t n, size_t jobs, Fn fn) {
  jobs = std::max<size_t>(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto &th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Error StageOrderError(std::string_view missing) {
  return Error(ErrorCode::kStageOrder, fmt::format("run the '{}' stage first", missing));
}

}  // namespace

// --- RunConfig --------------------------------------------------------------------

KeyValueConfig RunConfig::DefaultValues() {
  RunConfig d;
  KeyValueConfig c;
  c.Set("root", d.root.string());
  c.Set("index_url", "");
  c.Set("row_selector", d.selectors.row);
  c.Set("link_selector", d.selectors.link);
  c.Set("title_selector", d.selectors.title);
  c.Set("date_selector", d.selectors.date);
  c.Set("description_selector", d.selectors.description);
  c.Set("fetch.retries", std::to_string(d.fetch.retries));
  c.Set("fetch.backoff_ms", std::to_string(d.fetch.backoff.count()));
  c.Set("fetch.timeout_ms", std::to_string(d.fetch.timeout.count()));
  c.Set("politeness_ms", std::to_string(d.politeness.count()));
  c.Set("converter_cmd", "");
  c.Set("converter_timeout_ms", std::to_string(d.convert.timeout.count()));
  c.Set("non_latin_threshold", "0.5");
  c.Set("lookup_path", "");
  c.Set("roster_path", "");
  c.Set("grammar_path", "");
  c.Set("overrides_path", "");
  c.Set("split_year", std::to_string(d.report.split_year));
  c.Set("top_k", std::to_string(d.report.top_k));
  c.Set("full_bench_size", std::to_string(d.report.full_bench_size));
  c.Set("jobs", std::to_string(d.jobs));
  c.Set("max_failure_rate", "1");
  return c;
}

RunConfig RunConfig::FromConfig(const KeyValueConfig &c) {
  RunConfig r;
  const KeyValueConfig defaults = DefaultValues();
  for (const auto &[key, value] : c.values()) {
    if (!defaults.Has(key)) {
      throw Error(ErrorCode::kConfig, fmt::format("unknown config key '{}'", key));
    }
  }
  r.root = c.GetOr("root", r.root.string());
  r.index_url = c.GetOr("index_url", "");
  r.selectors = IndexSelectors::FromConfig(c);
  r.fetch = FetchPolicy::FromConfig(c);
  r.politeness = std::chrono::milliseconds(c.GetInt("politeness_ms", r.politeness.count()));
  r.convert.command = c.GetOr("converter_cmd", "");
  r.convert.timeout =
      std::chrono::milliseconds(c.GetInt("converter_timeout_ms", r.convert.timeout.count()));
  r.convert.non_latin_threshold = c.GetDouble("non_latin_threshold", 0.5);
  r.lookup_path = c.GetOr("lookup_path", "");
  r.roster_path = c.GetOr("roster_path", "");
  r.grammar_path = c.GetOr("grammar_path", "");
  r.overrides_path = c.GetOr("overrides_path", "");
  r.report.split_year = static_cast<int>(c.GetInt("split_year", r.report.split_year));
  long long top_k = c.GetInt("top_k", static_cast<long long>(r.report.top_k));
  if (top_k < 1) throw Error(ErrorCode::kConfig, "top_k must be at least 1");
  r.report.top_k = static_cast<size_t>(top_k);
  r.report.full_bench_size =
      static_cast<int>(c.GetInt("full_bench_size", r.report.full_bench_size));
  long long jobs = c.GetInt("jobs", 1);
  if (jobs < 1) throw Error(ErrorCode::kConfig, "jobs must be at least 1");
  r.jobs = static_cast<size_t>(jobs);
  r.max_failure_rate = c.GetDouble("max_failure_rate", 1.0);
  r.Validate();
  return r;
}

RunConfig RunConfig::Load(const std::optional<fs::path> &file) {
  KeyValueConfig merged = DefaultValues();
  if (file) {
    KeyValueConfig loaded = KeyValueConfig::Load(*file);
    for (const auto &[key, value] : loaded.values()) {
      if (!merged.Has(key)) {
        throw Error(ErrorCode::kConfig,
                    fmt::format("{}: unknown config key '{}'", file->string(), key));
      }
      merged.Set(key, value);
    }
  }
  merged.ApplyEnvironment("MISL_");
  return FromConfig(merged);
}

void RunConfig::Validate() const {
  if (report.split_year < 1947) throw Error(ErrorCode::kConfig, "split_year must be >= 1947");
  if (report.top_k < 1) throw Error(ErrorCode::kConfig, "top_k must be at least 1");
  if (report.full_bench_size < 1) {
    throw Error(ErrorCode::kConfig, "full_bench_size must be at least 1");
  }
  if (jobs < 1) throw Error(ErrorCode::kConfig, "jobs must be at least 1");
  if (!(max_failure_rate >= 0 && max_failure_rate <= 1)) {
    throw Error(ErrorCode::kConfig, "max_failure_rate must be in [0, 1]");
  }
  if (!(convert.non_latin_threshold >= 0 && convert.non_latin_threshold <= 1)) {
    throw Error(ErrorCode::kConfig, "non_latin_threshold must be in [0, 1]");
  }
  if (politeness.count() < 0 || convert.timeout.count() <= 0) {
    throw Error(ErrorCode::kConfig, "politeness_ms and converter_timeout_ms must be positive");
  }
  for (const auto *p : {&lookup_path, &roster_path, &grammar_path, &overrides_path}) {
    if (!p->empty() && !fs::exists(*p)) {
      throw Error(ErrorCode::kConfig, fmt::format("file not found: {}", p->string()));
    }
  }
}

// --- Funnel ---------------------------------------------------------------------

Funnel Funnel::FromCounts(const std::map<DocStatus, size_t> &counts) {
  auto get = [&](DocStatus s) {
    auto it = counts.find(s);
    return it == counts.end() ? size_t{0} : it->second;
  };
  Funnel f;
  f.pending = get(DocStatus::kIndexed);
  f.dead_link = get(DocStatus::kDeadLink);
  f.converted = get(DocStatus::kConverted);
  f.conversion_failed = get(DocStatus::kConversionFailed);
  f.fetched = get(DocStatus::kFetched) + f.converted + f.conversion_failed;
  f.indexed = f.pending + f.dead_link + f.fetched;
  return f;
}

std::string Funnel::ToString() const {
  return fmt::format("indexed={} dead_link={} fetched={} converted={} conversion_failed={} "
                     "pending={}",
                     indexed, dead_link, fetched, converted, conversion_failed, pending);
}

double Funnel::FailureRate() const {
  if (indexed == 0) return 0;
  return static_cast<double>(dead_link + conversion_failed) / static_cast<double>(indexed);
}

// --- Pipeline -------------------------------------------------------------------

Pipeline::Pipeline(RunConfig config, Transport *transport, std::ostream *log)
    : config_(std::move(config)), transport_(transport), log_(log) {
  config_.Validate();
  if (transport_ == nullptr) {
    owned_transport_ = std::make_unique<DefaultTransport>();
    transport_ = owned_transport_.get();
  }
}

Pipeline::~Pipeline() = default;

CorpusStore &Pipeline::Store() {
  if (!store_) store_ = std::make_unique<CorpusStore>(config_.root);
  return *store_;
}

void Pipeline::RequireManifest() const {
  if (!CorpusStore::HasManifest(config_.root)) throw StageOrderError("crawl");
}

void Pipeline::Log(const std::string &line) {
  if (log_) *log_ << line << '\n';
}

Funnel Pipeline::CurrentFunnel() { return Funnel::FromCounts(Store().StatusCounts()); }

StageResult Pipeline::Crawl() {
  std::vector<IndexRecord> records;
  if (config_.index_url.empty()) {
    if (!fs::exists(index_csv_path())) {
      throw Error(ErrorCode::kConfig, "index_url is not set and there is no index.csv");
    }
    records = ReadIndexCsv(ReadFile(index_csv_path()));
  } else {
    FetchResult page = misl::Fetch(config_.index_url, config_.fetch, *transport_);
    if (const auto *dead = std::get_if<DeadLink>(&page)) {
      throw Error(ErrorCode::kIo, fmt::format("index page returned HTTP {}", dead->http_status));
    }
    if (const auto *failure = std::get_if<TransportFailure>(&page)) {
      throw Error(ErrorCode::kIo, fmt::format("index page: {}", failure->detail));
    }
    IndexParseResult parsed =
        ParseIndexPage(std::get<FetchOk>(page).bytes, config_.selectors, config_.index_url);
    if (parsed.empty_index) Log("warning: the index page has no rows");
    records = std::move(parsed.records);
    WriteFileAtomic(index_csv_path(), WriteIndexCsv(records));
  }

  StageResult result;
  CorpusStore &store = Store();
  size_t before = store.size();
  {
    CorpusStore::Batch batch(&store);
    for (const auto &rec : records) {
      MetadataRecord meta;
      meta.link = rec.link;
      meta.title = text::CollapseWhitespace(rec.title);
      meta.release_date = ParseReleaseDate(rec.date, DateRange::UpToToday());
      if (!text::Trim(rec.description).empty()) {
        meta.description = text::CollapseWhitespace(rec.description);
      }
      if (!rec.date.empty() && !meta.release_date) {
        Log(fmt::format("warning: unparseable date '{}' for {}", rec.date, rec.link));
      }
      try {
        store.AddRecord(meta);
      } catch (const Error &e) {
        ++result.failed;
        Log(fmt::format("skipped index row: {}", e.what()));
      }
    }
    store.Save();
  }
  result.processed = store.size() - before;
  result.funnel = CurrentFunnel();
  Log(fmt::format("crawl: {} records, {} new", records.size(), result.processed));
  return result;
}

StageResult Pipeline::Fetch() {
  RequireManifest();
  CorpusStore &store = Store();
  std::vector<Document> docs = store.Scan(StatusIs(DocStatus::kIndexed), false);
  std::vector<std::optional<FetchResult>> results(docs.size());
  std::vector<std::string> invalid(docs.size());
  PolitenessGate gate(config_.politeness);
  ParallelFor(docs.size(), config_.jobs, [&](size_t i) {
    try {
      Url url = ParseUrl(docs[i].meta.link);
      gate.Wait(url.host);
      results[i] = misl::Fetch(docs[i].meta.link, config_.fetch, *transport_);
    } catch (const Error &e) {
      invalid[i] = e.what();
    }
  });

  StageResult result;
  {
    CorpusStore::Batch batch(&store);
    for (size_t i = 0; i < docs.size(); ++i) {
      const DocId &id = docs[i].id;
      ++result.processed;
      if (!results[i]) {
        store.MarkDeadLink(id, "invalid_url");
        ++result.failed;
        Log(fmt::format("{}: {}", id.value(), invalid[i]));
        continue;
      }
      if (auto *ok = std::get_if<FetchOk>(&*results[i])) {
        WriteFileAtomic(store.raw_path(id), ok->bytes);
        store.MarkFetched(id);
      } else if (auto *dead = std::get_if<DeadLink>(&*results[i])) {
        store.MarkDeadLink(id, fmt::format("http_{}", dead->http_status));
        ++result.failed;
      } else {
        const auto &failure = std::get<TransportFailure>(*results[i]);
        store.NoteTransientFailure(id, "transport: " + failure.detail);
        ++result.transient;
      }
    }
  }
  result.funnel = CurrentFunnel();
  Log("fetch: " + result.funnel.ToString());
  return result;
}

StageResult Pipeline::Convert() {
  RequireManifest();
  CorpusStore &store = Store();
  std::vector<DocId> ids = store.Ids(StatusIs(DocStatus::kFetched));
  StageResult result;
  if (!ids.empty() && config_.convert.command.empty()) {
    throw Error(ErrorCode::kConfig, "converter_cmd is not set");
  }
  std::vector<ConversionResult> outcomes(ids.size());
  ParallelFor(ids.size(), config_.jobs, [&](size_t i) {
    fs::path raw = store.raw_path(ids[i]);
    if (!fs::exists(raw)) {
      outcomes[i] = ConverterFailed{"missing raw file"};
      return;
    }
    outcomes[i] = misl::Convert(raw, config_.convert);
  });
  {
    CorpusStore::Batch batch(&store);
    for (size_t i = 0; i < ids.size(); ++i) {
      ++result.processed;
      if (auto *ok = std::get_if<ConvertOk>(&outcomes[i])) {
        store.AttachText(ids[i], ok->text);
        continue;
      }
      ++result.failed;
      if (std::holds_alternative<NonLatinScript>(outcomes[i])) {
        store.MarkConversionFailed(ids[i], "non_latin_script");
      } else if (std::holds_alternative<CorruptSource>(outcomes[i])) {
        store.MarkConversionFailed(ids[i], "corrupt_source");
      } else {
        const auto &failed = std::get<ConverterFailed>(outcomes[i]);
        Log(fmt::format("{}: converter failed: {}", ids[i].value(), failed.detail));
        store.MarkConversionFailed(
            ids[i], failed.detail == "timeout" ? "converter_timeout" : "converter_failed");
      }
    }
  }
  result.funnel = CurrentFunnel();
  Log("convert: " + result.funnel.ToString());
  return result;
}

StageResult Pipeline::Analyze() {
  RequireManifest();
  CorpusStore &store = Store();
  LookupTable lookup =
      config_.lookup_path.empty() ? LookupTable::Default() : LookupTable::Load(config_.lookup_path);
  JudgeRoster roster = config_.roster_path.empty() ? JudgeRoster::Default()
                                                   : JudgeRoster::Load(config_.roster_path);
  GrammarConfig grammar = config_.grammar_path.empty() ? GrammarConfig::Default()
                                                       : GrammarConfig::Load(config_.grammar_path);
  DateOverrides overrides;
  if (!config_.overrides_path.empty()) overrides = LoadOverrides(config_.overrides_path);
  AnalysisTables tables{&lookup, &roster, &grammar, 2};

  std::vector<Document> docs = store.Scan(AnyStatus(), false);
  std::vector<DocFacts> facts(docs.size());
  std::atomic<size_t> missing_text{0};
  ParallelFor(docs.size(), config_.jobs, [&](size_t i) {
    Document &doc = docs[i];
    doc.meta = ApplyOverrides(doc.id, doc.meta, overrides);
    if (doc.status == DocStatus::kConverted) {
      try {
        doc.text = store.LoadText(doc.id);
      } catch (const Error &) {
        ++missing_text;
      }
    }
    facts[i] = AnalyzeDocument(doc, tables, AnalyzeMode::kAllowMetadataOnly);
    doc.text.reset();
  });
  if (missing_text > 0) {
    Log(fmt::format("warning: {} converted documents have no text file", missing_text.load()));
  }

  std::string lines;
  for (const auto &f : facts) lines += FactsToJson(f).dump() + "\n";
  WriteFileAtomic(facts_path(), lines);
  StatsPartial partial = FoldPartitioned(facts, config_.jobs, config_.jobs);
  WriteFileAtomic(partial_path(), PartialToJson(partial).dump(2) + "\n");

  StageResult result;
  result.processed = facts.size();
  result.funnel = CurrentFunnel();
  Log(fmt::format("analyze: {} documents, {} with text", partial.docs_total,
                  partial.docs_text_analyzed));
  return result;
}

ReportBundle Pipeline::Report() {
  if (!fs::exists(partial_path())) throw StageOrderError("analyze");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(partial_path()));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kInvalidRecord, fmt::format("partial.json: {}", e.what()));
  }
  ReportBundle bundle = BuildReportBundle(PartialFromJson(j), config_.report);
  WriteBundle(bundle, reports_dir());
  Log(fmt::format("report: {} files in {}", bundle.size(), reports_dir().string()));
  return bundle;
}

ReportBundle Pipeline::All() {
  Crawl();
  Fetch();
  Convert();
  Analyze();
  return Report();
}

}  // namespace misl
