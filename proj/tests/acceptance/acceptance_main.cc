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

// Acceptance runner. Prints one line per criterion:
//
//   PASS 1 extraction exactness: ...
//   FAIL 5 oracle equivalence: ...
//
// and exits nonzero when any criterion fails. Criterion 7 needs a real
// corpus (MISL_REAL_CORPUS=<analyzed corpus root>) and reports SKIP without
// one.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/analytics.h"
#include "misl/config.h"
#include "misl/csv.h"
#include "misl/error.h"
#include "misl/pipeline.h"
#include "misl/testkit.h"
#include "misl/text.h"
#include "support/support.h"

namespace misl {
namespace {

namespace fs = std::filesystem;
using testkit::GeneratorOptions;
using testkit::Rng;
using testkit::SyntheticCorpus;

struct Outcome {
  enum class Status { kPass, kFail, kSkip } status;
  std::string detail;
};

Outcome Fail(std::string detail) { return {Outcome::Status::kFail, std::move(detail)}; }
Outcome Check(bool ok, std::string detail) {
  return {ok ? Outcome::Status::kPass : Outcome::Status::kFail, std::move(detail)};
}

// Item-level precision and recall.
struct Score {
  int64_t true_pos = 0, predicted = 0, actual = 0;

  template <typename T>
  void Add(const std::set<T> &got, const std::set<T> &want) {
    predicted += static_cast<int64_t>(got.size());
    actual += static_cast<int64_t>(want.size());
    for (const auto &x : got) true_pos += want.count(x);
  }
  double precision() const { return predicted == 0 ? 1.0 : double(true_pos) / predicted; }
  double recall() const { return actual == 0 ? 1.0 : double(true_pos) / actual; }
  bool exact() const { return true_pos == predicted && true_pos == actual; }
  std::string ToString() const {
    return fmt::format("P={:.4f} R={:.4f} (n={})", precision(), recall(), actual);
  }
};

template <typename K>
std::set<K> Keys(const std::map<K, int> &m) {
  std::set<K> out;
  for (const auto &[k, v] : m) out.insert(k);
  return out;
}

std::set<std::string> Kinds(const Jurisdiction &j) {
  std::set<std::string> out;
  for (auto k : {JurisdictionKind::kOriginal, JurisdictionKind::kAppellate,
                 JurisdictionKind::kReview, JurisdictionKind::kAdvisory,
                 JurisdictionKind::kContempt}) {
    if (j.Contains(k)) out.insert(std::string(JurisdictionKindName(k)));
  }
  return out;
}

std::vector<DocFacts> ReadFacts(const fs::path &path) {
  std::vector<DocFacts> out;
  std::string data = ReadFile(path);
  for (std::string_view line : text::Lines(data)) {
    if (!text::Trim(line).empty()) out.push_back(FactsFromJson(nlohmann::json::parse(line)));
  }
  return out;
}

// First differing file between two bundles, or empty when equal.
std::string BundleDiff(const ReportBundle &got, const ReportBundle &want) {
  for (const auto &[name, bytes] : want) {
    auto it = got.find(name);
    if (it == got.end()) return name + " missing";
    if (it->second != bytes) return name + " differs";
  }
  if (got.size() != want.size()) return "extra files";
  return "";
}

// Generates a corpus and runs the whole pipeline over it through file://
// URLs with the identity converter.
struct SyntheticRun {
  test::TempDir dir;
  SyntheticCorpus corpus;
  std::unique_ptr<Pipeline> pipeline;
  ReportBundle bundle;

  explicit SyntheticRun(const GeneratorOptions &options, size_t jobs = 4) {
    corpus = testkit::GenerateCorpus(options);
    testkit::WriteCorpus(corpus, dir / "fixture");
    pipeline = std::make_unique<Pipeline>(
        test::SyntheticRunConfig(dir / "fixture", dir / "root", jobs));
    bundle = pipeline->All();
  }
};

// --- Criteria ---------------------------------------------------------------------

Outcome ExtractionExactness() {
  auto start = std::chrono::steady_clock::now();
  GeneratorOptions options;
  options.seed = 42;
  options.n = 500;
  SyntheticRun run(options);
  std::vector<DocFacts> facts = ReadFacts(run.pipeline->facts_path());
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  testkit::GroundTruth truth = run.corpus.truth();
  if (facts.size() != truth.size()) {
    return Fail(fmt::format("{} facts for {} documents", facts.size(), truth.size()));
  }
  Score pld, scmr, articles, jurisdiction, bench, suo;
  int bench_lists_exact = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const DocFacts &f = facts[i];
    const testkit::TruthEntry &t = truth[i];
    if (f.id != t.id) return Fail("document order differs at " + t.id.value());
    pld.Add(Keys(f.pld), t.pld);
    scmr.Add(Keys(f.scmr), t.scmr);
    articles.Add(Keys(f.articles), t.articles);
    jurisdiction.Add(Kinds(f.jurisdiction), Kinds(t.jurisdiction));
    std::vector<std::string> got_bench;
    for (const auto &m : f.bench) got_bench.push_back(m.matched() ? m.judge_id : "?" + m.name);
    bench.Add(std::set<std::string>(got_bench.begin(), got_bench.end()),
              std::set<std::string>(t.bench.begin(), t.bench.end()));
    bench_lists_exact += got_bench == t.bench;
    suo.Add(f.suo_moto ? std::set<std::string>{t.id.value()} : std::set<std::string>{},
            t.suo_moto ? std::set<std::string>{t.id.value()} : std::set<std::string>{});
  }
  bool ok = pld.exact() && scmr.exact() && articles.exact() && jurisdiction.exact() &&
            bench.exact() && suo.exact() && bench_lists_exact == static_cast<int>(truth.size()) &&
            seconds < 5.0;
  return Check(ok, fmt::format("pld {} scmr {} articles {} jurisdiction {} bench {} "
                               "(ordered lists {}/{}) suo_moto {}; {:.2f} s end to end",
                               pld.ToString(), scmr.ToString(), articles.ToString(),
                               jurisdiction.ToString(), bench.ToString(), bench_lists_exact,
                               truth.size(), suo.ToString(), seconds));
}

Outcome CitationRoundTrip() {
  const GrammarConfig &g = GrammarConfig::Default();
  std::vector<std::string> courts(g.court_codes.begin(), g.court_codes.end());
  Rng rng(20260101);
  int failures = 0;
  const int kEach = 10000;
  for (int i = 0; i < kEach; ++i) {
    PldCitation pld{rng.Between(1947, 2025), rng.Pick(courts), rng.Between(1, 9999)};
    ScmrCitation scmr{rng.Between(1947, 2025), rng.Between(1, 9999)};
    std::string sentence = fmt::format("As held in {}, and later in {}, the appeal fails.",
                                       pld.Render(), scmr.Render());
    auto p = ExtractPld(sentence);
    auto s = ExtractScmr(sentence);
    bool ok = p.size() == 1 && p[0].citation == pld && p[0].known_court && s.size() == 1 &&
              s[0] == scmr && ParsePldCitation(pld.Render()) == pld &&
              ParseScmrCitation(scmr.Render()) == scmr;
    failures += !ok;
  }
  return Check(failures == 0,
               fmt::format("{} PLD and {} SCMR citations, {} failures", kEach, kEach, failures));
}

Outcome JudgeCanonicalization() {
  GeneratorOptions options;
  options.seed = 42;
  options.n = 500;
  options.noise.judge_typo_rate = 0.05;
  SyntheticCorpus corpus = testkit::GenerateCorpus(options);
  const JudgeRoster &roster = *options.roster;
  int typos = 0, correct = 0, mentions = 0;
  for (const auto &doc : corpus.docs) {
    mentions += doc.truth.judge_mentions;
    for (const auto &typo : doc.truth.typos) {
      ++typos;
      JudgeMatch m = CanonicalizeJudge(typo.mention, roster);
      correct += m.matched() && m.judge_id == typo.judge_id;
    }
  }
  // The same mentions must also survive the full extraction path.
  int bench_exact = 0;
  std::vector<DocFacts> facts = test::AnalyzeSynthetic(corpus, roster);
  for (size_t i = 0; i < facts.size(); ++i) {
    std::vector<std::string> ids;
    for (const auto &m : facts[i].bench) ids.push_back(m.matched() ? m.judge_id : "");
    bench_exact += ids == corpus.docs[i].truth.bench;
  }
  double rate = mentions == 0 ? 0 : double(typos) / mentions;
  bool ok = typos > 0 && correct == typos && bench_exact == static_cast<int>(facts.size());
  return Check(ok, fmt::format("{}/{} corrupted mentions mapped correctly (observed typo rate "
                               "{:.4f} over {} mentions); {}/{} benches exact; roster "
                               "separation >= {}",
                               correct, typos, rate, mentions, bench_exact, facts.size(),
                               JudgeRoster::kMinSeparation));
}

// A random partial with small key spaces so that merges collide often.
StatsPartial RandomPartial(Rng &rng) {
  StatsPartial p;
  auto count = [&] { return static_cast<int64_t>(rng.Between(1, 9)); };
  int n = rng.Between(0, 6);
  p.docs_total = rng.Between(0, 50);
  p.docs_dated = rng.Between(0, 50);
  p.docs_text_analyzed = rng.Between(0, 50);
  p.docs_ambiguous = rng.Between(0, 5);
  p.suo_undated = rng.Between(0, 5);
  for (int i = 0; i < n; ++i) {
    int year = rng.Between(2000, 2014);
    p.by_year[year] += count();
    if (rng.Chance(0.5)) p.suo_by_year[year] += count();
    p.by_type[kAllCaseTypes[rng.Below(std::size(kAllCaseTypes))]] += count();
    p.by_jurisdiction[rng.Pick(std::vector<std::string>{"Original", "Appellate", "Unknown",
                                                        "Original/Review"})] += count();
    p.by_judge[fmt::format("judge {}", rng.Between(1, 8))] += count();
    ArticleRef ref;
    ref.article = rng.Between(1, 20);
    if (rng.Chance(0.3)) ref.clause = rng.Between(1, 3);
    p.by_article[ref] += count();
    p.article_occurrences[ref] += count();
    PldCitation pld{rng.Between(1990, 1995), "SC", rng.Between(1, 5)};
    p.by_pld[pld] += count();
    p.pld_occurrences[pld] += count();
    ScmrCitation scmr{rng.Between(1990, 1995), rng.Between(1, 5)};
    p.by_scmr[scmr] += count();
    p.scmr_occurrences[scmr] += count();
    p.bench_sizes[rng.Between(1, 17)] += count();
  }
  return p;
}

Outcome MonoidAndPartitions() {
  Rng rng(7);
  const int kCases = 2000;
  int violations = 0;
  for (int i = 0; i < kCases; ++i) {
    StatsPartial a = RandomPartial(rng), b = RandomPartial(rng), c = RandomPartial(rng);
    violations += !(Merge(Merge(a, b), c) == Merge(a, Merge(b, c)));
    violations += !(Merge(a, b) == Merge(b, a));
    violations += !(Merge(a, StatsPartial{}) == a);
    violations += !(Merge(StatsPartial{}, a) == a);
  }

  GeneratorOptions options;
  options.seed = 42;
  options.n = 500;
  SyntheticCorpus corpus = testkit::GenerateCorpus(options);
  std::vector<DocFacts> facts = test::AnalyzeSynthetic(corpus, *options.roster);
  ReportBundle reference;
  std::vector<size_t> differing;
  for (size_t k : {1, 2, 7, 64}) {
    ReportBundle bundle = BuildReportBundle(FoldPartitioned(facts, k, std::min<size_t>(k, 8)));
    if (k == 1) reference = bundle;
    if (bundle != reference) differing.push_back(k);
  }
  return Check(violations == 0 && differing.empty(),
               fmt::format("{} random triples, {} law violations; bundles for k in "
                           "{{1, 2, 7, 64}} {}",
                           kCases, violations,
                           differing.empty() ? "identical" : "differ"));
}

Outcome OracleEquivalence() {
  int runs = 0;
  std::vector<std::string> failures;
  for (uint64_t seed : {1, 2, 3}) {
    for (size_t n : {10, 100, 500}) {
      GeneratorOptions options;
      options.seed = seed;
      options.n = n;
      SyntheticRun run(options);
      ReportBundle oracle = testkit::OracleStats(run.corpus.truth(), *options.roster);
      ReportBundle written = ReadBundle(run.pipeline->reports_dir());
      std::string diff = BundleDiff(written, oracle);
      if (!diff.empty()) failures.push_back(fmt::format("seed {} n {}: {}", seed, n, diff));
      ++runs;
    }
  }
  return Check(failures.empty(), failures.empty()
                                     ? fmt::format("{} runs byte-identical to the oracle", runs)
                                     : text::Join(failures, "; "));
}

Outcome FunnelAccounting() {
  const size_t kRecords = 415, kDead = 12, kBadConversions = 32;
  test::TempDir dir;
  GeneratorOptions options;
  options.seed = 3;
  options.n = kRecords;
  options.link_base = "https://stub.example.org/docs/";
  SyntheticCorpus corpus = testkit::GenerateCorpus(options);

  // Pick the dead links and the unconvertible documents up front.
  Rng rng(415);
  std::vector<size_t> order(kRecords);
  for (size_t i = 0; i < kRecords; ++i) order[i] = i;
  for (size_t i = kRecords - 1; i > 0; --i) std::swap(order[i], order[rng.Below(i + 1)]);
  test::StubTransport transport;
  std::vector<IndexRecord> index;
  for (size_t r = 0; r < kRecords; ++r) {
    size_t i = order[r];
    const auto &doc = corpus.docs[i];
    index.push_back(doc.index);
    if (r < kDead) continue;  // never served: 404
    bool bad = r < kDead + kBadConversions;
    transport.Serve(doc.index.link, (bad ? "UNREADABLE-SCAN\n" : "") + doc.text);
  }
  fs::create_directories(dir / "root");
  WriteFileAtomic(dir / "root" / "index.csv", WriteIndexCsv(index));

  RunConfig config;
  config.root = dir / "root";
  config.politeness = std::chrono::milliseconds(0);
  config.fetch.backoff = std::chrono::milliseconds(0);
  config.convert.command =
      "if grep -q UNREADABLE-SCAN {in}; then echo unreadable >&2; exit 3; fi; cp {in} {out}";
  config.jobs = 8;
  std::ostringstream log;
  Pipeline pipeline(config, &transport, &log);
  pipeline.Crawl();
  Funnel after_fetch = pipeline.Fetch().funnel;
  Funnel after_convert = pipeline.Convert().funnel;
  size_t rerun = pipeline.Convert().processed;

  // Count statuses straight from the manifest file.
  std::map<std::string, size_t> on_disk;
  std::string manifest = ReadFile(dir / "root" / "manifest.jsonl");
  for (std::string_view line : text::Lines(manifest)) {
    if (text::Trim(line).empty()) continue;
    ++on_disk[nlohmann::json::parse(line).at("status").get<std::string>()];
  }
  size_t fetched_ever = on_disk["fetched"] + on_disk["converted"] + on_disk["conversion_failed"];
  Funnel counted = Funnel::FromCounts(CorpusStore(config.root).StatusCounts());
  bool ok = after_fetch.indexed == kRecords && after_fetch.dead_link == kDead &&
            after_fetch.fetched == kRecords - kDead && fetched_ever == 403 &&
            on_disk["converted"] == 371 && on_disk["conversion_failed"] == kBadConversions &&
            on_disk["dead_link"] == kDead && after_convert.converted == 371 &&
            after_convert.ToString() == counted.ToString() && rerun == 0;
  return Check(ok, fmt::format("after fetch: {}; after convert: {}; manifest: fetched {} "
                               "converted {}; convert rerun processed {}",
                               after_fetch.ToString(), after_convert.ToString(), fetched_ever,
                               on_disk["converted"], rerun));
}

Outcome RealCorpus() {
  const char *root = std::getenv("MISL_REAL_CORPUS");
  if (root == nullptr || *root == '\0') {
    return {Outcome::Status::kSkip, "set MISL_REAL_CORPUS to an analyzed corpus root"};
  }
  fs::path partial_path = fs::path(root) / "partial.json";
  if (!fs::exists(partial_path)) return Fail(partial_path.string() + " not found");
  StatsPartial p = PartialFromJson(nlohmann::json::parse(ReadFile(partial_path)));
  SuoMotoShare share = ComputeSuoMotoShare(p, 2009);
  BenchStats bench = ComputeBenchStats(p, 17);
  auto near = [](const std::optional<Ratio> &r, double want) {
    return r && std::abs(std::stod(r->Fixed(1)) - want) <= 0.1 + 1e-9;
  };
  auto type_count = [&](CaseType t) {
    auto it = p.by_type.find(t);
    return it == p.by_type.end() ? int64_t{0} : it->second;
  };
  bool ok = near(share.pre, 8.1) && near(share.post, 15.6) &&
            type_count(CaseType::kConstitution) == 173 && type_count(CaseType::kSuoMoto) == 62 &&
            bench.max == 17 && bench.full_bench_count == 10 && p.by_pld.size() == 363 &&
            p.by_scmr.size() == 910;
  return Check(ok, fmt::format("suo moto {}% / {}%, Constitution {}, Suo Moto {}, bench max {} "
                               "full {}, unique PLD {} SCMR {}",
                               share.pre ? share.pre->Fixed(1) : "-",
                               share.post ? share.post->Fixed(1) : "-",
                               type_count(CaseType::kConstitution),
                               type_count(CaseType::kSuoMoto), bench.max.value_or(0),
                               bench.full_bench_count, p.by_pld.size(), p.by_scmr.size()));
}

Outcome MicroFixture() {
  fs::path fixture = test::FixtureDir() / "micro";
  test::TempDir dir;
  fs::path root = dir / "root";
  fs::create_directories(root);

  // Point the relative links at the checked-in documents.
  std::vector<IndexRecord> index = ReadIndexCsv(ReadFile(fixture / "index.csv"));
  for (auto &rec : index) rec.link = "file://" + fs::absolute(fixture / rec.link).string();
  WriteFileAtomic(root / "index.csv", WriteIndexCsv(index));

  RunConfig config = RunConfig::Load(fixture / "misl.conf");
  config.root = root;
  Pipeline pipeline(config);
  pipeline.All();

  std::vector<std::string> mismatches;
  int compared = 0;
  for (const auto &entry : fs::directory_iterator(fixture / "expected")) {
    std::string name = entry.path().filename().string();
    std::string got;
    if (name == "ambiguities.csv") {
      csv::Table t{{"id", "designator", "candidates"}, {}};
      for (const auto &f : ReadFacts(pipeline.facts_path())) {
        for (const auto &a : f.ambiguities) {
          std::vector<std::string> names;
          for (CaseType c : a.candidates) names.emplace_back(CaseTypeName(c));
          t.rows.push_back({f.id.value(), a.designator, text::Join(names, "|")});
        }
      }
      got = csv::Write(t);
    } else {
      got = ReadFile(pipeline.reports_dir() / name);
    }
    ++compared;
    if (got != ReadFile(entry.path())) mismatches.push_back(name);
  }
  std::sort(mismatches.begin(), mismatches.end());
  return Check(mismatches.empty() && compared == 11,
               mismatches.empty()
                   ? fmt::format("{} hand-computed tables match", compared)
                   : "mismatched: " + text::Join(mismatches, ", "));
}

}  // namespace
}  // namespace misl

int main() {
  using misl::Outcome;
  const std::pair<const char *, std::function<Outcome()>> kCriteria[] = {
      {"extraction exactness", misl::ExtractionExactness},
      {"citation round-trip", misl::CitationRoundTrip},
      {"judge canonicalization under noise", misl::JudgeCanonicalization},
      {"monoid and partition invariance", misl::MonoidAndPartitions},
      {"oracle equivalence", misl::OracleEquivalence},
      {"funnel accounting", misl::FunnelAccounting},
      {"reference figures on a real corpus", misl::RealCorpus},
      {"hand-pinned micro fixture", misl::MicroFixture},
  };
  int failed = 0;
  int number = 0;
  for (const auto &[name, run] : kCriteria) {
    ++number;
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception &e) {
      outcome = misl::Fail(std::string("exception: ") + e.what());
    }
    const char *tag = outcome.status == Outcome::Status::kPass   ? "PASS"
                      : outcome.status == Outcome::Status::kSkip ? "SKIP"
                                                                 : "FAIL";
    failed += outcome.status == Outcome::Status::kFail;
    std::cout << fmt::format("{} {} {}: {}", tag, number, name, outcome.detail) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
