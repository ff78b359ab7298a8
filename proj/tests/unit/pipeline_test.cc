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

#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "misl/config.h"
#include "misl/error.h"
#include "support/support.h"

namespace misl {
namespace {

namespace fs = std::filesystem;

std::map<std::string, std::string> Snapshot(const fs::path &root) {
  std::map<std::string, std::string> files;
  for (const auto &e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).string()] = ReadFile(e.path());
  }
  return files;
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testkit::GeneratorOptions options;
    options.n = 30;
    options.seed = 5;
    corpus_ = testkit::GenerateCorpus(options);
    testkit::WriteCorpus(corpus_, dir_ / "fixture");
  }
  RunConfig Config(size_t jobs = 2) {
    return test::SyntheticRunConfig(dir_ / "fixture", dir_ / "root", jobs);
  }

  test::TempDir dir_;
  testkit::SyntheticCorpus corpus_;
};

TEST_F(PipelineTest, StagesBeforeCrawlNameTheMissingStage) {
  Pipeline p(Config());
  for (auto stage : {&Pipeline::Fetch, &Pipeline::Convert, &Pipeline::Analyze}) {
    try {
      (p.*stage)();
      ADD_FAILURE() << "expected an error";
    } catch (const Error &e) {
      EXPECT_EQ(e.code(), ErrorCode::kStageOrder);
      EXPECT_NE(std::string(e.what()).find("'crawl'"), std::string::npos);
    }
  }
}

TEST_F(PipelineTest, ReportBeforeAnalyzeNamesAnalyze) {
  Pipeline p(Config());
  p.Crawl();
  try {
    p.Report();
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kStageOrder);
    EXPECT_NE(std::string(e.what()).find("'analyze'"), std::string::npos);
  }
}

TEST_F(PipelineTest, EveryStageIsIdempotent) {
  Pipeline p(Config());
  p.All();
  auto before = Snapshot(dir_ / "root");
  EXPECT_EQ(p.Crawl().processed, 0u);
  EXPECT_EQ(p.Fetch().processed, 0u);
  EXPECT_EQ(p.Convert().processed, 0u);
  p.Analyze();
  p.Report();
  EXPECT_EQ(Snapshot(dir_ / "root"), before);
}

TEST_F(PipelineTest, MatchesOracleAndIgnoresJobCount) {
  Pipeline one(Config(1));
  ReportBundle bundle = one.All();
  EXPECT_EQ(bundle, testkit::OracleStats(corpus_.truth(), testkit::SyntheticRoster()));
  std::string facts = ReadFile(one.facts_path());
  fs::remove_all(dir_ / "root");
  Pipeline many(Config(8));
  EXPECT_EQ(many.All(), bundle);
  EXPECT_EQ(ReadFile(many.facts_path()), facts);
}

TEST_F(PipelineTest, TransientFailuresStayIndexedUntilRetried) {
  test::StubTransport transport;
  RunConfig config = Config();
  config.index_url = "";
  fs::create_directories(config.root);
  std::vector<IndexRecord> index;
  for (const auto &doc : corpus_.docs) index.push_back(doc.index);
  index[1].link = "mailto:nobody";
  WriteFileAtomic(config.root / "index.csv", WriteIndexCsv(index));
  // A 503 everywhere except the first document.
  for (const auto &doc : corpus_.docs) transport.Serve(doc.index.link, "", 503);
  transport.Serve(corpus_.docs[0].index.link, corpus_.docs[0].text);

  Pipeline p(config, &transport);
  p.Crawl();
  StageResult first = p.Fetch();
  EXPECT_EQ(first.funnel.fetched, 1u);
  EXPECT_EQ(first.funnel.dead_link, 1u);  // the malformed link
  EXPECT_EQ(first.transient, corpus_.docs.size() - 2);
  CorpusStore store(config.root);
  auto waiting = store.Get(DocId("doc-00003"), false);
  EXPECT_EQ(waiting->status, DocStatus::kIndexed);
  EXPECT_TRUE(waiting->failure_reason);

  for (const auto &doc : corpus_.docs) transport.Serve(doc.index.link, doc.text);
  StageResult second = p.Fetch();
  EXPECT_EQ(second.processed, corpus_.docs.size() - 2);
  EXPECT_EQ(second.funnel.pending, 0u);
}

TEST_F(PipelineTest, ConvertNeedsACommandOnlyWhenThereIsWork) {
  RunConfig config = Config();
  config.convert.command = "";
  Pipeline p(config);
  p.Crawl();
  p.Fetch();
  try {
    p.Convert();
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST_F(PipelineTest, UnconvertedDocumentsAreAnalyzedFromMetadata) {
  RunConfig config = Config();
  config.convert.command = "exit 1; cp {in} {out}";
  Pipeline p(config);
  p.All();
  Funnel f = p.CurrentFunnel();
  EXPECT_EQ(f.conversion_failed, corpus_.docs.size());
  EXPECT_DOUBLE_EQ(f.FailureRate(), 1.0);
  std::string by_year = ReadFile(p.reports_dir() / "cases_by_year.csv");
  EXPECT_NE(by_year, "year,cases\n");  // dates still count
  EXPECT_EQ(ReadFile(p.reports_dir() / "top_pld.csv"), "S#,Citation,# of Cases\n");
}

TEST_F(PipelineTest, DateOverridesApplyAtAnalysis) {
  RunConfig config = Config();
  config.overrides_path = dir_ / "overrides.csv";
  std::string csv = "docid,date\n";
  for (const auto &doc : corpus_.docs) csv += doc.truth.id.value() + ",1999-01-01\n";
  WriteFileAtomic(config.overrides_path, csv);
  Pipeline p(config);
  p.All();
  EXPECT_EQ(ReadFile(p.reports_dir() / "cases_by_year.csv"), "year,cases\n1999,30\n");
}

TEST(RunConfigTest, DefaultsAndValidation) {
  RunConfig c = RunConfig::Load(std::nullopt);
  EXPECT_EQ(c.report.split_year, 2009);
  EXPECT_EQ(c.report.top_k, 10u);
  EXPECT_EQ(c.report.full_bench_size, 17);
  auto code = [](const std::string &text) {
    try {
      RunConfig::FromConfig(KeyValueConfig::Parse(text));
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code("split_year = 1900\n"), ErrorCode::kConfig);
  EXPECT_EQ(code("top_k = 0\n"), ErrorCode::kConfig);
  EXPECT_EQ(code("jobs = 0\n"), ErrorCode::kConfig);
  EXPECT_EQ(code("colour = blue\n"), ErrorCode::kConfig);
  EXPECT_EQ(code("roster_path = /no/such/file.csv\n"), ErrorCode::kConfig);
}

TEST(RunConfigTest, FileThenEnvironment) {
  test::TempDir dir;
  WriteFileAtomic(dir / "misl.conf", "split_year = 2007\ntop_k = 4\nfetch.retries = 1\n");
  setenv("MISL_TOP_K", "6", 1);
  setenv("MISL_FETCH_RETRIES", "5", 1);
  RunConfig c = RunConfig::Load(dir / "misl.conf");
  unsetenv("MISL_TOP_K");
  unsetenv("MISL_FETCH_RETRIES");
  EXPECT_EQ(c.report.split_year, 2007);
  EXPECT_EQ(c.report.top_k, 6u);
  EXPECT_EQ(c.fetch.retries, 5);
}

TEST(FunnelTest, CountsFromStatuses) {
  Funnel f = Funnel::FromCounts({{DocStatus::kIndexed, 1},
                                 {DocStatus::kDeadLink, 12},
                                 {DocStatus::kFetched, 2},
                                 {DocStatus::kConverted, 371},
                                 {DocStatus::kConversionFailed, 30}});
  EXPECT_EQ(f.indexed, 416u);
  EXPECT_EQ(f.fetched, 403u);
  EXPECT_EQ(f.ToString(),
            "indexed=416 dead_link=12 fetched=403 converted=371 conversion_failed=30 "
            "pending=1");
  EXPECT_NEAR(f.FailureRate(), 42.0 / 416, 1e-12);
}

}  // namespace
}  // namespace misl
