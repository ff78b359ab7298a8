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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "misl/error.h"
#include "misl/testkit.h"
#include "misl/text.h"
#include "support/support.h"

namespace misl {
namespace {

std::vector<DocFacts> GeneratedFacts(size_t n, uint64_t seed = 42) {
  testkit::GeneratorOptions options;
  options.n = n;
  options.seed = seed;
  options.noise.date_missing_rate = 0.1;
  return test::AnalyzeSynthetic(testkit::GenerateCorpus(options), *options.roster);
}

TEST(RatioTest, FixedRoundsHalfUp) {
  EXPECT_EQ((Ratio{81, 10}).Fixed(1), "8.1");
  EXPECT_EQ((Ratio{1, 20}).Fixed(1), "0.1");   // 0.05
  EXPECT_EQ((Ratio{1, 40}).Fixed(2), "0.03");  // 0.025
  EXPECT_EQ((Ratio{2, 3}).Fixed(0), "1");
  EXPECT_EQ((Ratio{1000, 8}).Fixed(1), "125.0");
  EXPECT_EQ((Ratio{12, 8}).Exact(), "3/2");
}

TEST(FactsToPartialTest, CountsPresenceOncePerDocument) {
  DocFacts f;
  f.id = DocId("d");
  f.year = 2010;
  f.types = {CaseType::kSuoMoto, CaseType::kHumanRights};
  f.suo_moto = true;
  f.text_analyzed = true;
  f.articles[*ArticleRef::Parse("184(3)")] = 3;
  f.scmr[ScmrCitation{1998, 1}] = 2;
  f.bench = {JudgeMatch{JudgeMatch::Kind::kMatched, "J01", "A B"},
             JudgeMatch{JudgeMatch::Kind::kNew, "", "c d"}};
  StatsPartial p = FactsToPartial(f);
  EXPECT_EQ(p.docs_total, 1);
  EXPECT_EQ(p.by_year.at(2010), 1);
  EXPECT_EQ(p.suo_by_year.at(2010), 1);
  EXPECT_EQ(p.by_article.at(*ArticleRef::Parse("184(3)")), 1);
  EXPECT_EQ(p.article_occurrences.at(*ArticleRef::Parse("184(3)")), 3);
  EXPECT_EQ(p.scmr_occurrences.at(ScmrCitation{1998, 1}), 2);
  EXPECT_EQ(p.bench_sizes.at(2), 1);
  EXPECT_EQ(p.by_judge.size(), 2u);
  EXPECT_EQ(p.by_jurisdiction.at("Unknown"), 1);
}

TEST(FactsToPartialTest, NoBenchContributesNoSize) {
  DocFacts f;
  f.id = DocId("d");
  f.text_analyzed = true;
  EXPECT_TRUE(FactsToPartial(f).bench_sizes.empty());
}

// Fold against a direct recount of the facts.
TEST(FoldTest, MatchesDirectCounting) {
  auto facts = GeneratedFacts(300);
  StatsPartial p = Fold(facts);
  std::map<int, int64_t> years;
  std::map<std::string, int64_t> pld;
  int64_t undated = 0;
  for (const auto &f : facts) {
    if (f.year) {
      ++years[*f.year];
    } else {
      ++undated;
    }
    for (const auto &[c, n] : f.pld) ++pld[c.Render()];
  }
  EXPECT_EQ(p.docs_total, 300);
  EXPECT_EQ(p.docs_total - p.docs_dated, undated);
  EXPECT_EQ(p.by_year, years);
  std::map<std::string, int64_t> got_pld;
  for (const auto &[c, n] : p.by_pld) got_pld[c.Render()] = n;
  EXPECT_EQ(got_pld, pld);
}

TEST(FoldTest, PartitionCountDoesNotMatter) {
  auto facts = GeneratedFacts(257, 9);
  StatsPartial whole = Fold(facts);
  for (size_t k : {1, 2, 3, 7, 64, 257, 400}) {
    EXPECT_EQ(FoldPartitioned(facts, k, 4), whole) << k;
  }
}

TEST(MergeTest, LawsHoldOnGeneratedPartials) {
  auto facts = GeneratedFacts(120, 3);
  testkit::Rng rng(17);
  auto random_slice = [&] {
    size_t a = rng.Below(facts.size()), b = rng.Below(facts.size());
    if (a > b) std::swap(a, b);
    return Fold(std::span<const DocFacts>(facts).subspan(a, b - a));
  };
  for (int i = 0; i < 200; ++i) {
    StatsPartial a = random_slice(), b = random_slice(), c = random_slice();
    ASSERT_EQ(Merge(Merge(a, b), c), Merge(a, Merge(b, c)));
    ASSERT_EQ(Merge(a, b), Merge(b, a));
    ASSERT_EQ(Merge(a, {}), a);
  }
}

TEST(PartialJsonTest, RoundTrips) {
  StatsPartial p = Fold(GeneratedFacts(80));
  EXPECT_EQ(PartialFromJson(nlohmann::json::parse(PartialToJson(p).dump())), p);
}

StatsPartial Counts(std::map<std::string, int64_t> judges) {
  StatsPartial p;
  p.by_judge = std::move(judges);
  return p;
}

TEST(RankingTest, CountDescendingThenCaseInsensitiveKey) {
  StatsPartial p = Counts({{"beta", 2}, {"Alpha", 2}, {"gamma", 5}, {"delta", 1}});
  auto top = TopK(p, Dimension::kJudge, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0], (RankedEntry{"gamma", 5}));
  EXPECT_EQ(top[1], (RankedEntry{"Alpha", 2}));
  EXPECT_EQ(top[2], (RankedEntry{"beta", 2}));
  EXPECT_EQ(RankAll(p, Dimension::kJudge).size(), 4u);
  EXPECT_EQ(TopK(p, Dimension::kJudge, 10).size(), 4u);
  EXPECT_THROW(TopK(p, Dimension::kJudge, 0), Error);
}

// TopK is a prefix of RankAll, and RankAll is a permutation of the keys.
TEST(RankingTest, TopKIsPrefixOfFullRanking) {
  StatsPartial p = Fold(GeneratedFacts(200));
  for (Dimension d : {Dimension::kType, Dimension::kJudge, Dimension::kArticle,
                      Dimension::kPld, Dimension::kScmr, Dimension::kJurisdiction}) {
    auto all = RankAll(p, d);
    for (size_t k : {1, 5, 10}) {
      auto top = TopK(p, d, k);
      ASSERT_EQ(top.size(), std::min(k, all.size()));
      EXPECT_TRUE(std::equal(top.begin(), top.end(), all.begin()));
    }
    for (size_t i = 1; i < all.size(); ++i) EXPECT_GE(all[i - 1].count, all[i].count);
  }
}

TEST(DimensionTest, ParsesNames) {
  EXPECT_EQ(ParseDimension("judge"), Dimension::kJudge);
  EXPECT_EQ(DimensionName(Dimension::kScmr), "scmr");
  try {
    ParseDimension("colour");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDimension);
  }
}

TEST(YearSeriesTest, FillsGapsAndAlignsSuoMoto) {
  StatsPartial p;
  p.by_year = {{2005, 3}, {2008, 1}};
  p.suo_by_year = {{2008, 1}};
  p.docs_total = 6;
  p.docs_dated = 4;
  p.suo_undated = 1;
  YearSeries cases = CasesByYear(p);
  EXPECT_EQ(cases.points, (std::vector<std::pair<int, int64_t>>{
                              {2005, 3}, {2006, 0}, {2007, 0}, {2008, 1}}));
  EXPECT_EQ(cases.undated, 2);
  YearSeries suo = SuoMotoByYear(p);
  EXPECT_EQ(suo.points.size(), 4u);
  EXPECT_EQ(suo.points.front(), (std::pair<int, int64_t>{2005, 0}));
  EXPECT_EQ(suo.undated, 1);
}

TEST(SuoMotoShareTest, SplitsAtTheYear) {
  StatsPartial p;
  p.by_year = {{2007, 37}, {2008, 37}, {2009, 50}, {2012, 27}};
  p.suo_by_year = {{2008, 6}, {2009, 10}, {2012, 2}};
  SuoMotoShare s = ComputeSuoMotoShare(p, 2009);
  EXPECT_EQ(s.pre_total, 74);
  EXPECT_EQ(s.pre_suo, 6);
  EXPECT_EQ(s.pre->Fixed(1), "8.1");
  EXPECT_EQ(s.post_total, 77);
  EXPECT_EQ(s.post_suo, 12);
  EXPECT_EQ(s.post->Fixed(1), "15.6");
  EXPECT_FALSE(ComputeSuoMotoShare(p, 1990).pre);
}

TEST(BenchStatsTest, MeanMaxAndFullBench) {
  StatsPartial p;
  p.bench_sizes = {{2, 3}, {3, 1}, {17, 2}};
  BenchStats s = ComputeBenchStats(p, 17);
  EXPECT_EQ(s.benches, 6);
  EXPECT_EQ(s.mean->Exact(), "43/6");
  EXPECT_EQ(s.max, 17);
  EXPECT_EQ(s.full_bench_count, 2);
  EXPECT_FALSE(ComputeBenchStats(StatsPartial{}).mean);
}

}  // namespace
}  // namespace misl
