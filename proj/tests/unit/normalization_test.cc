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

#include <gtest/gtest.h>

#include "misl/error.h"
#include "misl/testkit.h"
#include "misl/text.h"

namespace misl {
namespace {

TEST(NormalizeTypeKeyTest, DropsAbbreviationPeriods) {
  EXPECT_EQ(NormalizeTypeKey("c.p."), "cp");
  EXPECT_EQ(NormalizeTypeKey("C.M.A."), "cma");
  EXPECT_EQ(NormalizeTypeKey("Const.P."), "const p");
  EXPECT_EQ(NormalizeTypeKey("Crl.  M.A."), "crl ma");
}

TEST(ResolveCaseTypesTest, LongestMatchWins) {
  auto r = ResolveCaseTypes("Civil Petition for Leave to Appeal No. 4 of 2011",
                            LookupTable::Default());
  EXPECT_EQ(r.types, (std::set<CaseType>{CaseType::kCivilPetitionLeaveToAppeal}));
  EXPECT_TRUE(r.ambiguities.empty());
}

TEST(ResolveCaseTypesTest, CollectsEveryDesignator) {
  auto r = ResolveCaseTypes("H.R.C. No. 12 of 2010 in Suo Motu Case No. 3 of 2009",
                            LookupTable::Default());
  EXPECT_EQ(r.types, (std::set<CaseType>{CaseType::kSuoMoto, CaseType::kHumanRights}));
}

TEST(ResolveCaseTypesTest, AmbiguousDesignatorIsSurfacedNotGuessed) {
  auto r = ResolveCaseTypes("c.p. No. 45 of 2010", LookupTable::Default());
  EXPECT_TRUE(r.types.empty());
  ASSERT_EQ(r.ambiguities.size(), 1u);
  EXPECT_EQ(r.ambiguities[0].designator, "c.p.");
  EXPECT_EQ(r.ambiguities[0].candidates,
            (std::set<CaseType>{CaseType::kCivil, CaseType::kConstitution, CaseType::kCriminal}));
}

TEST(ResolveCaseTypesTest, NothingMatchedIsUnknown) {
  auto r = ResolveCaseTypes("In the matter of No. 4 of 2011", LookupTable::Default());
  EXPECT_EQ(r.types, (std::set<CaseType>{CaseType::kUnknown}));
}

TEST(LookupTableTest, LaterRowPinsAnAmbiguousKey) {
  LookupTable t = LookupTable::Parse(
      "abbreviation,candidates\nC.P.,Civil|Constitution\nc.p.,Constitution\n");
  auto r = ResolveCaseTypes("C.P. No. 1 of 2010", t);
  EXPECT_EQ(r.types, (std::set<CaseType>{CaseType::kConstitution}));
  EXPECT_TRUE(r.ambiguities.empty());
}

TEST(LookupTableTest, UnknownTypeNameIsRejected) {
  EXPECT_THROW(LookupTable::Parse("abbreviation,candidates\nX,Nonsense\n"), Error);
}

TEST(JudgeNameTest, StripsHonorificsAndDesignations) {
  EXPECT_EQ(NormalizeJudgeName("Mr. Justice Iftikhar Muhammad Chaudhry, CJ"),
            "iftikhar muhammad chaudhry");
  EXPECT_EQ(NormalizeJudgeName("  Justice   Gulzar  Ahmed "), "gulzar ahmed");
}

TEST(JudgeRosterTest, RejectsNamesTooCloseTogether) {
  std::vector<Judge> judges = {{"A", "Ali Raza Khan", {}}, {"B", "Ali Raza Khar", {}}};
  EXPECT_THROW(JudgeRoster{judges}, Error);
}

TEST(JudgeRosterTest, ShippedRosterSatisfiesSeparation) {
  EXPECT_GE(JudgeRoster::Default().size(), 10u);
  EXPECT_GE(testkit::SyntheticRoster().size(), 20u);
}

TEST(CanonicalizeJudgeTest, MatchesAliasesAndSmallEdits) {
  const JudgeRoster &roster = JudgeRoster::Default();
  EXPECT_EQ(CanonicalizeJudge("Mr. Justice Jawwad Sami Khawaja", roster).judge_id, "J02");
  JudgeMatch typo = CanonicalizeJudge("Mr. Justice Gulzar Ahmd", roster);
  EXPECT_TRUE(typo.matched());
  EXPECT_EQ(typo.name, "Gulzar Ahmed");
  JudgeMatch fresh = CanonicalizeJudge("Mr. Justice Javed Iqbal", roster);
  EXPECT_FALSE(fresh.matched());
  EXPECT_EQ(fresh.name, "javed iqbal");
}

// Every single-character edit of every roster name maps back to its judge:
// edits move a name by one, and other judges are at least five away.
TEST(CanonicalizeJudgeTest, EverySingleEditMapsBack) {
  const JudgeRoster &roster = testkit::SyntheticRoster();
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  int checked = 0;
  for (const auto &judge : roster.judges()) {
    std::string name = text::Lower(judge.canonical_name);
    for (size_t i = 0; i < name.size(); ++i) {
      if (name[i] == ' ') continue;
      std::string deleted = name.substr(0, i) + name.substr(i + 1);
      for (const std::string &variant :
           {deleted, name.substr(0, i) + 'q' + name.substr(i + 1),
            name.substr(0, i) + letters[i % 26] + name.substr(i)}) {
        JudgeMatch m = CanonicalizeJudge("Justice " + variant, roster);
        ASSERT_TRUE(m.matched()) << variant;
        ASSERT_EQ(m.judge_id, judge.id) << variant;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(ReleaseDateTest, AcceptsDocumentedFormats) {
  Date want{2014, 8, 14};
  for (const char *raw : {"14-08-2014", "14/08/2014", "14.08.2014", "14th August 2014",
                          "14th August, 2014", "August 14, 2014", "Aug 14, 2014", "2014-08-14"}) {
    EXPECT_EQ(ParseReleaseDate(raw), want) << raw;
  }
}

TEST(ReleaseDateTest, RejectsInvalidAndOutOfRange) {
  EXPECT_FALSE(ParseReleaseDate("31-02-2010"));
  EXPECT_FALSE(ParseReleaseDate("sometime in 2010"));
  EXPECT_FALSE(ParseReleaseDate("01-01-1900"));
  EXPECT_FALSE(ParseReleaseDate(""));
}

TEST(OverridesTest, ReplaceDatesAndValidate) {
  DateOverrides o = ParseOverrides("docid,date\ndoc-1,2011-03-04\n");
  MetadataRecord r;
  r.link = "x";
  MetadataRecord applied = ApplyOverrides(DocId("doc-1"), r, o);
  EXPECT_EQ(applied.release_date, (Date{2011, 3, 4}));
  EXPECT_EQ(ApplyOverrides(DocId("doc-2"), r, o), r);
  try {
    ParseOverrides("docid,date\ndoc-1,2011-02-30\n");
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidOverride);
  }
}

}  // namespace
}  // namespace misl
