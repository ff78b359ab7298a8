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

#include "misl/corpus_store.h"

#include <thread>

#include <gtest/gtest.h>

#include "misl/config.h"
#include "misl/error.h"
#include "support/support.h"

namespace misl {
namespace {

MetadataRecord Record(std::string link, std::string title = "Civil Appeal No. 1 of 2010") {
  MetadataRecord r;
  r.link = std::move(link);
  r.title = std::move(title);
  r.release_date = Date::FromYmd(2010, 5, 1);
  return r;
}

ErrorCode CodeOf(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

TEST(BaseIdTest, UsesLastSegmentWithoutExtension) {
  EXPECT_EQ(BaseIdForLink("https://x.org/files/Const.P._12_2010.pdf?dl=1#p2"),
            "const-p-_12_2010");
  EXPECT_EQ(BaseIdForLink("https://x.org/a/B%20C.PDF"), "b-20c");
  EXPECT_EQ(BaseIdForLink("file:///tmp/docs/doc-00001.txt"), "doc-00001");
}

TEST(CorpusStoreTest, AddIsIdempotentPerLink) {
  test::TempDir dir;
  CorpusStore store(dir.path());
  DocId a = store.AddRecord(Record("https://x.org/a.pdf"));
  DocId again = store.AddRecord(Record("https://x.org/a.pdf", "other title"));
  EXPECT_EQ(a, again);
  EXPECT_EQ(store.size(), 1u);
}

TEST(CorpusStoreTest, CollidingBasesGetSuffixes) {
  test::TempDir dir;
  CorpusStore store(dir.path());
  EXPECT_EQ(store.AddRecord(Record("https://x.org/1/a.pdf")).value(), "a");
  EXPECT_EQ(store.AddRecord(Record("https://x.org/2/a.pdf")).value(), "a-2");
  EXPECT_EQ(store.AddRecord(Record("https://x.org/3/A.html")).value(), "a-3");
}

TEST(CorpusStoreTest, RejectsEmptyLinkAndFutureDates) {
  test::TempDir dir;
  CorpusStore store(dir.path());
  EXPECT_EQ(CodeOf([&] { store.AddRecord(Record("")); }), ErrorCode::kInvalidRecord);
  MetadataRecord future = Record("https://x.org/f.pdf");
  future.release_date = Date::FromYmd(2099, 1, 1);
  EXPECT_EQ(CodeOf([&] { store.AddRecord(future); }), ErrorCode::kInvalidRecord);
}

TEST(CorpusStoreTest, StatusOnlyMovesForward) {
  test::TempDir dir;
  CorpusStore store(dir.path());
  DocId id = store.AddRecord(Record("https://x.org/a.pdf"));
  EXPECT_EQ(CodeOf([&] { store.AttachText(id, "x"); }), ErrorCode::kInvalidTransition);
  store.MarkFetched(id);
  EXPECT_EQ(CodeOf([&] { store.MarkDeadLink(id, "http_404"); }),
            ErrorCode::kInvalidTransition);
  store.AttachText(id, "body");
  EXPECT_EQ(CodeOf([&] { store.MarkConversionFailed(id, "x"); }),
            ErrorCode::kInvalidTransition);
  EXPECT_EQ(store.Get(id)->status, DocStatus::kConverted);
  EXPECT_EQ(store.LoadText(id), "body");
  EXPECT_EQ(CodeOf([&] { store.MarkFetched(DocId("nope")); }), ErrorCode::kNotFound);
}

TEST(CorpusStoreTest, ManifestRoundTripsThroughReopen) {
  test::TempDir dir;
  {
    CorpusStore store(dir.path());
    DocId a = store.AddRecord(Record("https://x.org/a.pdf"));
    MetadataRecord b = Record("https://x.org/b.pdf", "Title, with \"quotes\"");
    b.release_date.reset();
    b.description = "X v. Y";
    DocId bid = store.AddRecord(b);
    store.MarkFetched(a);
    store.AttachText(a, "text of a");
    store.MarkDeadLink(bid, "http_404");
  }
  CorpusStore reopened(dir.path());
  ASSERT_EQ(reopened.size(), 2u);
  auto b = reopened.Get(DocId("b"));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->status, DocStatus::kDeadLink);
  EXPECT_EQ(b->failure_reason, "http_404");
  EXPECT_EQ(b->meta.description, "X v. Y");
  EXPECT_FALSE(b->meta.release_date);
  EXPECT_EQ(reopened.Get(DocId("a"))->text, "text of a");
}

TEST(CorpusStoreTest, SavingTwiceIsByteIdentical) {
  test::TempDir dir;
  CorpusStore store(dir.path());
  store.AddRecord(Record("https://x.org/a.pdf"));
  store.Save();
  std::string first = ReadFile(store.manifest_path());
  store.Save();
  EXPECT_EQ(ReadFile(store.manifest_path()), first);
}

TEST(CorpusStoreTest, CorruptManifestNamesTheLine) {
  test::TempDir dir;
  {
    CorpusStore store(dir.path());
    store.AddRecord(Record("https://x.org/a.pdf"));
  }
  std::string manifest = ReadFile(dir / "manifest.jsonl");
  WriteFileAtomic(dir / "manifest.jsonl", manifest + "{not json\n");
  try {
    CorpusStore store(dir.path());
    FAIL() << "expected an error";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kManifestCorrupt);
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(CorpusStoreTest, ConcurrentMutationsAreSerialized) {
  test::TempDir dir;
  CorpusStore store(dir.path());
  std::vector<DocId> ids;
  for (int i = 0; i < 64; ++i) {
    ids.push_back(store.AddRecord(Record("https://x.org/d" + std::to_string(i) + ".pdf")));
  }
  {
    CorpusStore::Batch batch(&store);
    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
      threads.emplace_back([&, t] {
        for (size_t i = t; i < ids.size(); i += 4) {
          store.MarkFetched(ids[i]);
          store.AttachText(ids[i], "t");
        }
      });
    }
    for (auto &th : threads) th.join();
  }
  EXPECT_EQ(store.StatusCounts()[DocStatus::kConverted], 64u);
  EXPECT_EQ(CorpusStore(dir.path()).StatusCounts()[DocStatus::kConverted], 64u);
}

}  // namespace
}  // namespace misl
