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

// On-disk corpus of judgment documents.
//
// Layout under the corpus root:
//
//   manifest.jsonl     one JSON object per document, ascending id order, with
//                      exactly the fields id, link, title, date, description,
//                      status, failure_reason
//   text/<id>.txt      extracted UTF-8 text of converted documents
//   raw/<id>           fetched source bytes (owned by acquisition)
//
// Document status only moves forward:
//
//   Indexed -> Fetched -> Converted | ConversionFailed
//   Indexed -> DeadLink

#ifndef MISL_CORPUS_STORE_H_
#define MISL_CORPUS_STORE_H_

#include <compare>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "misl/date.h"

namespace misl {

class DocId {
 public:
  DocId() = default;
  // Throws Error(kInvalidArgument) for an empty value.
  explicit DocId(std::string value);

  const std::string &value() const { return value_; }
  bool empty() const { return value_.empty(); }

  auto operator<=>(const DocId &) const = default;

 private:
  std::string value_;
};

// The collision-free id for a link: the final path segment with query,
// fragment and extension removed, lower-cased, and every run of characters
// outside [a-z0-9_] replaced by '-'.
std::string BaseIdForLink(std::string_view link);

struct MetadataRecord {
  std::string link;
  std::string title;
  std::optional<Date> release_date;
  std::optional<std::string> description;

  bool operator==(const MetadataRecord &) const = default;
};

enum class DocStatus { kIndexed, kFetched, kConverted, kConversionFailed, kDeadLink };

std::string_view StatusName(DocStatus status);
std::optional<DocStatus> ParseStatus(std::string_view name);

struct Document {
  DocId id;
  MetadataRecord meta;
  std::optional<std::string> text;
  DocStatus status = DocStatus::kIndexed;
  // Reason code for ConversionFailed and DeadLink, or the last transient
  // failure of a document that is still waiting for a stage.
  std::optional<std::string> failure_reason;

  bool operator==(const Document &) const = default;
};

using StatusFilter = std::function<bool(DocStatus)>;
inline StatusFilter AnyStatus() {
  return [](DocStatus) { return true; };
}
inline StatusFilter StatusIs(DocStatus want) {
  return [want](DocStatus s) { return s == want; };
}

struct StoreOptions {
  DateRange valid_dates = DateRange::UpToToday();
  // Rewrite the manifest after every mutation outside a batch.
  bool autosave = true;
};

// All methods are safe to call concurrently. Mutations are serialized by an
// internal writer lock; readers share a reader lock.
class CorpusStore {
 public:
  // Opens the corpus at `root`, loading manifest.jsonl when present.
  // Throws Error(kManifestCorrupt) naming the offending line.
  explicit CorpusStore(std::filesystem::path root, StoreOptions options = {});
  ~CorpusStore();

  CorpusStore(const CorpusStore &) = delete;
  CorpusStore &operator=(const CorpusStore &) = delete;

  static bool HasManifest(const std::filesystem::path &root);

  // Returns the existing id when the link is already present. Throws
  // Error(kInvalidRecord) for an empty link or an out-of-range date.
  DocId AddRecord(const MetadataRecord &record);

  void MarkFetched(const DocId &id);
  void MarkDeadLink(const DocId &id, std::string reason);
  void AttachText(const DocId &id, std::string_view text);
  void MarkConversionFailed(const DocId &id, std::string reason);
  // Records a retryable failure without changing status.
  void NoteTransientFailure(const DocId &id, std::string reason);

  std::optional<Document> Get(const DocId &id, bool with_text = true) const;
  std::string LoadText(const DocId &id) const;
  std::vector<Document> Scan(const StatusFilter &filter = AnyStatus(),
                             bool with_text = true) const;
  std::vector<DocId> Ids(const StatusFilter &filter = AnyStatus()) const;

  size_t size() const;
  std::map<DocStatus, size_t> StatusCounts() const;

  void Save();

  // Defers manifest writes until the outermost batch ends.
  class Batch {
   public:
    explicit Batch(CorpusStore *store);
    ~Batch();
    Batch(const Batch &) = delete;
    Batch &operator=(const Batch &) = delete;

   private:
    CorpusStore *store_;
  };

  const std::filesystem::path &root() const { return root_; }
  std::filesystem::path manifest_path() const;
  std::filesystem::path text_path(const DocId &id) const;
  std::filesystem::path raw_path(const DocId &id) const;

 private:
  struct Entry {
    MetadataRecord meta;
    DocStatus status = DocStatus::kIndexed;
    std::optional<std::string> failure_reason;
  };

  void Load();
  void SaveLocked();
  void MutatedLocked();
  Entry &FindLocked(const DocId &id);
  void Transition(const DocId &id, DocStatus from, DocStatus to,
                  std::optional<std::string> reason);
  Document ToDocument(const DocId &id, const Entry &entry, bool with_text) const;

  std::filesystem::path root_;
  StoreOptions options_;
  mutable std::shared_mutex mu_;
  std::map<DocId, Entry> docs_;
  std::map<std::string, DocId> by_link_;
  int batch_depth_ = 0;
  bool dirty_ = false;
};

}  // namespace misl

#endif  // MISL_CORPUS_STORE_H_
