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

#include <mutex>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "misl/config.h"
#include "misl/error.h"
#include "misl/text.h"

namespace misl {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

DocId::DocId(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty DocId");
}

std::string BaseIdForLink(std::string_view link) {
  std::string_view path = link;
  if (auto pos = path.find_first_of("?#"); pos != std::string_view::npos) {
    path = path.substr(0, pos);
  }
  while (!path.empty() && path.back() == '/') path.remove_suffix(1);
  if (auto pos = path.rfind('/'); pos != std::string_view::npos) {
    path = path.substr(pos + 1);
  }
  if (auto dot = path.rfind('.'); dot != std::string_view::npos && dot > 0) {
    path = path.substr(0, dot);
  }
  std::string id;
  bool pending_dash = false;
  for (char c : path) {
    c = text::ToLower(c);
    if (text::IsAsciiAlnum(c) || c == '_') {
      if (pending_dash && !id.empty()) id.push_back('-');
      pending_dash = false;
      id.push_back(c);
    } else {
      pending_dash = true;
    }
  }
  return id.empty() ? "doc" : id;
}

std::string_view StatusName(DocStatus status) {
  switch (status) {
    case DocStatus::kIndexed: return "indexed";
    case DocStatus::kFetched: return "fetched";
    case DocStatus::kConverted: return "converted";
    case DocStatus::kConversionFailed: return "conversion_failed";
    case DocStatus::kDeadLink: return "dead_link";
  }
  return "indexed";
}

std::optional<DocStatus> ParseStatus(std::string_view name) {
  for (DocStatus s : {DocStatus::kIndexed, DocStatus::kFetched, DocStatus::kConverted,
                      DocStatus::kConversionFailed, DocStatus::kDeadLink}) {
    if (StatusName(s) == name) return s;
  }
  return std::nullopt;
}

CorpusStore::CorpusStore(fs::path root, StoreOptions options)
    : root_(std::move(root)), options_(options) {
  Load();
}

CorpusStore::~CorpusStore() {
  try {
    std::unique_lock lock(mu_);
    if (dirty_) SaveLocked();
  } catch (...) {
    // Destructors must not throw; callers wanting errors call Save().
  }
}

bool CorpusStore::HasManifest(const fs::path &root) {
  return fs::exists(root / "manifest.jsonl");
}

fs::path CorpusStore::manifest_path() const { return root_ / "manifest.jsonl"; }

fs::path CorpusStore::text_path(const DocId &id) const {
  return root_ / "text" / (id.value() + ".txt");
}

fs::path CorpusStore::raw_path(const DocId &id) const {
  return root_ / "raw" / id.value();
}

void CorpusStore::Load() {
  if (!fs::exists(manifest_path())) return;
  std::string data = ReadFile(manifest_path());
  int line_no = 0;
  for (std::string_view line : text::Lines(data)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    auto corrupt = [&](const std::string &why) {
      return Error(ErrorCode::kManifestCorrupt, why, line_no);
    };
    ordered_json j = ordered_json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) throw corrupt("not a JSON object");
    static const char *kFields[] = {"id", "link", "title", "date",
                                    "description", "status", "failure_reason"};
    for (const char *f : kFields) {
      if (!j.contains(f)) throw corrupt(fmt::format("missing field '{}'", f));
    }
    if (j.size() != std::size(kFields)) throw corrupt("unexpected extra fields");
    auto str = [&](const char *f) -> std::string {
      if (!j[f].is_string()) throw corrupt(fmt::format("field '{}' must be a string", f));
      return j[f].get<std::string>();
    };
    auto opt_str = [&](const char *f) -> std::optional<std::string> {
      if (j[f].is_null()) return std::nullopt;
      return str(f);
    };
    std::string id_value = str("id");
    if (id_value.empty()) throw corrupt("empty id");
    Entry entry;
    entry.meta.link = str("link");
    if (entry.meta.link.empty()) throw corrupt("empty link");
    entry.meta.title = str("title");
    if (auto d = opt_str("date")) {
      entry.meta.release_date = Date::ParseIso(*d);
      if (!entry.meta.release_date) throw corrupt(fmt::format("bad date '{}'", *d));
    }
    entry.meta.description = opt_str("description");
    auto status = ParseStatus(str("status"));
    if (!status) throw corrupt("unknown status");
    entry.status = *status;
    entry.failure_reason = opt_str("failure_reason");
    DocId id(id_value);
    if (docs_.count(id)) throw corrupt(fmt::format("duplicate id '{}'", id_value));
    if (by_link_.count(entry.meta.link)) throw corrupt("duplicate link");
    by_link_.emplace(entry.meta.link, id);
    docs_.emplace(std::move(id), std::move(entry));
  }
}

void CorpusStore::SaveLocked() {
  std::string out;
  for (const auto &[id, e] : docs_) {
    ordered_json j;
    j["id"] = id.value();
    j["link"] = e.meta.link;
    j["title"] = e.meta.title;
    j["date"] = e.meta.release_date ? ordered_json(e.meta.release_date->ToIso())
                                    : ordered_json(nullptr);
    j["description"] =
        e.meta.description ? ordered_json(*e.meta.description) : ordered_json(nullptr);
    j["status"] = std::string(StatusName(e.status));
    j["failure_reason"] =
        e.failure_reason ? ordered_json(*e.failure_reason) : ordered_json(nullptr);
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out.push_back('\n');
  }
  WriteFileAtomic(manifest_path(), out);
  dirty_ = false;
}

void CorpusStore::Save() {
  std::unique_lock lock(mu_);
  SaveLocked();
}

void CorpusStore::MutatedLocked() {
  dirty_ = true;
  if (options_.autosave && batch_depth_ == 0) SaveLocked();
}

CorpusStore::Batch::Batch(CorpusStore *store) : store_(store) {
  std::unique_lock lock(store_->mu_);
  ++store_->batch_depth_;
}

CorpusStore::Batch::~Batch() {
  std::unique_lock lock(store_->mu_);
  if (--store_->batch_depth_ == 0 && store_->dirty_ && store_->options_.autosave) {
    try {
      store_->SaveLocked();
    } catch (...) {
      // Left dirty; the store destructor or an explicit Save() retries.
    }
  }
}

DocId CorpusStore::AddRecord(const MetadataRecord &record) {
  if (record.link.empty()) {
    throw Error(ErrorCode::kInvalidRecord, "record link is empty");
  }
  if (record.release_date && !options_.valid_dates.Contains(*record.release_date)) {
    throw Error(ErrorCode::kInvalidRecord,
                fmt::format("release date {} outside {}..{}",
                            record.release_date->ToIso(),
                            options_.valid_dates.min.ToIso(),
                            options_.valid_dates.max.ToIso()));
  }
  std::unique_lock lock(mu_);
  if (auto it = by_link_.find(record.link); it != by_link_.end()) return it->second;
  std::string base = BaseIdForLink(record.link);
  std::string candidate = base;
  for (int suffix = 2; docs_.count(DocId(candidate)); ++suffix) {
    candidate = fmt::format("{}-{}", base, suffix);
  }
  DocId id(candidate);
  Entry entry;
  entry.meta = record;
  docs_.emplace(id, std::move(entry));
  by_link_.emplace(record.link, id);
  MutatedLocked();
  return id;
}

CorpusStore::Entry &CorpusStore::FindLocked(const DocId &id) {
  auto it = docs_.find(id);
  if (it == docs_.end()) {
    throw Error(ErrorCode::kNotFound, fmt::format("no document '{}'", id.value()));
  }
  return it->second;
}

void CorpusStore::Transition(const DocId &id, DocStatus from, DocStatus to,
                             std::optional<std::string> reason) {
  std::unique_lock lock(mu_);
  Entry &e = FindLocked(id);
  if (e.status != from) {
    throw Error(ErrorCode::kInvalidTransition,
                fmt::format("'{}': {} -> {} not allowed", id.value(),
                            StatusName(e.status), StatusName(to)));
  }
  e.status = to;
  e.failure_reason = std::move(reason);
  MutatedLocked();
}

void CorpusStore::MarkFetched(const DocId &id) {
  Transition(id, DocStatus::kIndexed, DocStatus::kFetched, std::nullopt);
}

void CorpusStore::MarkDeadLink(const DocId &id, std::string reason) {
  Transition(id, DocStatus::kIndexed, DocStatus::kDeadLink, std::move(reason));
}

void CorpusStore::MarkConversionFailed(const DocId &id, std::string reason) {
  Transition(id, DocStatus::kFetched, DocStatus::kConversionFailed, std::move(reason));
}

void CorpusStore::AttachText(const DocId &id, std::string_view text) {
  std::unique_lock lock(mu_);
  Entry &e = FindLocked(id);
  if (e.status != DocStatus::kFetched) {
    throw Error(ErrorCode::kInvalidTransition,
                fmt::format("'{}': cannot attach text in status {}", id.value(),
                            StatusName(e.status)));
  }
  WriteFileAtomic(text_path(id), text);
  e.status = DocStatus::kConverted;
  e.failure_reason.reset();
  MutatedLocked();
}

void CorpusStore::NoteTransientFailure(const DocId &id, std::string reason) {
  std::unique_lock lock(mu_);
  Entry &e = FindLocked(id);
  e.failure_reason = std::move(reason);
  MutatedLocked();
}

Document CorpusStore::ToDocument(const DocId &id, const Entry &entry,
                                 bool with_text) const {
  Document doc;
  doc.id = id;
  doc.meta = entry.meta;
  doc.status = entry.status;
  doc.failure_reason = entry.failure_reason;
  if (with_text && entry.status == DocStatus::kConverted) {
    doc.text = ReadFile(text_path(id));
  }
  return doc;
}

std::optional<Document> CorpusStore::Get(const DocId &id, bool with_text) const {
  std::shared_lock lock(mu_);
  auto it = docs_.find(id);
  if (it == docs_.end()) return std::nullopt;
  return ToDocument(id, it->second, with_text);
}

std::string CorpusStore::LoadText(const DocId &id) const {
  std::shared_lock lock(mu_);
  auto it = docs_.find(id);
  if (it == docs_.end()) {
    throw Error(ErrorCode::kNotFound, fmt::format("no document '{}'", id.value()));
  }
  if (it->second.status != DocStatus::kConverted) {
    throw Error(ErrorCode::kNotFound,
                fmt::format("document '{}' has no text", id.value()));
  }
  return ReadFile(text_path(id));
}

std::vector<Document> CorpusStore::Scan(const StatusFilter &filter,
                                        bool with_text) const {
  std::shared_lock lock(mu_);
  std::vector<Document> out;
  for (const auto &[id, entry] : docs_) {
    if (filter(entry.status)) out.push_back(ToDocument(id, entry, with_text));
  }
  return out;
}

std::vector<DocId> CorpusStore::Ids(const StatusFilter &filter) const {
  std::shared_lock lock(mu_);
  std::vector<DocId> out;
  for (const auto &[id, entry] : docs_) {
    if (filter(entry.status)) out.push_back(id);
  }
  return out;
}

size_t CorpusStore::size() const {
  std::shared_lock lock(mu_);
  return docs_.size();
}

std::map<DocStatus, size_t> CorpusStore::StatusCounts() const {
  std::shared_lock lock(mu_);
  std::map<DocStatus, size_t> counts;
  for (DocStatus s : {DocStatus::kIndexed, DocStatus::kFetched, DocStatus::kConverted,
                      DocStatus::kConversionFailed, DocStatus::kDeadLink}) {
    counts[s] = 0;
  }
  for (const auto &[id, entry] : docs_) ++counts[entry.status];
  return counts;
}

}  // namespace misl
