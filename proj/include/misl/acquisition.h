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

// Getting documents in: index pages, the index CSV, downloads and the
// external text converter.

#ifndef MISL_ACQUISITION_H_
#define MISL_ACQUISITION_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "misl/config.h"

namespace misl {

// One row of the index page. The date stays as written; it is parsed when
// the record enters the corpus store.
struct IndexRecord {
  std::string link;
  std::string title;
  std::string date;
  std::string description;  // empty when absent

  bool operator==(const IndexRecord &) const = default;
};

// Selectors locating index rows and, relative to a row, their fields. The
// link is the href of the first <a> at or below the link element; rows
// without one are skipped.
struct IndexSelectors {
  std::string row = "tr";
  std::string link = "a";
  std::string title = "td:nth-child(1)";
  std::string date = "td:nth-child(2)";
  std::string description = "td:nth-child(3)";

  // Keys row_selector, link_selector, title_selector, date_selector and
  // description_selector.
  static IndexSelectors FromConfig(const KeyValueConfig &config);
};

struct IndexParseResult {
  std::vector<IndexRecord> records;
  // Set when no rows matched; the caller decides whether that matters.
  bool empty_index = false;
};

// Relative links are resolved against `base_url` when it is non-empty.
IndexParseResult ParseIndexPage(std::string_view html, const IndexSelectors &selectors = {},
                                std::string_view base_url = "");

inline constexpr std::string_view kIndexColumns[] = {"link", "title", "date", "description"};

std::string WriteIndexCsv(const std::vector<IndexRecord> &records);
// Throws Error(kCsvShape) naming the row.
std::vector<IndexRecord> ReadIndexCsv(std::string_view data);

// --- URLs ---------------------------------------------------------------------

struct Url {
  std::string scheme;  // lower-case: http, https or file
  std::string host;    // empty for file
  int port = 0;        // 0 for the scheme default
  std::string path;    // starts with '/'; includes the query

  std::string Origin() const;  // "https://host:port"
  std::string ToString() const;
};

// Throws Error(kInvalidUrl).
Url ParseUrl(std::string_view url);
std::string ResolveUrl(std::string_view base, std::string_view href);

// --- Fetching -------------------------------------------------------------------

struct FetchPolicy {
  int retries = 2;  // extra attempts after the first
  std::chrono::milliseconds backoff{500};  // doubled after each retry
  std::chrono::milliseconds timeout{30000};

  // Keys fetch.retries, fetch.backoff_ms and fetch.timeout_ms.
  static FetchPolicy FromConfig(const KeyValueConfig &config);
};

// What one request produced. `error` is set when no HTTP response arrived.
struct TransportResponse {
  int status = 0;
  std::string body;
  std::string content_type;
  std::optional<std::string> error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResponse Get(const Url &url, std::chrono::milliseconds timeout) = 0;
};

// HTTP(S) via cpp-httplib, following redirects. HTTPS needs OpenSSL at
// build time; without it https requests fail as transport errors.
class HttpTransport : public Transport {
 public:
  TransportResponse Get(const Url &url, std::chrono::milliseconds timeout) override;
};

// file:// URLs: 200 with the file contents, or 404 when the file is missing.
class FileTransport : public Transport {
 public:
  TransportResponse Get(const Url &url, std::chrono::milliseconds timeout) override;
};

// Dispatches on scheme to a FileTransport or an HttpTransport.
class DefaultTransport : public Transport {
 public:
  TransportResponse Get(const Url &url, std::chrono::milliseconds timeout) override;

 private:
  FileTransport file_;
  HttpTransport http_;
};

struct FetchOk {
  std::string bytes;
  std::string content_type;
};
struct DeadLink {
  int http_status = 0;
};
struct TransportFailure {
  std::string detail;
};
using FetchResult = std::variant<FetchOk, DeadLink, TransportFailure>;

using Sleeper = std::function<void(std::chrono::milliseconds)>;
void RealSleep(std::chrono::milliseconds d);

// 4xx is final (DeadLink). 5xx, transport errors and empty 2xx bodies are
// retried with exponential backoff, then reported as TransportFailure.
// Throws Error(kInvalidUrl) for a malformed url.
FetchResult Fetch(std::string_view url, const FetchPolicy &policy, Transport &transport,
                  const Sleeper &sleep = RealSleep);

// Spaces requests to the same host at least `delay` apart. Thread-safe.
class PolitenessGate {
 public:
  explicit PolitenessGate(std::chrono::milliseconds delay, Sleeper sleep = RealSleep)
      : delay_(delay), sleep_(std::move(sleep)) {}

  // Blocks until a request to `host` may start.
  void Wait(const std::string &host);

 private:
  using Clock = std::chrono::steady_clock;
  std::chrono::milliseconds delay_;
  Sleeper sleep_;
  std::mutex mu_;
  std::map<std::string, Clock::time_point> next_slot_;
};

// --- Conversion -----------------------------------------------------------------

struct ConvertOk {
  std::string text;
};
struct NonLatinScript {
  double share = 0;  // fraction of letters outside Basic Latin
};
struct CorruptSource {};
struct ConverterFailed {
  std::string detail;
};
using ConversionResult = std::variant<ConvertOk, NonLatinScript, CorruptSource, ConverterFailed>;

struct ConvertOptions {
  // Shell command with {in} and {out} placeholders, substituted as quoted
  // paths, e.g. "pdftotext -layout {in} {out}".
  std::string command;
  std::chrono::milliseconds timeout{120000};
  double non_latin_threshold = 0.5;
};

// Share of letters that lie outside Basic Latin; 0 when there are none.
double NonLatinShare(std::string_view utf8);

// Runs the converter on `input`. Throws Error(kInvalidArgument) when the
// template lacks a placeholder, Error(kIo) when `input` does not exist.
ConversionResult Convert(const std::filesystem::path &input, const ConvertOptions &options);

}  // namespace misl

#endif  // MISL_ACQUISITION_H_
