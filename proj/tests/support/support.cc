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

#include "support/support.h"

#include <cstdlib>
#include <string>
#include <system_error>

#include "misl/error.h"
#include "misl/normalization.h"

namespace misl::test {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "misl-test-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) {
    throw Error(ErrorCode::kIo, "mkdtemp failed for " + pattern);
  }
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

RunConfig SyntheticRunConfig(const fs::path &fixture, const fs::path &root, size_t jobs) {
  RunConfig config;
  config.root = root;
  config.index_url = "file://" + fs::absolute(fixture / "site" / "index.html").string();
  config.convert.command = kIdentityConverter;
  config.politeness = std::chrono::milliseconds(0);
  config.fetch.backoff = std::chrono::milliseconds(0);
  config.roster_path = fixture / "roster.csv";
  config.jobs = jobs;
  return config;
}

TransportResponse StubTransport::Get(const Url &url, std::chrono::milliseconds) {
  auto it = pages_.find(url.ToString());
  if (it == pages_.end()) return TransportResponse{404, "", "text/plain", std::nullopt};
  return TransportResponse{it->second.first, it->second.second, "text/plain", std::nullopt};
}

std::vector<DocFacts> AnalyzeSynthetic(const testkit::SyntheticCorpus &corpus,
                                       const JudgeRoster &roster) {
  AnalysisTables tables;
  tables.roster = &roster;
  std::vector<DocFacts> out;
  out.reserve(corpus.docs.size());
  for (const auto &doc : corpus.docs) {
    Document d;
    d.id = doc.truth.id;
    d.meta.link = doc.index.link;
    d.meta.title = doc.index.title;
    d.meta.release_date = ParseReleaseDate(doc.index.date, DateRange::UpToToday());
    if (!doc.index.description.empty()) d.meta.description = doc.index.description;
    d.text = doc.text;
    d.status = DocStatus::kConverted;
    out.push_back(AnalyzeDocument(d, tables));
  }
  return out;
}

fs::path FixtureDir() {
  if (const char *dir = std::getenv("MISL_FIXTURE_DIR")) return dir;
  return MISL_FIXTURE_DIR;
}

}  // namespace misl::test
