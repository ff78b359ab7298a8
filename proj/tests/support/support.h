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

// Helpers shared by the unit tests and the acceptance runner.

#ifndef MISL_TESTS_SUPPORT_SUPPORT_H_
#define MISL_TESTS_SUPPORT_SUPPORT_H_

#include <filesystem>
#include <map>
#include <string>

#include "misl/acquisition.h"
#include "misl/pipeline.h"
#include "misl/testkit.h"

namespace misl::test {

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }
  std::filesystem::path operator/(const std::string &name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Converter command that copies the input unchanged.
inline constexpr const char *kIdentityConverter = "cp {in} {out}";

// Config for crawling a corpus written by testkit::WriteCorpus at
// `fixture` into the corpus root `root` through file:// URLs.
RunConfig SyntheticRunConfig(const std::filesystem::path &fixture,
                             const std::filesystem::path &root, size_t jobs = 4);

// Serves fixed bodies by URL; anything else is a 404. Thread-safe for reads.
class StubTransport : public Transport {
 public:
  void Serve(const std::string &url, std::string body, int status = 200) {
    pages_[url] = {status, std::move(body)};
  }
  TransportResponse Get(const Url &url, std::chrono::milliseconds timeout) override;

 private:
  std::map<std::string, std::pair<int, std::string>> pages_;
};

// Analyzes every generated document in memory, the way the pipeline would
// after a lossless conversion.
std::vector<DocFacts> AnalyzeSynthetic(const testkit::SyntheticCorpus &corpus,
                                       const JudgeRoster &roster);

// Directory holding the checked-in fixtures.
std::filesystem::path FixtureDir();

}  // namespace misl::test

#endif  // MISL_TESTS_SUPPORT_SUPPORT_H_
