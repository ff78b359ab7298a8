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

#ifndef MISL_CONFIG_H_
#define MISL_CONFIG_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace misl {

// Flat `key = value` configuration. Lines starting with '#' are comments.
// Keys are case-sensitive; later assignments win.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig Parse(std::string_view text);
  static KeyValueConfig Load(const std::filesystem::path &path);

  // Applies environment overrides: key `fetch.retries` is overridden by
  // `<prefix>FETCH_RETRIES`.
  void ApplyEnvironment(std::string_view prefix);

  void Set(const std::string &key, std::string value) {
    values_[key] = std::move(value);
  }
  bool Has(const std::string &key) const { return values_.count(key) > 0; }
  std::optional<std::string> Get(const std::string &key) const;
  std::string GetOr(const std::string &key, std::string fallback) const;
  long long GetInt(const std::string &key, long long fallback) const;
  double GetDouble(const std::string &key, double fallback) const;
  // Comma-separated list, items trimmed.
  std::vector<std::string> GetList(const std::string &key,
                                   std::vector<std::string> fallback) const;

  const std::map<std::string, std::string> &values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::string ReadFile(const std::filesystem::path &path);
// Writes through a temporary file and rename, so readers never see a
// partially written file.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view data);

}  // namespace misl

#endif  // MISL_CONFIG_H_
