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

#include "misl/config.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "misl/error.h"
#include "misl/text.h"

namespace misl {

KeyValueConfig KeyValueConfig::Parse(std::string_view data) {
  KeyValueConfig config;
  int line_no = 0;
  for (std::string_view raw : text::Lines(data)) {
    ++line_no;
    std::string_view line = text::Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig,
                  fmt::format("expected key = value, got '{}'", line), line_no);
    }
    std::string key(text::Trim(line.substr(0, eq)));
    if (key.empty()) throw Error(ErrorCode::kConfig, "empty key", line_no);
    config.values_[key] = std::string(text::Trim(line.substr(eq + 1)));
  }
  return config;
}

KeyValueConfig KeyValueConfig::Load(const std::filesystem::path &path) {
  return Parse(ReadFile(path));
}

void KeyValueConfig::ApplyEnvironment(std::string_view prefix) {
  for (auto &[key, value] : values_) {
    std::string name(prefix);
    for (char c : key) name.push_back(text::IsAsciiAlnum(c) ? text::ToUpper(c) : '_');
    if (const char *env = std::getenv(name.c_str())) value = env;
  }
}

std::optional<std::string> KeyValueConfig::Get(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::GetOr(const std::string &key,
                                  std::string fallback) const {
  auto v = Get(key);
  return v ? *v : std::move(fallback);
}

long long KeyValueConfig::GetInt(const std::string &key,
                                 long long fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  long long out = 0;
  auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || p != v->data() + v->size()) {
    throw Error(ErrorCode::kConfig,
                fmt::format("{}: expected an integer, got '{}'", key, *v));
  }
  return out;
}

double KeyValueConfig::GetDouble(const std::string &key,
                                 double fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  char *end = nullptr;
  double out = std::strtod(v->c_str(), &end);
  if (v->empty() || end != v->c_str() + v->size()) {
    throw Error(ErrorCode::kConfig,
                fmt::format("{}: expected a number, got '{}'", key, *v));
  }
  return out;
}

std::vector<std::string> KeyValueConfig::GetList(
    const std::string &key, std::vector<std::string> fallback) const {
  auto v = Get(key);
  if (!v) return fallback;
  return text::SplitTrimmed(*v, ',');
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::filesystem::path &path, std::string_view data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIo, fmt::format("cannot write {}", tmp.string()));
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) {
      throw Error(ErrorCode::kIo, fmt::format("short write to {}", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace misl
