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

// Small string helpers shared by the parsers. All case handling is ASCII;
// non-ASCII bytes pass through untouched.

#ifndef MISL_TEXT_H_
#define MISL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace misl::text {

inline bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool IsAsciiDigit(char c) { return c >= '0' && c <= '9'; }
inline bool IsAsciiAlnum(char c) { return IsAsciiAlpha(c) || IsAsciiDigit(c); }
inline bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
inline char ToLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}
inline char ToUpper(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
}

std::string Lower(std::string_view s);
std::string Upper(std::string_view s);
std::string_view Trim(std::string_view s);
// Trims and replaces every whitespace run with a single space.
std::string CollapseWhitespace(std::string_view s);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);
bool StartsWithIgnoreCase(std::string_view s, std::string_view prefix);

std::vector<std::string> Split(std::string_view s, char sep);
// Split on `sep`, trim each piece and drop empty pieces.
std::vector<std::string> SplitTrimmed(std::string_view s, char sep);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Splits text into lines on \n, dropping a trailing \r from each line.
std::vector<std::string_view> Lines(std::string_view s);

// UTF-8 handling. Decoding replaces malformed sequences with U+FFFD.
std::vector<char32_t> DecodeUtf8(std::string_view s);
void AppendUtf8(char32_t cp, std::string *out);
bool IsValidUtf8(std::string_view s);
std::string SanitizeUtf8(std::string_view s);

// Levenshtein distance over code points.
int EditDistance(std::string_view a, std::string_view b);

}  // namespace misl::text

#endif  // MISL_TEXT_H_
