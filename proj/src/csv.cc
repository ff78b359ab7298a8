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

#include "misl/csv.h"

#include <fmt/format.h>

#include "misl/error.h"
#include "misl/text.h"

namespace misl::csv {

std::string EscapeField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void AppendRow(const Row &row, std::string *out) {
  for (size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out->push_back(',');
    out->append(EscapeField(row[i]));
  }
  out->push_back('\n');
}

std::string Write(const Table &table) {
  std::string out;
  AppendRow(table.header, &out);
  for (const auto &row : table.rows) AppendRow(row, &out);
  return out;
}

std::vector<Row> ParseRecords(std::string_view data) {
  std::vector<Row> records;
  Row row;
  std::string field;
  size_t i = 0;
  int record_no = 1;
  bool row_has_content = false;
  while (i < data.size()) {
    char c = data[i];
    if (c == '"' && field.empty()) {
      // Quoted field.
      size_t start_record = record_no;
      ++i;
      bool closed = false;
      while (i < data.size()) {
        if (data[i] == '"') {
          if (i + 1 < data.size() && data[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.push_back(data[i++]);
      }
      if (!closed) {
        throw Error(ErrorCode::kCsvShape, "unterminated quoted field",
                    static_cast<int>(start_record));
      }
      row_has_content = true;
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_has_content = true;
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') ++i;
      ++i;
      if (row_has_content || !field.empty()) {
        row.push_back(std::move(field));
        records.push_back(std::move(row));
      } else {
        // Blank lines become an empty record so row numbering stays exact.
        records.emplace_back();
      }
      field.clear();
      row.clear();
      row_has_content = false;
      ++record_no;
      continue;
    }
    field.push_back(c);
    ++i;
  }
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    records.push_back(std::move(row));
  }
  return records;
}

Table Read(std::string_view data, const Row &expected_header) {
  std::vector<Row> records = ParseRecords(data);
  // Ignore trailing blank records.
  while (!records.empty() && records.back().empty()) records.pop_back();
  Table table;
  if (records.empty()) {
    if (!expected_header.empty()) {
      throw Error(ErrorCode::kCsvShape, "missing header row", 1);
    }
    return table;
  }
  table.header = records.front();
  if (!expected_header.empty() && table.header != expected_header) {
    throw Error(ErrorCode::kCsvShape,
                fmt::format("expected header '{}', got '{}'",
                            text::Join(expected_header, ","),
                            text::Join(table.header, ",")),
                1);
  }
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].empty()) continue;
    if (records[r].size() != table.header.size()) {
      throw Error(ErrorCode::kCsvShape,
                  fmt::format("expected {} columns, got {}",
                              table.header.size(), records[r].size()),
                  static_cast<int>(r + 1));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

}  // namespace misl::csv
