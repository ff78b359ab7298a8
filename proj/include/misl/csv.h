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

// RFC-4180 CSV. Fields containing a comma, quote, CR or LF are quoted and
// embedded quotes doubled. Rows end with "\n"; the reader also accepts CRLF.

#ifndef MISL_CSV_H_
#define MISL_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace misl::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

std::string EscapeField(std::string_view field);
void AppendRow(const Row &row, std::string *out);
std::string Write(const Table &table);

// Parses every record, header included. Throws Error(kCsvShape) on an
// unterminated quoted field.
std::vector<Row> ParseRecords(std::string_view data);

// Parses a header plus rows and checks that every row has the header's
// arity, and the header equals `expected_header` when one is given. Row
// numbers in errors count the header as row 1.
Table Read(std::string_view data, const Row &expected_header = {});

}  // namespace misl::csv

#endif  // MISL_CSV_H_
