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

#ifndef MISL_DATE_H_
#define MISL_DATE_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace misl {

// A proleptic Gregorian calendar date. Only valid dates can be constructed
// through FromYmd / ParseIso.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  static std::optional<Date> FromYmd(int year, int month, int day);
  // Strict YYYY-MM-DD.
  static std::optional<Date> ParseIso(std::string_view s);
  static Date Today();

  std::string ToIso() const;

  auto operator<=>(const Date &) const = default;
};

int DaysInMonth(int year, int month);

// Inclusive date interval used to validate release dates.
struct DateRange {
  Date min{1947, 1, 1};
  Date max{2100, 12, 31};

  bool Contains(const Date &d) const { return min <= d && d <= max; }

  // 1947-01-01 to today; the default validity window for stored records.
  static DateRange UpToToday();
};

}  // namespace misl

#endif  // MISL_DATE_H_
