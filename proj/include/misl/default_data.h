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

// Seed data files compiled into the library (generated from data/).

#ifndef MISL_DEFAULT_DATA_H_
#define MISL_DEFAULT_DATA_H_

#include <string_view>

namespace misl::default_data {

extern const std::string_view kCaseTypesCsv;
extern const std::string_view kJudgesCsv;
extern const std::string_view kGrammarConf;

}  // namespace misl::default_data

#endif  // MISL_DEFAULT_DATA_H_
