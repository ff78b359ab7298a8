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

#ifndef MISL_ERROR_H_
#define MISL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace misl {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kConfig,
  // corpus_store
  kInvalidRecord,
  kNotFound,
  kInvalidTransition,
  kManifestCorrupt,
  // acquisition
  kCsvShape,
  kInvalidUrl,
  // normalization
  kInvalidOverride,
  kInvalidLookup,
  kInvalidRoster,
  // extraction / analytics / reporting
  kNotAnalyzable,
  kInvalidDimension,
  kInvalidTable,
  kInvalidSeries,
  // testkit
  kInvalidProfile,
  // cli
  kStageOrder,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure the library reports through exceptions is an Error. Errors
// tied to a line of an input file carry that line number (1-based, 0 when
// not applicable).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message, int line = 0);

  ErrorCode code() const { return code_; }
  int line() const { return line_; }

 private:
  ErrorCode code_;
  int line_;
};

}  // namespace misl

#endif  // MISL_ERROR_H_
