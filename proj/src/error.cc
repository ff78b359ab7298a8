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

#include "misl/error.h"

#include <fmt/format.h>

namespace misl {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kInvalidTransition: return "InvalidTransition";
    case ErrorCode::kManifestCorrupt: return "ManifestCorrupt";
    case ErrorCode::kCsvShape: return "CsvShapeError";
    case ErrorCode::kInvalidUrl: return "InvalidUrl";
    case ErrorCode::kInvalidOverride: return "InvalidOverride";
    case ErrorCode::kInvalidLookup: return "InvalidLookup";
    case ErrorCode::kInvalidRoster: return "InvalidRoster";
    case ErrorCode::kNotAnalyzable: return "NotAnalyzable";
    case ErrorCode::kInvalidDimension: return "InvalidDimension";
    case ErrorCode::kInvalidTable: return "InvalidTable";
    case ErrorCode::kInvalidSeries: return "InvalidSeries";
    case ErrorCode::kInvalidProfile: return "InvalidProfile";
    case ErrorCode::kStageOrder: return "StageOrderError";
  }
  return "Unknown";
}

namespace {

std::string Decorate(ErrorCode code, const std::string &message, int line) {
  if (line > 0) {
    return fmt::format("{}: line {}: {}", ErrorCodeName(code), line, message);
  }
  return fmt::format("{}: {}", ErrorCodeName(code), message);
}

}  // namespace

Error::Error(ErrorCode code, const std::string &message, int line)
    : std::runtime_error(Decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace misl
