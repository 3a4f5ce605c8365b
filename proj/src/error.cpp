// Copyright 2026 The hypbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "hypbound/error.hpp"

#include <cstdio>

namespace hypbound {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kCoincidentEndpoints: return "CoincidentEndpoints";
    case ErrorCode::kDegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorCode::kDegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::kDegenerateTriple: return "DegenerateTriple";
    case ErrorCode::kNumericDomain: return "NumericDomain";
    case ErrorCode::kNonIncident: return "NonIncident";
    case ErrorCode::kNoBracket: return "NoBracket";
    case ErrorCode::kConstructionInconsistent: return "ConstructionInconsistent";
    case ErrorCode::kOnAnchor: return "OnAnchor";
    case ErrorCode::kImageDegenerate: return "ImageDegenerate";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw GeometryError(code, std::string(ErrorCodeName(code)) + ": " + message);
}

std::string FormatReal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace hypbound
