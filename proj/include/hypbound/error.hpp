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

#ifndef HYPBOUND_ERROR_HPP_
#define HYPBOUND_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypbound {

// Numeric values are mirrored by hb_status in hypbound.h; keep them in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kCoincidentEndpoints = 2,
  kDegenerateQuadruple = 3,
  kDegenerateTriangle = 4,
  kDegenerateTriple = 5,
  kNumericDomain = 6,
  kNonIncident = 7,
  kNoBracket = 8,
  kConstructionInconsistent = 9,
  kOnAnchor = 10,
  kImageDegenerate = 11,
  kDimensionMismatch = 12,
  kIo = 13,
};

std::string_view ErrorCodeName(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

// %.9g formatting for messages (std::to_string prints fixed-point).
std::string FormatReal(double v);

}  // namespace hypbound

#endif  // HYPBOUND_ERROR_HPP_
