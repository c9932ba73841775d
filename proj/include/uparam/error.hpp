// Copyright 2026 The uparam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uparam {

enum class ErrorCode {
  kNonSquare,
  kNotHermitian,
  kConvergenceFailure,
  kNotPSD,
  kDimensionMismatch,
  kIndexOutOfRange,
  kRequireMLessThanN,
  kRankOutOfRange,
  kNotUnitary,
  kLengthMismatch,
  kNotOrthonormal,
  kNormError,
  kDimensionTooLarge,
  kInvalidDensityMatrix,
  kInvalidConfig,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSquare: return "NonSquare";
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kRequireMLessThanN: return "RequireMLessThanN";
    case ErrorCode::kRankOutOfRange: return "RankOutOfRange";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNotOrthonormal: return "NotOrthonormal";
    case ErrorCode::kNormError: return "NormError";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kInvalidDensityMatrix: return "InvalidDensityMatrix";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Thrown by every checked operation in the library. `code()` identifies the
/// failed precondition; `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uparam
