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

// Matrix files: {"rows": R, "cols": C, "data": [[re, im], ...]} with the
// R*C entries in row-major order.

#pragma once

#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "uparam/linalg.hpp"

namespace uparam::cli {

/// Malformed or unreadable input; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json matrix_to_json(const RealMatrix& m);

ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// Real matrix; every imaginary part must be exactly zero.
RealMatrix real_matrix_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

ComplexMatrix read_matrix_file(const std::string& path);

}  // namespace uparam::cli
