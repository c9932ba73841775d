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

#include "matrix_io.hpp"

#include <fstream>

namespace uparam::cli {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      data.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json matrix_to_json(const RealMatrix& m) { return matrix_to_json(ComplexMatrix(m.cast<Complex>())); }

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw InputError("matrix file needs \"rows\", \"cols\" and \"data\"");
  }
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned()) {
    throw InputError("\"rows\" and \"cols\" must be non-negative integers");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto& data = j["data"];
  if (!data.is_array() || data.size() != rows * cols) {
    throw InputError("\"data\" must hold rows*cols = " + std::to_string(rows * cols) +
                     " entries");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& e = data[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw InputError("entry " + std::to_string(i) + " is not a [re, im] pair");
    }
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw InputError("entry " + std::to_string(i) + " is not finite");
    }
    m(static_cast<Eigen::Index>(i / cols), static_cast<Eigen::Index>(i % cols)) = Complex(re, im);
  }
  return m;
}

RealMatrix real_matrix_from_json(const json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  if (m.size() > 0 && m.imag().cwiseAbs().maxCoeff() != 0.0) {
    throw InputError("expected a real matrix (all imaginary parts zero)");
  }
  return m.real();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

ComplexMatrix read_matrix_file(const std::string& path) {
  return matrix_from_json(read_json_file(path));
}

}  // namespace uparam::cli
