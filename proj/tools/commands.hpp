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

// Subcommands of the uparam tool. Each returns the JSON document printed on
// stdout; failures surface as InputError (exit 2) or uparam::Error.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "uparam/composite_unitary.hpp"
#include "uparam/entanglement.hpp"
#include "uparam/optimize.hpp"
#include "uparam/states.hpp"

namespace uparam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr double kDistillWitnessThreshold = 1e-8;

/// Tolerances applied to density matrices read from files.
inline constexpr DensityTolerances kFileStateTolerances{1e-9, 1e-9, -1e-9, kRankThreshold};

/// Exit code for a library error: convergence problems are numerical
/// failures, everything else is bad input.
int exit_code_for(const Error& e);

/// Angles drawn uniformly from the canonical ranges: [0, 2pi) on and below
/// the diagonal, [0, pi/2] above.
ParamMatrix random_canonical_params(std::size_t d, std::uint64_t seed);

struct GenUnitaryOptions {
  std::size_t dim = 0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> params_file;
};

nlohmann::json cmd_gen_unitary(const GenUnitaryOptions& opts);

nlohmann::json cmd_decompose(const std::string& input_file);

DensityMatrix read_state_file(const std::string& path, std::size_t d_a, std::size_t d_b);

struct BoundOptions {
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  bool optimize = false;
  int restarts = 12;
  std::uint64_t seed = 0;
  bool normalize = false;
};

nlohmann::json bound_report(const DensityMatrix& rho, const BoundOptions& opts);
nlohmann::json cmd_bound(const std::string& state_file, const BoundOptions& opts);

struct DistillOptions {
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  std::size_t copies = 1;
  int restarts = 12;
  std::uint64_t seed = 0;
};

struct DistillVerdict {
  double max_x_sq = 0.0;
  bool distillable_witness = false;
  std::size_t parameter_count = 0;
  std::size_t d_a = 0;  // local dimensions after taking copies
  std::size_t d_b = 0;
  OptimizerResult optimizer;
};

DistillVerdict distill(const DensityMatrix& rho, const DistillOptions& opts);
nlohmann::json distill_to_json(const DistillVerdict& v, const DistillOptions& opts);
nlohmann::json cmd_distill(const std::string& state_file, const DistillOptions& opts);

}  // namespace uparam::cli
