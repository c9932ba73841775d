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

// Grid scan over the two-qutrit family
//   rho(a, b) = a |Psi1><Psi1| + b |Psi2><Psi2| + (1 - a - b)/9 * I,
//   Psi1 = (|11> + |22> + |33>)/sqrt3,  Psi2 = (|12> + |23> + |31>)/sqrt3,
// reporting PSD and PPT flags together with the normalized bound B and,
// optionally, its optimum over local unitaries.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "uparam/linalg.hpp"

namespace uparam::cli {

struct ScanRow {
  double alpha = 0.0;
  double beta = 0.0;
  bool is_state = false;
  bool is_ppt = false;
  std::optional<double> bound_plain;  // normalized by C_m(Psi1)
  std::optional<double> bound_opt;
};

struct ScanOptions {
  double step = 0.05;
  bool optimize = false;
  int restarts = 12;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

StateVector psi1();
StateVector psi2();
ComplexMatrix mixture_state(double alpha, double beta);

/// Grid points (i h, j h) with i + j <= floor(1/h), row-major in i then j.
/// Optimizer restarts at grid index g use seed `opts.seed + g`.
std::vector<ScanRow> run_scan(const ScanOptions& opts);

/// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

}  // namespace uparam::cli
