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

#include "fig1.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "matrix_io.hpp"
#include "uparam/entanglement.hpp"
#include "uparam/optimize.hpp"
#include "uparam/states.hpp"

namespace uparam::cli {

namespace {

constexpr std::size_t kD = 3;

struct GridPoint {
  double alpha;
  double beta;
};

ScanRow evaluate(const GridPoint& pt, const ScanOptions& opts, std::uint64_t seed) {
  ScanRow row;
  row.alpha = pt.alpha;
  row.beta = pt.beta;
  const ComplexMatrix m = mixture_state(pt.alpha, pt.beta);
  const double min_eig = herm_eigenvalues(m)(0);
  row.is_state = min_eig >= -1e-10;
  const std::size_t dims[] = {kD, kD};
  row.is_ppt = !is_npt(ppt_min_eigenvalue(m, dims, 1));
  if (!row.is_state) return row;

  const auto rho = DensityMatrix::from_matrix(m);
  const BoptObjective objective(rho, kD, kD);
  const BoundReport plain =
      bound_b(objective.evaluator(), Unitary::identity(kD), Unitary::identity(kD));
  const double norm = max_entangled_m_concurrence(kD);
  row.bound_plain = plain.bound / norm;
  if (opts.optimize) {
    OptimizerConfig cfg;
    cfg.restarts = opts.restarts;
    cfg.seed = seed;
    const OptimizerResult r = minimize(objective, cfg);
    row.bound_opt = std::sqrt(std::max(-r.value, plain.bound_sq)) / norm;
  }
  return row;
}

}  // namespace

StateVector psi1() {
  StateVector v = StateVector::Zero(kD * kD);
  for (std::size_t i = 0; i < kD; ++i) v(static_cast<Eigen::Index>(i * kD + i)) = 1.0;
  return v / std::sqrt(3.0);
}

StateVector psi2() {
  StateVector v = StateVector::Zero(kD * kD);
  for (std::size_t i = 0; i < kD; ++i) {
    v(static_cast<Eigen::Index>(i * kD + (i + 1) % kD)) = 1.0;
  }
  return v / std::sqrt(3.0);
}

ComplexMatrix mixture_state(double alpha, double beta) {
  const StateVector a = psi1();
  const StateVector b = psi2();
  const auto n = static_cast<Eigen::Index>(kD * kD);
  ComplexMatrix m = alpha * (a * a.adjoint()) + beta * (b * b.adjoint()) +
                    ComplexMatrix::Identity(n, n) * ((1.0 - alpha - beta) / 9.0);
  return m;
}

std::vector<ScanRow> run_scan(const ScanOptions& opts) {
  if (!(opts.step > 0.0 && opts.step <= 0.25)) {
    throw InputError("--step must lie in (0, 0.25]");
  }
  const auto n = static_cast<std::size_t>(std::floor(1.0 / opts.step + 1e-9));
  std::vector<GridPoint> grid;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; i + j <= n; ++j) {
      grid.push_back({static_cast<double>(i) * opts.step, static_cast<double>(j) * opts.step});
    }
  }

  std::vector<ScanRow> rows(grid.size());
  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(grid.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t g = next++; g < grid.size(); g = next++) {
      try {
        rows[g] = evaluate(grid[g], opts, opts.seed + g);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = grid.size();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "alpha,beta,is_state,is_ppt,bound_plain,bound_opt\n";
  for (const auto& r : rows) {
    out << format_number(r.alpha) << ',' << format_number(r.beta) << ','
        << (r.is_state ? "true" : "false") << ',' << (r.is_ppt ? "true" : "false") << ','
        << (r.bound_plain ? format_number(*r.bound_plain) : "") << ','
        << (r.bound_opt ? format_number(*r.bound_opt) : "") << '\n';
  }
}

}  // namespace uparam::cli
