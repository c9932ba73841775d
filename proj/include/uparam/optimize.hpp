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

// Nelder-Mead with random restarts over unconstrained angle vectors.

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "uparam/error.hpp"
#include "uparam/linalg.hpp"

namespace uparam {

struct OptimizerConfig {
  int max_iterations = 2000;  // per restart
  double tolerance = 1e-10;   // stop when max f - min f over the simplex < tolerance
  double initial_scale = 0.5;  // simplex edge length, radians
  int restarts = 12;
  std::uint64_t seed = 0;
  bool record_trace = false;

  void validate() const {
    if (max_iterations < 1 || restarts < 1) {
      throw Error(ErrorCode::kInvalidConfig, "iteration and restart counts must be >= 1");
    }
    if (!(tolerance > 0.0) || !(initial_scale > 0.0)) {
      throw Error(ErrorCode::kInvalidConfig, "tolerance and scale must be > 0");
    }
  }
};

struct OptimizerResult {
  double value = 0.0;
  std::vector<double> params;
  int iterations = 0;  // summed over restarts
  int restarts = 0;
  bool converged = false;  // the restart that produced `value` met the tolerance
  std::vector<double> trace;  // running best after every iteration (record_trace only)
};

namespace detail {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

template <class F>
double eval(F& objective, const std::vector<double>& x) {
  return objective(std::span<const double>(x));
}

// One Nelder-Mead run from `start`; coefficients 1 / 2 / 0.5 / 0.5.
template <class F>
OptimizerResult nelder_mead(F& objective, std::vector<double> start, const OptimizerConfig& cfg,
                            double global_best, std::vector<double>* trace) {
  const std::size_t n = start.size();
  Simplex s;
  s.x.push_back(start);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v = start;
    v[i] += cfg.initial_scale;
    s.x.push_back(std::move(v));
  }
  for (const auto& v : s.x) s.f.push_back(eval(objective, v));

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  std::vector<double> trial(n);
  auto point = [&](double t, const std::vector<double>& from) {
    // centroid + t * (from - centroid)
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (from[j] - centroid[j]);
    return out;
  };

  OptimizerResult res;
  int it = 0;
  bool converged = false;
  for (; it < cfg.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (trace) trace->push_back(std::min(global_best, s.f[best]));
    if (s.f[worst] - s.f[best] < cfg.tolerance) {
      converged = true;
      break;
    }
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += s.x[order[i]][j];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    const auto xr = point(-1.0, s.x[worst]);
    const double fr = eval(objective, xr);
    if (fr < s.f[best]) {
      auto xe = point(-2.0, s.x[worst]);
      const double fe = eval(objective, xe);
      if (fe < fr) {
        s.x[worst] = std::move(xe);
        s.f[worst] = fe;
      } else {
        s.x[worst] = xr;
        s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[second]) {
      s.x[worst] = xr;
      s.f[worst] = fr;
      continue;
    }
    if (fr < s.f[worst]) {
      auto xc = point(0.5, xr);  // outside contraction
      const double fc = eval(objective, xc);
      if (fc <= fr) {
        s.x[worst] = std::move(xc);
        s.f[worst] = fc;
        continue;
      }
    } else {
      auto xc = point(0.5, s.x[worst]);  // inside contraction
      const double fc = eval(objective, xc);
      if (fc < s.f[worst]) {
        s.x[worst] = std::move(xc);
        s.f[worst] = fc;
        continue;
      }
    }
    // shrink towards the best vertex
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        s.x[i][j] = s.x[best][j] + 0.5 * (s.x[i][j] - s.x[best][j]);
      }
      s.f[i] = eval(objective, s.x[i]);
    }
  }
  const auto best_it = std::min_element(s.f.begin(), s.f.end());
  const auto idx = static_cast<std::size_t>(best_it - s.f.begin());
  res.value = *best_it;
  res.params = s.x[idx];
  res.iterations = it;
  res.converged = converged;
  return res;
}

}  // namespace detail

/// Minimizes `objective` (callable on std::span<const double>) over R^dim.
/// The first restart starts at the zero vector, later ones at points drawn
/// uniformly from [0, 2pi)^dim. Deterministic for a given (cfg, objective).
template <class F>
OptimizerResult minimize(F&& objective, std::size_t dim, const OptimizerConfig& cfg) {
  cfg.validate();
  OptimizerResult result;
  if (dim == 0) {
    const std::vector<double> empty;
    result.value = objective(std::span<const double>(empty));
    result.converged = true;
    return result;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  bool have_best = false;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> start(dim, 0.0);
    if (r > 0) {
      for (auto& v : start) v = angle(rng);
    }
    const double incumbent = have_best ? result.value : std::numeric_limits<double>::infinity();
    auto run = detail::nelder_mead(objective, std::move(start), cfg, incumbent,
                                   cfg.record_trace ? &result.trace : nullptr);
    result.iterations += run.iterations;
    if (!have_best || run.value < result.value) {
      result.value = run.value;
      result.params = std::move(run.params);
      result.converged = run.converged;
      have_best = true;
    }
  }
  result.restarts = cfg.restarts;
  // re-evaluate so the reported value belongs to the reported parameters
  result.value = objective(std::span<const double>(result.params));
  return result;
}

/// Objectives with a separate search landscape: `search_value` agrees with
/// the objective where it is negative and stays continuous where the
/// objective is flat at zero.
template <class O>
concept SearchableObjective = requires(const O& o, std::span<const double> x) {
  { o(x) } -> std::convertible_to<double>;
  { o.search_value(x) } -> std::convertible_to<double>;
  { o.dim() } -> std::convertible_to<std::size_t>;
};

/// Runs minimize on o.search_value and reports the objective itself at the
/// best point found.
template <SearchableObjective O>
OptimizerResult minimize(const O& objective, const OptimizerConfig& cfg) {
  OptimizerResult result = minimize(
      [&objective](std::span<const double> x) { return objective.search_value(x); },
      objective.dim(), cfg);
  result.value = objective(std::span<const double>(result.params));
  return result;
}

}  // namespace uparam
