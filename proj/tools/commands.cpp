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

#include "commands.hpp"

#include <cmath>
#include <random>

#include "matrix_io.hpp"

namespace uparam::cli {

using nlohmann::json;

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kConvergenceFailure ? kExitNumerical : kExitInput;
}

ParamMatrix random_canonical_params(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_real_distribution<double> rot(0.0, kPi / 2);
  ParamMatrix p(d);
  for (std::size_t m = 0; m < d; ++m) {
    for (std::size_t n = 0; n < d; ++n) p(m, n) = m < n ? rot(rng) : phase(rng);
  }
  return p;
}

json cmd_gen_unitary(const GenUnitaryOptions& opts) {
  if (opts.dim < 2) throw InputError("--dim must be >= 2");
  if (opts.seed.has_value() == opts.params_file.has_value()) {
    throw InputError("give exactly one of --seed or --params");
  }
  ParamMatrix p(opts.dim);
  if (opts.seed) {
    p = random_canonical_params(opts.dim, *opts.seed);
  } else {
    const RealMatrix lambda = real_matrix_from_json(read_json_file(*opts.params_file));
    if (lambda.rows() != static_cast<Eigen::Index>(opts.dim) ||
        lambda.cols() != static_cast<Eigen::Index>(opts.dim)) {
      throw InputError("parameter matrix must be " + std::to_string(opts.dim) + "x" +
                       std::to_string(opts.dim));
    }
    p = ParamMatrix(lambda);
  }
  return matrix_to_json(build_unitary(p).matrix());
}

json cmd_decompose(const std::string& input_file) {
  const ComplexMatrix u = read_matrix_file(input_file);
  if (u.rows() != u.cols() || u.rows() < 2) {
    throw InputError("input must be a square matrix of size >= 2");
  }
  return matrix_to_json(decompose(Unitary::from_matrix(u)).matrix());
}

DensityMatrix read_state_file(const std::string& path, std::size_t d_a, std::size_t d_b) {
  if (d_a < 2 || d_b < 2) throw InputError("--dims entries must be >= 2");
  const ComplexMatrix m = read_matrix_file(path);
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != d_a * d_b) {
    throw InputError("state must be " + std::to_string(d_a * d_b) + "x" +
                     std::to_string(d_a * d_b) + " for --dims " + std::to_string(d_a) + "," +
                     std::to_string(d_b));
  }
  return DensityMatrix::from_matrix(m, 0, kFileStateTolerances);
}

namespace {

json terms_to_json(const BoundReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) {
    // 1-based to match the |1>..|d> labelling
    terms.push_back({{"kA", t.a.k + 1}, {"lA", t.a.l + 1}, {"kB", t.b.k + 1},
                     {"lB", t.b.l + 1}, {"x", t.x}});
  }
  return terms;
}

json params_to_json(std::span<const double> x) { return json(std::vector<double>(x.begin(), x.end())); }

}  // namespace

json bound_report(const DensityMatrix& rho, const BoundOptions& opts) {
  if (opts.normalize && opts.d_a != opts.d_b) {
    throw InputError("--normalize requires equal local dimensions");
  }
  const BoptObjective objective(rho, opts.d_a, opts.d_b);
  const BoundReport plain =
      bound_b(objective.evaluator(), Unitary::identity(opts.d_a), Unitary::identity(opts.d_b));
  const double scale = opts.normalize ? max_entangled_m_concurrence(opts.d_a) : 1.0;

  json out;
  out["dims"] = {opts.d_a, opts.d_b};
  out["bound"] = plain.bound / scale;
  out["bound_sq"] = plain.bound_sq;
  out["terms"] = terms_to_json(plain);
  out["normalized"] = opts.normalize;
  if (opts.normalize) out["normalization"] = scale;

  if (opts.optimize) {
    OptimizerConfig cfg;
    cfg.restarts = opts.restarts;
    cfg.seed = opts.seed;
    const OptimizerResult r = minimize(objective, cfg);
    // the zero vector is the first restart's start, so -r.value >= plain.bound_sq
    const double opt_sq = std::max(-r.value, plain.bound_sq);
    const auto [u_a, u_b] = objective.unitaries(r.params);
    out["bound_opt"] = std::sqrt(opt_sq) / scale;
    out["bound_opt_sq"] = opt_sq;
    out["optimizer"] = {{"restarts", r.restarts},
                        {"seed", opts.seed},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"parameter_count", objective.dim()},
                        {"parameters", params_to_json(r.params)}};
    out["terms_opt"] = terms_to_json(bound_b(objective.evaluator(), u_a, u_b));
  }
  return out;
}

json cmd_bound(const std::string& state_file, const BoundOptions& opts) {
  return bound_report(read_state_file(state_file, opts.d_a, opts.d_b), opts);
}

DistillVerdict distill(const DensityMatrix& rho, const DistillOptions& opts) {
  DistillVerdict v;
  v.d_a = opts.d_a;
  v.d_b = opts.d_b;
  const DensityMatrix state =
      opts.copies > 1 ? n_copy_state(rho, opts.d_a, opts.d_b, opts.copies) : rho;
  for (std::size_t i = 1; i < opts.copies; ++i) {
    v.d_a *= opts.d_a;
    v.d_b *= opts.d_b;
  }
  const DistillObjective objective(state, v.d_a, v.d_b);
  OptimizerConfig cfg;
  cfg.restarts = opts.restarts;
  cfg.seed = opts.seed;
  v.optimizer = minimize(objective, cfg);
  v.parameter_count = objective.dim();
  v.max_x_sq = std::max(-v.optimizer.value, 0.0);
  v.distillable_witness = v.max_x_sq > kDistillWitnessThreshold;
  return v;
}

json distill_to_json(const DistillVerdict& v, const DistillOptions& opts) {
  return {{"max_x_sq", v.max_x_sq},
          {"distillable_witness", v.distillable_witness},
          {"parameter_count", v.parameter_count},
          {"copies", opts.copies},
          {"local_dims", {v.d_a, v.d_b}},
          {"optimizer",
           {{"restarts", v.optimizer.restarts},
            {"seed", opts.seed},
            {"iterations", v.optimizer.iterations},
            {"converged", v.optimizer.converged},
            {"parameters", params_to_json(v.optimizer.params)}}}};
}

json cmd_distill(const std::string& state_file, const DistillOptions& opts) {
  if (opts.copies < 1) throw InputError("--copies must be >= 1");
  const DensityMatrix rho = read_state_file(state_file, opts.d_a, opts.d_b);
  return distill_to_json(distill(rho, opts), opts);
}

}  // namespace uparam::cli
