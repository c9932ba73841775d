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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "fig1.hpp"
#include "matrix_io.hpp"

namespace {

constexpr const char* kFooter =
    "Basis vectors are labelled |1>..|d> in reports (sigma indices kA, lA, kB, lB\n"
    "are 1-based); matrix files and parameter vectors are 0-based row-major.\n"
    "Exit codes: 0 success, 2 input error, 3 numerical failure.";

std::vector<std::size_t> dims_pair(const std::vector<std::size_t>& dims) {
  if (dims.size() != 2) throw uparam::cli::InputError("--dims expects two values: dA,dB");
  return dims;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uparam::cli;

  CLI::App app{"Composite parameterization of U(d): unitaries, states and m-concurrence bounds"};
  app.footer(kFooter);
  app.require_subcommand(1);

  GenUnitaryOptions gen;
  std::uint64_t gen_seed = 0;
  std::string gen_params;
  auto* gen_cmd = app.add_subcommand("gen-unitary", "Build a unitary from a parameter matrix");
  gen_cmd->add_option("--dim", gen.dim, "Dimension d >= 2")->required();
  auto* gen_seed_opt =
      gen_cmd->add_option("--seed", gen_seed, "Draw angles uniformly from canonical ranges");
  auto* gen_params_opt =
      gen_cmd->add_option("--params", gen_params, "d x d real parameter matrix file");
  gen_seed_opt->excludes(gen_params_opt);

  std::string decompose_input;
  auto* dec_cmd = app.add_subcommand("decompose", "Canonical parameters of a unitary");
  dec_cmd->add_option("--input", decompose_input, "Unitary matrix file")->required();

  std::string bound_state;
  std::vector<std::size_t> bound_dims;
  BoundOptions bound;
  auto* bound_cmd = app.add_subcommand("bound", "m-concurrence lower bound B and B_opt");
  bound_cmd->add_option("--state", bound_state, "Density matrix file")->required();
  bound_cmd->add_option("--dims", bound_dims, "Local dimensions dA,dB")
      ->required()
      ->delimiter(',')
      ->expected(2);
  bound_cmd->add_flag("--optimize", bound.optimize, "Maximize over local unitaries");
  bound_cmd->add_option("--restarts", bound.restarts, "Optimizer restarts")
      ->check(CLI::PositiveNumber);
  bound_cmd->add_option("--seed", bound.seed, "Optimizer seed");
  bound_cmd->add_flag("--normalize", bound.normalize, "Divide bounds by sqrt(2(d-1)/d)");

  std::string distill_state;
  std::vector<std::size_t> distill_dims;
  DistillOptions dist;
  auto* distill_cmd = app.add_subcommand("distill", "Distillability witness max X^2_{1,2,1,2}");
  distill_cmd->add_option("--state", distill_state, "Density matrix file")->required();
  distill_cmd->add_option("--dims", distill_dims, "Local dimensions dA,dB")
      ->required()
      ->delimiter(',')
      ->expected(2);
  distill_cmd->add_option("--copies", dist.copies, "Evaluate on rho^{(x) n}")
      ->check(CLI::PositiveNumber);
  distill_cmd->add_option("--restarts", dist.restarts, "Optimizer restarts")
      ->check(CLI::PositiveNumber);
  distill_cmd->add_option("--seed", dist.seed, "Optimizer seed");

  ScanOptions scan;
  std::string scan_out;
  auto* fig1_cmd = app.add_subcommand(
      "fig1", "Scan a|Psi1><Psi1| + b|Psi2><Psi2| + (1-a-b)/9 I over the a+b <= 1 triangle");
  fig1_cmd->add_option("--step", scan.step, "Grid step h in (0, 0.25]")->required();
  fig1_cmd->add_flag("--optimize", scan.optimize, "Also compute B_opt");
  fig1_cmd->add_option("--restarts", scan.restarts, "Optimizer restarts")
      ->check(CLI::PositiveNumber);
  fig1_cmd->add_option("--seed", scan.seed, "Base seed; grid point g uses seed + g");
  fig1_cmd->add_option("--threads", scan.threads, "Worker threads (0: all cores)");
  fig1_cmd->add_option("--out", scan_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    nlohmann::json out;
    if (*gen_cmd) {
      if (*gen_seed_opt) gen.seed = gen_seed;
      if (*gen_params_opt) gen.params_file = gen_params;
      out = cmd_gen_unitary(gen);
    } else if (*dec_cmd) {
      out = cmd_decompose(decompose_input);
    } else if (*bound_cmd) {
      const auto d = dims_pair(bound_dims);
      bound.d_a = d[0];
      bound.d_b = d[1];
      out = cmd_bound(bound_state, bound);
    } else if (*distill_cmd) {
      const auto d = dims_pair(distill_dims);
      dist.d_a = d[0];
      dist.d_b = d[1];
      out = cmd_distill(distill_state, dist);
    } else if (*fig1_cmd) {
      std::ofstream csv(scan_out);
      if (!csv) throw InputError("cannot write " + scan_out);
      write_scan_csv(csv, run_scan(scan));
      csv.flush();
      if (!csv) throw InputError("failed writing " + scan_out);
      return kExitOk;
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const uparam::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
