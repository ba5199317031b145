// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magiclab/cli_repro.hpp"

namespace {

struct RawFlags {
  std::string n_grid;
  std::string delta;
  std::string chi;
};

// Registers the flag vocabulary shared by all subcommands; each subcommand
// documents which flags it reads and how list values are interpreted.
void add_common_flags(CLI::App* cmd, magiclab::RunConfig* config,
                      RawFlags* raw) {
  cmd->add_option("--seed", config->seed,
                  "root seed for every random choice");
  cmd->add_option("--out", config->output_dir,
                  "output directory (created if missing)");
  cmd->add_option("--profile", config->profile,
                  "parameter profile: desk (minutes) or paper (hours)")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--n-grid", raw->n_grid,
                  "Renyi index value, list, or lo:hi:step range");
  cmd->add_option("--eps", config->eps, "symmetric-family parameter")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--delta", raw->delta,
                  "XXZ anisotropy value, list, or lo:hi:step range");
  cmd->add_option("--chi", raw->chi,
                  "bond dimension value or list");
  cmd->add_option("--samples", config->samples,
                  "sample or state count (subcommand-specific)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--restarts", config->restarts,
                  "search restarts / sampling instances")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--nmax", config->n_max,
                  "qubit number or largest qubit number")
      ->check(CLI::PositiveNumber);
}

int to_chi(double value) {
  const int chi = static_cast<int>(value);
  if (static_cast<double>(chi) != value || chi < 1) {
    throw std::invalid_argument("--chi entries must be positive integers");
  }
  return chi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "magiclab: stabilizer entropies and nonstabilizerness monotones"};
  app.require_subcommand(1);

  magiclab::RunConfig config;
  RawFlags raw;

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"fig1-deltam",
       "curve n -> M_n(input) - M_n(output) for the measurement protocol"},
      {"fig2-xxz", "XXZ ground-state m1 (sampled) and m2 (replica) vs delta"},
      {"fig3-bound", "closed-form M_n of the symmetric family vs the bound"},
      {"fig4-sampling-error", "mean |m1_hat(S) - m1_ref| vs sample budget"},
      {"fig6-bond", "m1, m2, and fidelity-to-reference vs bond dimension"},
      {"check-inequalities",
       "fuzz the proven monotone inequalities on random states"},
      {"search-violation",
       "gradient search for strong-monotonicity violations"},
  };
  for (const auto& [name, help] : subcommands) {
    add_common_flags(app.add_subcommand(name, help), &config, &raw);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (!raw.n_grid.empty()) {
      config.n_grid = magiclab::parse_value_list(raw.n_grid);
    }
    if (!raw.delta.empty()) {
      config.delta_list = magiclab::parse_value_list(raw.delta);
    }
    if (!raw.chi.empty()) {
      for (const double value : magiclab::parse_value_list(raw.chi)) {
        config.chi_list.push_back(to_chi(value));
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  return magiclab::run_subcommand(config);
}
