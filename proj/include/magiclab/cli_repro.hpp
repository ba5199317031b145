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

#ifndef MAGICLAB_CLI_REPRO_HPP_
#define MAGICLAB_CLI_REPRO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace magiclab {

// Seed used by every randomized subcommand unless --seed is given.
inline constexpr std::uint64_t kDefaultSeed = 20260816;

// One parsed invocation.  Empty vectors and negative scalars mean "use the
// profile default"; each subcommand documents which fields it reads.
struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path output_dir = ".";
  std::string profile = "desk";  // "desk" or "paper"

  std::vector<double> n_grid;     // --n-grid
  double eps = -1.0;              // --eps
  std::vector<double> delta_list; // --delta
  std::vector<int> chi_list;      // --chi
  std::int64_t samples = -1;      // --samples
  int restarts = -1;              // --restarts
  int n_max = -1;                 // --nmax
};

// Parses a comma-separated list whose entries are numbers or lo:hi:step
// ranges (both endpoints included, within 1e-9 of the step grid), e.g.
// "0:15:0.05" or "0.5,2,3" or "2".  Throws std::invalid_argument on
// malformed input, step <= 0, or hi < lo.
std::vector<double> parse_value_list(const std::string& text);

// Subcommands.  Each writes its output file(s) under config.output_dir
// (created if missing), prints a one-line summary to stdout, and returns a
// process exit code: 0 success, 1 violation of a proven inequality.
// Invalid configurations throw std::invalid_argument; IO failures throw
// std::runtime_error.  All randomness derives from config.seed, so outputs
// are identical across runs and thread counts.

// fig1_deltam.csv: the curve n -> M_n(input) - M_n(output) for the
// four-qubit counterexample protocol over the --n-grid (default
// 0:15:0.05, 301 rows).
int cmd_fig1_deltam(const RunConfig& config);

// fig2_xxz.csv: per anisotropy delta, the XXZ ground state via DMRG, then
// the sampled m1 density (with standard error) and the replica m2 density.
// Desk profile: N=16, chi=20, S=1e4, delta in -1:0.25:1.  Paper profile:
// N=32, chi=40, S=1e5, delta in -1:0.25:3.  Overrides: --nmax (N, must be
// even), --chi (DMRG bond dimension), --samples, --delta (list syntax).
int cmd_fig2_xxz(const RunConfig& config);

// fig3_bound.csv: closed-form M_n of the symmetric family per qubit number
// N = 1..N_max next to the constant bound 2n/(n-1) log(1 + eps^2).
// Defaults eps=0.5, n=2, N_max=60; overrides --eps, --n-grid (single
// value, must be > 1), --nmax.
int cmd_fig3_bound(const RunConfig& config);

// fig4_sampling_error.csv: per sample budget S, the mean over instances of
// |m1_hat(S) - m1_ref|, where m1_hat(S) is the prefix mean of the first S
// of S_ref samples and m1_ref is the full S_ref = 1e5 mean of the same
// run.  Desk profile: N=10, chi=24 (DMRG) compressed to chi=8 for
// sampling, 24 instances; paper profile: N=32, chi=40 compressed to
// chi=12, 100 instances.  S grid {100, 1000, 10000}.  Overrides: --nmax
// (N), --delta (anisotropy, default 0.95), --chi (DMRG bond dimension),
// --samples (S_ref, must be >= 2 x the largest grid point), --restarts
// (instances).
int cmd_fig4_sampling_error(const RunConfig& config);

// fig6_bond.csv: per DMRG bond dimension chi, the sampled m1 density, the
// replica m2 density, and the fidelity to a reference run at chi_ref;
// the reference run is appended as the last row.  Desk profile: N=12,
// chi_list {2,3,4,5,6}, chi_ref=8, S=1e4; paper profile: N=32, chi_list
// {2,3,4,5,6,8}, chi_ref=32, S=1e5.  Rows with chi > 8 estimate m2 by
// sampling instead of the chi^{4n} replica contraction.  Overrides:
// --nmax (N), --delta (default 0.95), --chi (chi_list; chi_ref stays at
// the profile value and must be >= max of the list), --samples.
int cmd_fig6_bond(const RunConfig& config);

// check_inequalities.json: draws random pure states, round-robin over the
// qubit numbers {1, 2, 3}, and checks the proven inequality chain
// (D_min <= LR, M_n <= 2 LR for n >= 1/2, M_n <= 2n/(n-1) D_min for
// n > 1) at every index in the n list.  Records the worst slack per
// inequality and every violation below -1e-8.  Returns 1 if any violation
// was found.  Defaults: 500 states, n list {0.5, 2, 3}; overrides
// --samples (state count), --n-grid (n list), --nmax (single qubit
// number <= 3 instead of the round-robin).
int cmd_check_inequalities(const RunConfig& config);

// search_violation.json: random-restart gradient search minimizing the
// strong-monotonicity functional Delta_n for a single-site measurement.
// Defaults N=4, n=1; desk profile 50 restarts with 800 iterations, paper
// profile 200 restarts with 2000 iterations.  Overrides: --nmax (N <= 5),
// --n-grid (single Renyi index), --restarts.  A negative best Delta_n is
// the sought outcome, not an error; the exit code is 0 either way.
int cmd_search_violation(const RunConfig& config);

// Dispatches config.subcommand and maps exceptions to exit codes:
// std::invalid_argument / std::length_error -> 2 (usage),
// resource_error and all other failures -> 3.
int run_subcommand(const RunConfig& config);

}  // namespace magiclab

#endif  // MAGICLAB_CLI_REPRO_HPP_
