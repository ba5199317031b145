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

#ifndef MAGICLAB_DMRG_HPP_
#define MAGICLAB_DMRG_HPP_

#include <cstdint>
#include <vector>

#include "magiclab/mpo.hpp"
#include "magiclab/mps.hpp"

namespace magiclab {

struct DmrgOptions {
  // Local eigenproblems: Lanczos with full reorthogonalization.
  int lanczos_max_iter = 30;
  double lanczos_tolerance = 1e-12;
  // Converged when the penalized energy changes by at most this much
  // between consecutive sweeps.
  double energy_tolerance = 1e-10;
  // Relative squared singular-value weight below which a two-site split
  // discards components.
  double svd_cutoff = 1e-12;
  // Bond dimension of the seeded random starting state; two-site updates
  // grow it toward chi_max.
  int initial_bond_dim = 8;
  std::uint64_t seed = 1;
};

struct MagnetizationReport {
  double c_expect = 0.0;          // <C>, C = sum_j sz_j
  double c_squared_expect = 0.0;  // <C^2>; sector leakage when not ~0
};

struct DmrgResult {
  MPS ground_state;
  // <H_XXZ> of the final state, without the penalty term.
  double energy = 0.0;
  // Variational energy of H_XXZ + lambda C^2 at the last sweep.
  double energy_penalized = 0.0;
  MagnetizationReport magnetization;
  // Penalized energy after each completed sweep; decreases monotonically.
  std::vector<double> sweep_energies;
  int sweeps_used = 0;
  // False when num_sweeps ran out with the energy still moving by more
  // than energy_tolerance; the last iterate is still returned.
  bool converged = false;
  // Gap between the two lowest Ritz values of the final local problem;
  // a near-zero value flags ground-state degeneracy.
  double final_local_gap = 0.0;
};

// Variational ground state of H_XXZ + penalty_lambda * C^2 by two-site
// DMRG; the penalty drives the state into the C = 0 (half-filling) sector.
// Requires n_qubits even and >= 2, chi_max >= 1, num_sweeps >= 1.  Runs a
// deterministic schedule from a seeded random start; non-convergence is a
// warning (converged = false), not an error.
DmrgResult dmrg_ground_state(int n_qubits, double delta, int chi_max,
                             int num_sweeps, double penalty_lambda = 0.5,
                             const DmrgOptions& options = {});

}  // namespace magiclab

#endif  // MAGICLAB_DMRG_HPP_
