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

#ifndef MAGICLAB_PROTOCOLS_HPP_
#define MAGICLAB_PROTOCOLS_HPP_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "magiclab/dense_state.hpp"

namespace magiclab {

// A single-site computational-basis measurement followed by an
// outcome-conditioned Clifford circuit.
struct FeedbackProtocol {
  int measured_site = 1;
  std::array<Circuit, 2> feedback;  // indexed by measurement outcome
};

// True when every gate is a named gate or CZ (Clifford by construction).
bool is_clifford_circuit(const Circuit& circuit);

// The deterministic four-qubit protocol: measure site 1; on outcome 1 do
// nothing; on outcome 0 apply U = V2 V1 with
//   V1 = X1 (x) ((X2 - Y2)/sqrt(2))   as the gate word X1, X2, H2, S2, H2, S2, H2
//   V2 = X3 . CZ34 . X3.
// On the input phi_star both branches output psi_star = |1> (x) chi_star.
FeedbackProtocol build_counterexample_protocol();

struct ProtocolBranch {
  int outcome = 0;
  double probability = 0.0;
  DenseState state;  // post-measurement state with feedback applied

  ProtocolBranch() : state(1) {}
};

// All measurement branches with their feedback circuits applied; branches
// below kBranchProbFloor are omitted.
std::vector<ProtocolBranch> run_all_branches(const FeedbackProtocol& protocol,
                                             const DenseState& input);

// Samples one branch by the Born rule and returns its output state.
DenseState run_protocol(const FeedbackProtocol& protocol,
                        const DenseState& input, std::mt19937_64& rng);

// The curve n -> M_n(input) - M_n(output) for the counterexample protocol,
// computed as M_n(phi_star) - M_n(chi_star) (the deterministic output is
// psi_star = |1> (x) chi_star, and M_n is additive with M_n(|1>) = 0).
// Negative values at n < 2 witness that M_n increases under the protocol.
// Grid values must lie in [0, 15].
struct DeltaMPoint {
  double renyi_index = 0.0;
  double delta_m = 0.0;
};

std::vector<DeltaMPoint> delta_m_curve(const std::vector<double>& n_grid);

// Strong-monotonicity functional for measuring `site`:
//   Delta_n = M_n(psi) - sum_a p_a M_n(psi_a).
// Branches below kBranchProbFloor contribute 0.  A negative value
// certifies a strong-monotonicity violation.
double strong_mono_functional(const DenseState& state, double n, int site);

// Random-restart gradient search minimizing Delta_n (site 1) over pure
// states of n_qubits <= 5 qubits.  Restarts use independently derived
// RNG streams from the root seed; the reported result is the minimum with
// restart-index tie-break, so the outcome is reproducible at any thread
// count.
struct ViolationSearchResult {
  DenseState state;
  double delta_n = 0.0;
  double renyi_index = 0.0;
  int restarts_used = 0;
  bool converged = false;
  int best_restart = -1;
  // Echo of the search hyperparameters.
  int max_iters = 0;
  double step_size = 0.0;
  std::uint64_t seed = 0;

  ViolationSearchResult() : state(1) {}
};

ViolationSearchResult gradient_search(int n_qubits, double n, int restarts,
                                      int max_iters, double step_size,
                                      std::uint64_t seed);

// JSON serialization: full state vector plus hyperparameters, and a
// rounding aid listing for each amplitude the nearest point of the grid
// {a + b i : a, b in {0, +-1, +-sqrt(2), +-2}} / (2 sqrt(6)).
std::string violation_search_result_to_json(const ViolationSearchResult& r);

// Strong-monotonicity gap for the symmetric family psi_eps:
//   lhs = M_n(psi_eps),  rhs = p_1 (N-1) M_n(chi),  gap = lhs - rhs.
// gap < 0 certifies a violation.  The closed-form path evaluates the
// lhs analytically (N <= 60); the dense path requires N <= 14.
enum class GapMethod { kAuto, kDense, kClosedForm };

struct StrongMonoGap {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double p1 = 0.0;
  bool used_dense = false;
};

StrongMonoGap psi_eps_strong_mono_gap(int n_qubits, double eps, double n,
                                      GapMethod method = GapMethod::kAuto);

// || U|psi> - e^{i theta}|psi> ||_2 minimized over the global phase theta,
// which equals sqrt(2 - 2 |<psi|U|psi>|).
double clifford_eigenstate_residual(const DenseState& state,
                                    const Circuit& circuit);

}  // namespace magiclab

#endif  // MAGICLAB_PROTOCOLS_HPP_
