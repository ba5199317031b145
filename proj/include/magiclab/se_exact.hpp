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

#ifndef MAGICLAB_SE_EXACT_HPP_
#define MAGICLAB_SE_EXACT_HPP_

#include <cstddef>
#include <vector>

#include "magiclab/dense_state.hpp"

namespace magiclab {

// A stabilizer entropy value M_n.
struct SEValue {
  double renyi_index = 0.0;
  double value = 0.0;
  int n_qubits = 0;
};

// Exact Renyi stabilizer entropy of order n (n >= 0, n != 1):
//   M_n = (1-n)^{-1} log( sum_P <psi|P|psi>^{2n} / 2^N )
// with the natural logarithm.  n = 0 is the Hartley limit: the number of
// Pauli strings with |<psi|P|psi>| > kSupportThreshold replaces the power
// sum.  Throws std::invalid_argument at n = 1 (call von_neumann_se).
SEValue renyi_se(const DenseState& state, double n);

// Von Neumann limit n -> 1:
//   M_1 = -sum_P Xi_P log Xi_P - N log 2,  with 0 log 0 := 0.
SEValue von_neumann_se(const DenseState& state);

// Dispatcher: von_neumann_se at n == 1, renyi_se otherwise.
SEValue m_n(const DenseState& state, double n);

// One SEValue per grid point, from a single pass over the 4^N Pauli
// expectations.
std::vector<SEValue> se_curve(const DenseState& state,
                              const std::vector<double>& n_grid);

// Closed form for the single-qubit state Omega(s) = cos(s)|0> + sin(s)|1>:
// the nonzero Pauli expectations are <I> = 1, <X> = sin(2s), <Z> = cos(2s),
// so for n not in {0, 1}
//   M_n(Omega(s)) = (1-n)^{-1} log[(1 + |sin 2s|^{2n} + |cos 2s|^{2n}) / 2].
// The n = 0 and n = 1 limits use the same conventions as renyi_se and
// von_neumann_se.
double omega_m_n_closed(double s, double n);

// Least-squares fit of log M_n(Omega(s)) against log s over the grid.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> used_s;  // grid points that survived the underflow cut
};

// Fits the small-s scaling exponent of M_n(Omega(s)).  Grid points where
// M_n < 1e-14 are dropped (underflow guard); throws std::domain_error if
// fewer than two usable points remain.  Requires s in (0, 0.2] and at
// least 5 grid points.
ScalingFit omega_scaling_fit(double n, const std::vector<double>& s_grid);

}  // namespace magiclab

#endif  // MAGICLAB_SE_EXACT_HPP_
