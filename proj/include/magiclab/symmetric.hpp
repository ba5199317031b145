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

#ifndef MAGICLAB_SYMMETRIC_HPP_
#define MAGICLAB_SYMMETRIC_HPP_

namespace magiclab {

// Closed-form stabilizer-entropy evaluation for the permutation-symmetric
// family
//   |psi_eps> = (|0>^{x N} + eps |chi>^{x N}) / sqrt(N_eps)
// where chi is the single-qubit state with Bloch vector (1,1,1)/sqrt(3),
// written as cos(beta)|0> + e^{i pi/4} sin(beta)|1> with
// beta = arccos(1/sqrt(3)) / 2.

struct SymmetricSEInput {
  int n_qubits = 1;  // N, up to 200
  double eps = 0.0;  // family parameter, >= 0
  double n = 2.0;    // Renyi index, >= 0 and != 1 for the closed form
};

// Normalization N_eps = 1 + eps^2 + 2 eps cos(beta)^N cos(N pi / 4).
double psi_eps_normalization(int n_qubits, double eps);

// Probability of outcome 1 when measuring site 1 of |psi_eps>:
//   p_1 = eps^2 sin^2(beta) / N_eps.
double psi_eps_p1(int n_qubits, double eps);

// G_n = 2^{-N} sum over Pauli type counts (N_x, N_y, N_z) of the
// multinomial coefficient times |bracket|^{2n}, where bracket is the
// common Pauli expectation of that type class:
//   [ delta_{N_x,0} delta_{N_y,0}
//     + eps^2 3^{-(N_x+N_y+N_z)/2}
//     + 2 eps sin(beta)^{N_x+N_y} cos(beta)^{N-N_x-N_y}
//           cos(pi (N - N_x + N_y)/4) ] / N_eps.
// Multinomials are evaluated through log-gamma, so N up to 200 is exact to
// working precision without overflow.
double g_n_closed_form(const SymmetricSEInput& input);

// M_n(psi_eps) = log(G_n) / (1 - n); requires n != 1.
double m_n_psi_eps(const SymmetricSEInput& input);

// Asymptotic bound constant c_n(eps) = 2n/(n-1) log(1 + eps^2), n > 1.
double bound_c(double n, double eps);

// Closed form for the single-qubit chi state (Xi values 1/2, 1/6, 1/6,
// 1/6), covering n = 0, n = 1, and general n.
double chi_m_n_closed(double n);

}  // namespace magiclab

#endif  // MAGICLAB_SYMMETRIC_HPP_
