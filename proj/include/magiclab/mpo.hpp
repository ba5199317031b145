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

#ifndef MAGICLAB_MPO_HPP_
#define MAGICLAB_MPO_HPP_

#include <vector>

#include <Eigen/Dense>

#include "magiclab/common.hpp"
#include "magiclab/mps.hpp"

namespace magiclab {

// One site of a matrix product operator: an operator-valued matrix with
// bond indices (left, right) and a 2x2 physical block per entry.
struct MPOSite {
  int left_dim = 1;
  int right_dim = 1;
  std::vector<Eigen::Matrix2cd> ops;  // entry (a, b) at a * right_dim + b

  MPOSite() = default;
  MPOSite(int left, int right)
      : left_dim(left),
        right_dim(right),
        ops(static_cast<std::size_t>(left * right),
            Eigen::Matrix2cd::Zero()) {}

  Eigen::Matrix2cd& op(int a, int b) {
    return ops[static_cast<std::size_t>(a * right_dim + b)];
  }
  const Eigen::Matrix2cd& op(int a, int b) const {
    return ops[static_cast<std::size_t>(a * right_dim + b)];
  }
};

struct MPO {
  std::vector<MPOSite> sites;  // site k (1-based) at index k - 1

  int n_qubits() const { return static_cast<int>(sites.size()); }
  const MPOSite& site(int k) const {
    return sites[static_cast<std::size_t>(k - 1)];
  }
};

// XXZ chain with open boundaries,
//   H = -sum_{j=1}^{N-1} (sx_j sx_{j+1} + sy_j sy_{j+1} + delta sz_j sz_{j+1}),
// bond dimension 5.  Requires n_qubits >= 2.
MPO xxz_mpo(int n_qubits, double delta);

// C = sum_j sz_j, bond dimension 2.
MPO total_z_mpo(int n_qubits);

// C^2, bond dimension 3.
MPO total_z_squared_mpo(int n_qubits);

// H + penalty_lambda * C^2, bond dimension 6.  The penalty biases the
// variational search into the C = 0 sector.
MPO xxz_penalized_mpo(int n_qubits, double delta, double penalty_lambda);

// <Psi|O|Psi> by environment contraction, cost O(N D^2 chi^3).
cplx mpo_expectation(const MPO& op, const MPS& mps);

// Dense 2^N x 2^N matrix of the operator (N <= 10), basis-ordered with
// site 1 as the most significant bit.
Eigen::MatrixXcd mpo_to_dense_matrix(const MPO& op);

}  // namespace magiclab

#endif  // MAGICLAB_MPO_HPP_
