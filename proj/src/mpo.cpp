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

#include "magiclab/mpo.hpp"

#include <stdexcept>
#include <utility>

namespace magiclab {

namespace {

constexpr int kMaxDenseOperatorQubits = 10;

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

Eigen::Matrix2cd identity2() { return Eigen::Matrix2cd::Identity(); }

// Operator-valued bulk transition matrix, as a dense D x D grid of 2x2
// blocks; entry (a, b) at index a * D + b.
using BulkGrid = std::vector<Eigen::Matrix2cd>;

// Assembles an open-boundary MPO from one bulk grid: site 1 takes row 0,
// site N takes the last column, middle sites take the full grid.
MPO assemble_from_bulk(int n_qubits, int bond_dim, const BulkGrid& bulk) {
  if (n_qubits < 1) {
    throw std::invalid_argument("mpo: n_qubits must be >= 1");
  }
  auto bulk_op = [&](int a, int b) -> const Eigen::Matrix2cd& {
    return bulk[static_cast<std::size_t>(a * bond_dim + b)];
  };
  MPO mpo;
  mpo.sites.reserve(static_cast<std::size_t>(n_qubits));
  for (int k = 1; k <= n_qubits; ++k) {
    const bool first = (k == 1);
    const bool last = (k == n_qubits);
    MPOSite site(first ? 1 : bond_dim, last ? 1 : bond_dim);
    for (int a = 0; a < site.left_dim; ++a) {
      for (int b = 0; b < site.right_dim; ++b) {
        const int row = first ? 0 : a;
        const int col = last ? bond_dim - 1 : b;
        site.op(a, b) = bulk_op(row, col);
      }
    }
    mpo.sites.push_back(std::move(site));
  }
  return mpo;
}

}  // namespace

MPO xxz_mpo(int n_qubits, double delta) {
  if (n_qubits < 2) {
    throw std::invalid_argument("xxz_mpo: n_qubits must be >= 2");
  }
  constexpr int kDim = 5;
  BulkGrid bulk(kDim * kDim, Eigen::Matrix2cd::Zero());
  auto at = [&](int a, int b) -> Eigen::Matrix2cd& {
    return bulk[static_cast<std::size_t>(a * kDim + b)];
  };
  at(0, 0) = identity2();
  at(0, 1) = pauli_x();
  at(0, 2) = pauli_y();
  at(0, 3) = pauli_z();
  at(1, 4) = -pauli_x();
  at(2, 4) = -pauli_y();
  at(3, 4) = -delta * pauli_z();
  at(4, 4) = identity2();
  return assemble_from_bulk(n_qubits, kDim, bulk);
}

MPO total_z_mpo(int n_qubits) {
  constexpr int kDim = 2;
  BulkGrid bulk(kDim * kDim, Eigen::Matrix2cd::Zero());
  auto at = [&](int a, int b) -> Eigen::Matrix2cd& {
    return bulk[static_cast<std::size_t>(a * kDim + b)];
  };
  at(0, 0) = identity2();
  at(0, 1) = pauli_z();
  at(1, 1) = identity2();
  return assemble_from_bulk(n_qubits, kDim, bulk);
}

MPO total_z_squared_mpo(int n_qubits) {
  constexpr int kDim = 3;
  BulkGrid bulk(kDim * kDim, Eigen::Matrix2cd::Zero());
  auto at = [&](int a, int b) -> Eigen::Matrix2cd& {
    return bulk[static_cast<std::size_t>(a * kDim + b)];
  };
  at(0, 0) = identity2();
  at(0, 1) = 2.0 * pauli_z();
  at(0, 2) = identity2();  // the N * I part of C^2
  at(1, 1) = identity2();
  at(1, 2) = pauli_z();
  at(2, 2) = identity2();
  return assemble_from_bulk(n_qubits, kDim, bulk);
}

MPO xxz_penalized_mpo(int n_qubits, double delta, double penalty_lambda) {
  if (n_qubits < 2) {
    throw std::invalid_argument("xxz_penalized_mpo: n_qubits must be >= 2");
  }
  constexpr int kDim = 6;
  BulkGrid bulk(kDim * kDim, Eigen::Matrix2cd::Zero());
  auto at = [&](int a, int b) -> Eigen::Matrix2cd& {
    return bulk[static_cast<std::size_t>(a * kDim + b)];
  };
  at(0, 0) = identity2();
  at(0, 1) = pauli_x();
  at(0, 2) = pauli_y();
  at(0, 3) = pauli_z();
  at(0, 4) = 2.0 * penalty_lambda * pauli_z();
  at(0, 5) = penalty_lambda * identity2();  // the lambda * N * I part of C^2
  at(1, 5) = -pauli_x();
  at(2, 5) = -pauli_y();
  at(3, 5) = -delta * pauli_z();
  at(4, 4) = identity2();
  at(4, 5) = pauli_z();
  at(5, 5) = identity2();
  return assemble_from_bulk(n_qubits, kDim, bulk);
}

cplx mpo_expectation(const MPO& op, const MPS& mps) {
  if (op.n_qubits() != mps.n_qubits()) {
    throw std::invalid_argument("mpo_expectation: qubit counts differ");
  }
  if (op.n_qubits() == 0) {
    throw std::invalid_argument("mpo_expectation: empty operator");
  }
  std::vector<Eigen::MatrixXcd> env(1, Eigen::MatrixXcd::Ones(1, 1));
  for (int k = 1; k <= op.n_qubits(); ++k) {
    const MPOSite& w = op.site(k);
    const auto& a = mps.site(k);
    if (static_cast<int>(env.size()) != w.left_dim) {
      throw std::invalid_argument(
          "mpo_expectation: MPO bond dimensions do not chain");
    }
    const Eigen::Index chi_r = a[0].cols();
    std::vector<Eigen::MatrixXcd> next(
        static_cast<std::size_t>(w.right_dim),
        Eigen::MatrixXcd::Zero(chi_r, chi_r));
    for (int wl = 0; wl < w.left_dim; ++wl) {
      const Eigen::MatrixXcd b0 = env[static_cast<std::size_t>(wl)] * a[0];
      const Eigen::MatrixXcd b1 = env[static_cast<std::size_t>(wl)] * a[1];
      for (int wr = 0; wr < w.right_dim; ++wr) {
        const Eigen::Matrix2cd& block = w.op(wl, wr);
        if (block.isZero(0.0)) continue;
        for (int sp = 0; sp < 2; ++sp) {
          const Eigen::MatrixXcd adag =
              a[static_cast<std::size_t>(sp)].adjoint();
          for (int s = 0; s < 2; ++s) {
            const cplx coeff = block(sp, s);
            if (coeff == cplx(0, 0)) continue;
            next[static_cast<std::size_t>(wr)].noalias() +=
                coeff * (adag * (s == 0 ? b0 : b1));
          }
        }
      }
    }
    env = std::move(next);
  }
  if (env.size() != 1) {
    throw std::runtime_error("mpo_expectation: contraction did not close");
  }
  return env[0](0, 0);
}

Eigen::MatrixXcd mpo_to_dense_matrix(const MPO& op) {
  const int n = op.n_qubits();
  if (n < 1) {
    throw std::invalid_argument("mpo_to_dense_matrix: empty operator");
  }
  if (n > kMaxDenseOperatorQubits) {
    throw std::length_error("mpo_to_dense_matrix: supports at most 10 qubits");
  }
  std::vector<Eigen::MatrixXcd> partial(1, Eigen::MatrixXcd::Ones(1, 1));
  for (int k = 1; k <= n; ++k) {
    const MPOSite& w = op.site(k);
    if (static_cast<int>(partial.size()) != w.left_dim) {
      throw std::invalid_argument(
          "mpo_to_dense_matrix: MPO bond dimensions do not chain");
    }
    const Eigen::Index dim = partial[0].rows() * 2;
    std::vector<Eigen::MatrixXcd> next(static_cast<std::size_t>(w.right_dim),
                                       Eigen::MatrixXcd::Zero(dim, dim));
    for (int wl = 0; wl < w.left_dim; ++wl) {
      const Eigen::MatrixXcd& p = partial[static_cast<std::size_t>(wl)];
      for (int wr = 0; wr < w.right_dim; ++wr) {
        const Eigen::Matrix2cd& block = w.op(wl, wr);
        if (block.isZero(0.0)) continue;
        auto& target = next[static_cast<std::size_t>(wr)];
        for (Eigen::Index i = 0; i < p.rows(); ++i) {
          for (Eigen::Index j = 0; j < p.cols(); ++j) {
            if (p(i, j) == cplx(0, 0)) continue;
            target.block(i * 2, j * 2, 2, 2) += p(i, j) * block;
          }
        }
      }
    }
    partial = std::move(next);
  }
  if (partial.size() != 1) {
    throw std::runtime_error("mpo_to_dense_matrix: contraction did not close");
  }
  return partial[0];
}

}  // namespace magiclab
