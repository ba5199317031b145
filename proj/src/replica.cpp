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

#include "magiclab/replica.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace magiclab {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Pauli matrices sigma^alpha[s', s] for alpha = I, X, Y, Z.
std::array<Eigen::Matrix2cd, 4> pauli_matrices() {
  std::array<Eigen::Matrix2cd, 4> sigma;
  sigma[0] << 1, 0, 0, 1;
  sigma[1] << 0, 1, 1, 0;
  sigma[2] << 0, cplx(0, -1), cplx(0, 1), 0;
  sigma[3] << 1, 0, 0, -1;
  return sigma;
}

// Single-Pauli transfer matrix of one site: rows index the (bra, ket) pair
// of left bonds, columns the pair of right bonds,
//   T[(a,b),(c,d)] = sum_{s',s} sigma[s',s] conj(A^{s'}[a,c]) A^{s}[b,d].
Eigen::MatrixXcd pauli_transfer(const MPS::SiteTensor& site,
                                const Eigen::Matrix2cd& sigma) {
  const Eigen::Index chi_l = site[0].rows();
  const Eigen::Index chi_r = site[0].cols();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(chi_l * chi_l, chi_r * chi_r);
  for (int sp = 0; sp < 2; ++sp) {
    for (int s = 0; s < 2; ++s) {
      const cplx coeff = sigma(sp, s);
      if (coeff == cplx(0, 0)) continue;
      const Eigen::MatrixXcd bra =
          site[static_cast<std::size_t>(sp)].conjugate();
      const Eigen::MatrixXcd& ket = site[static_cast<std::size_t>(s)];
      for (Eigen::Index a = 0; a < chi_l; ++a) {
        for (Eigen::Index c = 0; c < chi_r; ++c) {
          t.block(a * chi_l, c * chi_r, chi_l, chi_r) +=
              coeff * bra(a, c) * ket;
        }
      }
    }
  }
  return t;
}

// Contracts the transfer matrix into the leading tensor index and rotates
// that index to the back, so that 2n applications restore the index order.
void apply_and_rotate(const std::vector<cplx>& in, Eigen::Index lead_dim,
                      const Eigen::MatrixXcd& t, std::vector<cplx>& out) {
  const Eigen::Index rest =
      static_cast<Eigen::Index>(in.size()) / lead_dim;
  out.resize(static_cast<std::size_t>(rest * t.cols()));
  Eigen::Map<const RowMajorMatrix> m(in.data(), lead_dim, rest);
  Eigen::Map<RowMajorMatrix> o(out.data(), rest, t.cols());
  o.noalias() = m.transpose() * t;
}

}  // namespace

double replica_m_n(const MPS& mps, int n, const ReplicaOptions& options) {
  if (n < 2 || n > 4) {
    throw std::invalid_argument(
        "replica_m_n: the replica contraction supports integer n in "
        "{2, 3, 4}");
  }
  const int n_qubits = mps.n_qubits();
  if (n_qubits == 0) {
    throw std::invalid_argument("replica_m_n: empty state");
  }
  const double norm_defect = std::abs(mps.norm() - 1.0);
  if (norm_defect > 1e-6) {
    throw std::invalid_argument(
        "replica_m_n: input MPS must be normalized (defect " +
        format_g17(norm_defect) + ")");
  }

  const int copies = 2 * n;
  const int chi_max = mps.max_bond_dim();
  const double pair_dim = static_cast<double>(chi_max) * chi_max;
  const double env_entries = std::pow(pair_dim, copies);
  const double required_bytes = 4.0 * 16.0 * env_entries;
  if (required_bytes > static_cast<double>(options.memory_budget_bytes)) {
    throw resource_error(
        "replica_m_n: reduce the bond dimension or raise the memory budget",
        static_cast<std::size_t>(required_bytes),
        static_cast<std::size_t>(options.memory_budget_bytes));
  }

  const auto sigma = pauli_matrices();
  std::vector<cplx> env(1, cplx(1, 0));
  std::vector<cplx> next;
  std::vector<cplx> work;
  std::vector<cplx> work_out;
  for (int k = 1; k <= n_qubits; ++k) {
    const auto& site = mps.site(k);
    const Eigen::Index lead = site[0].rows() * site[0].rows();
    const Eigen::Index out_dim = site[0].cols() * site[0].cols();
    std::size_t out_size = 1;
    for (int c = 0; c < copies; ++c) {
      out_size *= static_cast<std::size_t>(out_dim);
    }
    next.assign(out_size, cplx(0, 0));
    for (int alpha = 0; alpha < 4; ++alpha) {
      const Eigen::MatrixXcd t =
          pauli_transfer(site, sigma[static_cast<std::size_t>(alpha)]);
      work = env;
      for (int c = 0; c < copies; ++c) {
        apply_and_rotate(work, lead, t, work_out);
        work.swap(work_out);
      }
      for (std::size_t i = 0; i < out_size; ++i) {
        next[i] += work[i];
      }
    }
    for (auto& v : next) v *= 0.5;
    env.swap(next);
  }

  if (env.size() != 1) {
    throw std::runtime_error("replica_m_n: contraction did not close");
  }
  const double moment = env[0].real();
  if (!std::isfinite(moment) || moment <= 0.0) {
    throw std::runtime_error("replica_m_n: non-positive Pauli moment " +
                             format_g17(moment));
  }
  return std::log(moment) / (1.0 - static_cast<double>(n));
}

}  // namespace magiclab
