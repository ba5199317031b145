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

#include "magiclab/dmrg.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace magiclab {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EnvBlocks = std::vector<Eigen::MatrixXcd>;

// Left environment extension: next[wr] = sum over wl, s', s of
// W[wl,wr](s',s) * A^{s'dagger} env[wl] A^{s}.
EnvBlocks extend_left(const EnvBlocks& env, const MPOSite& w,
                      const MPS::SiteTensor& a) {
  const Eigen::Index chi_r = a[0].cols();
  EnvBlocks next(static_cast<std::size_t>(w.right_dim),
                 Eigen::MatrixXcd::Zero(chi_r, chi_r));
  for (int wl = 0; wl < w.left_dim; ++wl) {
    const Eigen::MatrixXcd b0 = env[static_cast<std::size_t>(wl)] * a[0];
    const Eigen::MatrixXcd b1 = env[static_cast<std::size_t>(wl)] * a[1];
    for (int wr = 0; wr < w.right_dim; ++wr) {
      const Eigen::Matrix2cd& block = w.op(wl, wr);
      if (block.isZero(0.0)) continue;
      for (int sp = 0; sp < 2; ++sp) {
        const Eigen::MatrixXcd adag = a[static_cast<std::size_t>(sp)].adjoint();
        for (int s = 0; s < 2; ++s) {
          const cplx coeff = block(sp, s);
          if (coeff == cplx(0, 0)) continue;
          next[static_cast<std::size_t>(wr)].noalias() +=
              coeff * (adag * (s == 0 ? b0 : b1));
        }
      }
    }
  }
  return next;
}

// Right environment extension: next[wl] = sum over wr, s', s of
// W[wl,wr](s',s) * conj(A^{s'}) env[wr] A^{sT}.
EnvBlocks extend_right(const EnvBlocks& env, const MPOSite& w,
                       const MPS::SiteTensor& a) {
  const Eigen::Index chi_l = a[0].rows();
  EnvBlocks next(static_cast<std::size_t>(w.left_dim),
                 Eigen::MatrixXcd::Zero(chi_l, chi_l));
  for (int wr = 0; wr < w.right_dim; ++wr) {
    const Eigen::MatrixXcd b0 =
        env[static_cast<std::size_t>(wr)] * a[0].transpose();
    const Eigen::MatrixXcd b1 =
        env[static_cast<std::size_t>(wr)] * a[1].transpose();
    for (int wl = 0; wl < w.left_dim; ++wl) {
      const Eigen::Matrix2cd& block = w.op(wl, wr);
      if (block.isZero(0.0)) continue;
      for (int sp = 0; sp < 2; ++sp) {
        const Eigen::MatrixXcd abar =
            a[static_cast<std::size_t>(sp)].conjugate();
        for (int s = 0; s < 2; ++s) {
          const cplx coeff = block(sp, s);
          if (coeff == cplx(0, 0)) continue;
          next[static_cast<std::size_t>(wl)].noalias() +=
              coeff * (abar * (s == 0 ? b0 : b1));
        }
      }
    }
  }
  return next;
}

// Effective Hamiltonian of two neighboring sites between fixed
// environments.  The wavefunction is flattened with index
// ((a*2 + s1)*2 + s2)*chi_r + b.
struct TwoSiteProblem {
  const EnvBlocks* left = nullptr;
  const EnvBlocks* right = nullptr;
  const MPOSite* w1 = nullptr;
  const MPOSite* w2 = nullptr;
  Eigen::Index chi_l = 0;
  Eigen::Index chi_r = 0;

  Eigen::Index dim() const { return chi_l * 4 * chi_r; }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& theta) const {
    const Eigen::Index cols = 4 * chi_r;
    Eigen::Map<const RowMajorMatrix> m0(theta.data(), chi_l, cols);

    std::vector<RowMajorMatrix> x(
        static_cast<std::size_t>(w1->left_dim));
    for (int wl = 0; wl < w1->left_dim; ++wl) {
      x[static_cast<std::size_t>(wl)] =
          (*left)[static_cast<std::size_t>(wl)] * m0;
    }

    std::vector<RowMajorMatrix> y(
        static_cast<std::size_t>(w1->right_dim),
        RowMajorMatrix::Zero(chi_l, cols));
    for (int wl = 0; wl < w1->left_dim; ++wl) {
      for (int wm = 0; wm < w1->right_dim; ++wm) {
        const Eigen::Matrix2cd& block = w1->op(wl, wm);
        if (block.isZero(0.0)) continue;
        for (int sp = 0; sp < 2; ++sp) {
          for (int s = 0; s < 2; ++s) {
            const cplx coeff = block(sp, s);
            if (coeff == cplx(0, 0)) continue;
            y[static_cast<std::size_t>(wm)].middleCols(sp * 2 * chi_r,
                                                       2 * chi_r) +=
                coeff * x[static_cast<std::size_t>(wl)].middleCols(
                            s * 2 * chi_r, 2 * chi_r);
          }
        }
      }
    }

    std::vector<RowMajorMatrix> z(
        static_cast<std::size_t>(w2->right_dim),
        RowMajorMatrix::Zero(chi_l, cols));
    for (int wm = 0; wm < w2->left_dim; ++wm) {
      for (int wr = 0; wr < w2->right_dim; ++wr) {
        const Eigen::Matrix2cd& block = w2->op(wm, wr);
        if (block.isZero(0.0)) continue;
        for (int s1 = 0; s1 < 2; ++s1) {
          for (int sp = 0; sp < 2; ++sp) {
            for (int s = 0; s < 2; ++s) {
              const cplx coeff = block(sp, s);
              if (coeff == cplx(0, 0)) continue;
              z[static_cast<std::size_t>(wr)].middleCols(
                  s1 * 2 * chi_r + sp * chi_r, chi_r) +=
                  coeff * y[static_cast<std::size_t>(wm)].middleCols(
                              s1 * 2 * chi_r + s * chi_r, chi_r);
            }
          }
        }
      }
    }

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim());
    Eigen::Map<RowMajorMatrix> mo(out.data(), chi_l, cols);
    for (int wr = 0; wr < w2->right_dim; ++wr) {
      const Eigen::MatrixXcd rt =
          (*right)[static_cast<std::size_t>(wr)].transpose();
      for (int blk = 0; blk < 4; ++blk) {
        mo.middleCols(blk * chi_r, chi_r).noalias() +=
            z[static_cast<std::size_t>(wr)].middleCols(blk * chi_r, chi_r) *
            rt;
      }
    }
    return out;
  }
};

struct LanczosOutcome {
  Eigen::VectorXcd vector;
  double value = 0.0;
  double gap = 0.0;
};

// Smallest eigenpair of the (Hermitian) two-site problem by Lanczos with
// full reorthogonalization and warm start.
LanczosOutcome lanczos_ground(const TwoSiteProblem& problem,
                              const Eigen::VectorXcd& start, int max_iter,
                              double tolerance) {
  const Eigen::Index dim = problem.dim();
  Eigen::VectorXcd v = start;
  double nrm = v.norm();
  if (!(nrm > 1e-14)) {
    v = Eigen::VectorXcd::Ones(dim);
    nrm = v.norm();
  }
  v /= nrm;

  std::vector<Eigen::VectorXcd> basis;
  basis.push_back(v);
  std::vector<double> alphas;
  std::vector<double> betas;
  double prev_lambda = 0.0;
  bool have_prev = false;
  LanczosOutcome outcome;

  const int krylov_cap = static_cast<int>(
      std::min<Eigen::Index>(max_iter, dim));
  for (int j = 0; j < krylov_cap; ++j) {
    Eigen::VectorXcd w = problem.apply(basis[static_cast<std::size_t>(j)]);
    const double alpha =
        basis[static_cast<std::size_t>(j)].dot(w).real();
    alphas.push_back(alpha);

    w -= alpha * basis[static_cast<std::size_t>(j)];
    if (j > 0) {
      w -= betas[static_cast<std::size_t>(j - 1)] *
           basis[static_cast<std::size_t>(j - 1)];
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        w -= b.dot(w) * b;
      }
    }

    const int m = j + 1;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      tri(i, i) = alphas[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        tri(i, i + 1) = betas[static_cast<std::size_t>(i)];
        tri(i + 1, i) = betas[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const double lambda = es.eigenvalues()(0);
    outcome.value = lambda;
    outcome.gap = m > 1 ? es.eigenvalues()(1) - lambda : 0.0;
    Eigen::VectorXcd theta = Eigen::VectorXcd::Zero(dim);
    for (int i = 0; i < m; ++i) {
      theta += cplx(es.eigenvectors()(i, 0), 0.0) *
               basis[static_cast<std::size_t>(i)];
    }
    outcome.vector = theta;

    const double beta = w.norm();
    const bool value_converged =
        have_prev &&
        std::abs(lambda - prev_lambda) <= tolerance * (1.0 + std::abs(lambda));
    prev_lambda = lambda;
    have_prev = true;
    if (value_converged || beta <= 1e-14 || m >= dim) break;
    betas.push_back(beta);
    basis.push_back(w / beta);
  }

  const double vec_norm = outcome.vector.norm();
  if (!(vec_norm > 0.0)) {
    throw std::runtime_error("dmrg: Lanczos produced a zero vector");
  }
  outcome.vector /= vec_norm;
  return outcome;
}

// Two-site wavefunction from neighboring MPS tensors.
Eigen::VectorXcd merge_two_sites(const MPS::SiteTensor& a1,
                                 const MPS::SiteTensor& a2) {
  const Eigen::Index chi_l = a1[0].rows();
  const Eigen::Index chi_r = a2[0].cols();
  Eigen::VectorXcd theta(chi_l * 4 * chi_r);
  Eigen::Map<RowMajorMatrix> m(theta.data(), chi_l, 4 * chi_r);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      m.middleCols((s1 * 2 + s2) * chi_r, chi_r) =
          a1[static_cast<std::size_t>(s1)] * a2[static_cast<std::size_t>(s2)];
    }
  }
  return theta;
}

int svd_keep_count(const Eigen::VectorXd& sigma, int chi_max, double cutoff) {
  const double total = sigma.squaredNorm();
  int keep = std::min<int>(chi_max, static_cast<int>(sigma.size()));
  while (keep > 1) {
    const double w = sigma(keep - 1) * sigma(keep - 1);
    if (w > cutoff * total) break;
    --keep;
  }
  return keep;
}

// Splits the optimized two-site wavefunction back into site tensors.  The
// isometry goes on the side the sweep is leaving; the kept singular values
// are renormalized so the state stays normalized.
void split_two_sites(const Eigen::VectorXcd& theta, Eigen::Index chi_l,
                     Eigen::Index chi_r, int chi_max, double cutoff,
                     bool move_right, MPS::SiteTensor& a1,
                     MPS::SiteTensor& a2) {
  Eigen::Map<const RowMajorMatrix> m(theta.data(), chi_l, 4 * chi_r);
  Eigen::MatrixXcd grid(chi_l * 2, 2 * chi_r);
  for (int s1 = 0; s1 < 2; ++s1) {
    for (Eigen::Index a = 0; a < chi_l; ++a) {
      for (int s2 = 0; s2 < 2; ++s2) {
        grid.block(a * 2 + s1, s2 * chi_r, 1, chi_r) =
            m.block(a, (s1 * 2 + s2) * chi_r, 1, chi_r);
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      grid, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd sigma = svd.singularValues();
  const int keep = svd_keep_count(sigma, chi_max, cutoff);
  Eigen::VectorXd kept = sigma.head(keep);
  const double kept_norm = kept.norm();
  if (!(kept_norm > 0.0)) {
    throw std::runtime_error("dmrg: two-site split lost all weight");
  }
  kept /= kept_norm;

  Eigen::MatrixXcd u = svd.matrixU().leftCols(keep);
  Eigen::MatrixXcd vd = svd.matrixV().leftCols(keep).adjoint();
  if (move_right) {
    vd = kept.asDiagonal() * vd;
  } else {
    u = u * kept.asDiagonal();
  }
  for (int s1 = 0; s1 < 2; ++s1) {
    Eigen::MatrixXcd t(chi_l, keep);
    for (Eigen::Index a = 0; a < chi_l; ++a) {
      t.row(a) = u.row(a * 2 + s1);
    }
    a1[static_cast<std::size_t>(s1)] = std::move(t);
  }
  for (int s2 = 0; s2 < 2; ++s2) {
    a2[static_cast<std::size_t>(s2)] =
        vd.block(0, s2 * chi_r, keep, chi_r).eval();
  }
}

}  // namespace

DmrgResult dmrg_ground_state(int n_qubits, double delta, int chi_max,
                             int num_sweeps, double penalty_lambda,
                             const DmrgOptions& options) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument(
        "dmrg_ground_state: n_qubits must be even and >= 2 (half filling)");
  }
  if (chi_max < 1) {
    throw std::invalid_argument("dmrg_ground_state: chi_max must be >= 1");
  }
  if (num_sweeps < 1) {
    throw std::invalid_argument("dmrg_ground_state: num_sweeps must be >= 1");
  }
  if (penalty_lambda < 0.0) {
    throw std::invalid_argument(
        "dmrg_ground_state: penalty_lambda must be >= 0");
  }

  const MPO hamiltonian = xxz_penalized_mpo(n_qubits, delta, penalty_lambda);

  auto rng = make_stream(options.seed, 0);
  MPS mps = MPS::random_mps(
      n_qubits, std::min(options.initial_bond_dim, chi_max), rng);

  // left_envs[k] covers sites 1..k, right_envs[k] covers sites k..N.
  std::vector<EnvBlocks> left_envs(static_cast<std::size_t>(n_qubits) + 1);
  std::vector<EnvBlocks> right_envs(static_cast<std::size_t>(n_qubits) + 2);
  left_envs[0] = EnvBlocks(1, Eigen::MatrixXcd::Ones(1, 1));
  right_envs[static_cast<std::size_t>(n_qubits) + 1] =
      EnvBlocks(1, Eigen::MatrixXcd::Ones(1, 1));
  for (int k = n_qubits; k >= 2; --k) {
    right_envs[static_cast<std::size_t>(k)] =
        extend_right(right_envs[static_cast<std::size_t>(k) + 1],
                     hamiltonian.site(k), mps.site(k));
  }

  DmrgResult result;
  double last_lambda = 0.0;
  LanczosOutcome last_outcome;

  auto update_pair = [&](int k, bool move_right) {
    auto& a1 = mps.site(k);
    auto& a2 = mps.site(k + 1);
    TwoSiteProblem problem;
    problem.left = &left_envs[static_cast<std::size_t>(k - 1)];
    problem.right = &right_envs[static_cast<std::size_t>(k + 2)];
    problem.w1 = &hamiltonian.site(k);
    problem.w2 = &hamiltonian.site(k + 1);
    problem.chi_l = a1[0].rows();
    problem.chi_r = a2[0].cols();
    const Eigen::VectorXcd warm = merge_two_sites(a1, a2);
    last_outcome = lanczos_ground(problem, warm, options.lanczos_max_iter,
                                  options.lanczos_tolerance);
    last_lambda = last_outcome.value;
    split_two_sites(last_outcome.vector, problem.chi_l, problem.chi_r,
                    chi_max, options.svd_cutoff, move_right, a1, a2);
    if (move_right) {
      left_envs[static_cast<std::size_t>(k)] =
          extend_left(left_envs[static_cast<std::size_t>(k - 1)],
                      hamiltonian.site(k), a1);
    } else {
      right_envs[static_cast<std::size_t>(k + 1)] =
          extend_right(right_envs[static_cast<std::size_t>(k + 2)],
                       hamiltonian.site(k + 1), a2);
    }
  };

  for (int sweep = 1; sweep <= num_sweeps; ++sweep) {
    for (int k = 1; k <= n_qubits - 1; ++k) update_pair(k, true);
    for (int k = n_qubits - 1; k >= 1; --k) update_pair(k, false);
    result.sweep_energies.push_back(last_lambda);
    result.sweeps_used = sweep;
    const std::size_t m = result.sweep_energies.size();
    if (m >= 2) {
      const double change = std::abs(result.sweep_energies[m - 1] -
                                     result.sweep_energies[m - 2]);
      if (change <= options.energy_tolerance) {
        result.converged = true;
        break;
      }
    }
  }

  mps.canonicalize_right();
  mps.normalize();
  result.ground_state = std::move(mps);
  result.final_local_gap = last_outcome.gap;
  result.energy_penalized =
      mpo_expectation(hamiltonian, result.ground_state).real();
  result.energy =
      mpo_expectation(xxz_mpo(n_qubits, delta), result.ground_state).real();
  result.magnetization.c_expect =
      mpo_expectation(total_z_mpo(n_qubits), result.ground_state).real();
  result.magnetization.c_squared_expect =
      mpo_expectation(total_z_squared_mpo(n_qubits), result.ground_state)
          .real();
  return result;
}

}  // namespace magiclab
