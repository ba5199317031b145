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

#include "magiclab/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "magiclab/common.hpp"

namespace magiclab {

namespace {

// Two-phase revised simplex over the system [A | I] with row signs flipped
// so that b >= 0.  Artificial variables (the identity block) form the
// initial basis, never re-enter once they leave, and are pinned to zero
// during phase 2 by a zero-step ratio rule.
class SimplexSolver {
 public:
  SimplexSolver(const SparseMatrix& a, const std::vector<double>& b,
                const std::vector<double>& c, const LpOptions& options)
      : a_(a),
        c_(c),
        options_(options),
        m_(a.rows),
        n_(a.cols),
        row_sign_(static_cast<std::size_t>(a.rows), 1.0),
        b_(b) {
    for (int i = 0; i < m_; ++i) {
      if (b_[static_cast<std::size_t>(i)] < 0.0) {
        row_sign_[static_cast<std::size_t>(i)] = -1.0;
        b_[static_cast<std::size_t>(i)] = -b_[static_cast<std::size_t>(i)];
      }
    }
    basis_.resize(static_cast<std::size_t>(m_));
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), 0);
    for (int i = 0; i < m_; ++i) {
      basis_[static_cast<std::size_t>(i)] = n_ + i;
      in_basis_[static_cast<std::size_t>(n_ + i)] = 1;
    }
    b_inv_ = Eigen::MatrixXd::Identity(m_, m_);
    x_b_ = Eigen::Map<const Eigen::VectorXd>(b_.data(), m_);
  }

  LpResult solve() {
    LpResult result;

    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1_cost(static_cast<std::size_t>(n_ + m_), 0.0);
    for (int j = n_; j < n_ + m_; ++j) {
      phase1_cost[static_cast<std::size_t>(j)] = 1.0;
    }
    const LpStatus phase1 = run(phase1_cost, /*pin_artificials=*/false,
                                &result);
    if (phase1 == LpStatus::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      return finalize(result);
    }
    double infeasibility = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] >= n_) {
        infeasibility += x_b_(i);
      }
    }
    if (infeasibility > 1e-7) {
      result.status = LpStatus::kInfeasible;
      return finalize(result);
    }
    drive_out_artificials();

    // Phase 2: original costs, artificials pinned at zero.
    std::vector<double> phase2_cost(static_cast<std::size_t>(n_ + m_), 0.0);
    for (int j = 0; j < n_; ++j) {
      phase2_cost[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(j)];
    }
    result.status = run(phase2_cost, /*pin_artificials=*/true, &result);
    return finalize(result);
  }

 private:
  // One simplex phase; returns kOptimal, kUnbounded, or kIterationLimit.
  LpStatus run(const std::vector<double>& cost, bool pin_artificials,
               LpResult* result) {
    int degenerate_streak = 0;
    int since_refactor = 0;
    while (result->iterations < options_.max_iterations) {
      const bool bland = degenerate_streak >= options_.degenerate_streak_limit;
      const Eigen::VectorXd y = dual_vector(cost);

      int entering = -1;
      double best_reduced = -options_.tol;
      for (int j = 0; j < n_; ++j) {  // artificials never re-enter
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        const double reduced =
            cost[static_cast<std::size_t>(j)] - column_dot(j, y);
        if (reduced < best_reduced) {
          entering = j;
          if (bland) break;
          best_reduced = reduced;
        }
      }
      if (entering < 0) return LpStatus::kOptimal;

      const Eigen::VectorXd d = basis_solve(entering);
      int leaving = -1;
      double theta = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const int var = basis_[static_cast<std::size_t>(i)];
        if (d(i) > options_.tol) {
          const double ratio = std::max(0.0, x_b_(i)) / d(i);
          if (ratio < theta - 1e-12 ||
              (ratio < theta + 1e-12 &&
               (leaving < 0 ||
                (bland ? var < basis_[static_cast<std::size_t>(leaving)]
                       : std::abs(d(i)) >
                             std::abs(d(leaving)))))) {
            theta = ratio;
            leaving = i;
          }
        } else if (pin_artificials && var >= n_ && d(i) < -options_.tol) {
          // An artificial pinned at zero would grow; force a zero step.
          theta = 0.0;
          leaving = i;
          break;
        }
      }
      if (leaving < 0) return LpStatus::kUnbounded;
      if (!std::isfinite(theta)) return LpStatus::kUnbounded;

      pivot(entering, leaving, d, theta);
      ++result->iterations;
      degenerate_streak = theta <= options_.tol ? degenerate_streak + 1 : 0;
      if (++since_refactor >= options_.refactor_period) {
        refactor();
        since_refactor = 0;
      }
    }
    return LpStatus::kIterationLimit;
  }

  // y = B^{-T} c_B.
  Eigen::VectorXd dual_vector(const std::vector<double>& cost) const {
    Eigen::VectorXd c_b(m_);
    for (int i = 0; i < m_; ++i) {
      c_b(i) = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
    }
    return b_inv_.transpose() * c_b;
  }

  // y . A_j with row signs applied; artificial j >= n_ is e_{j - n_}.
  double column_dot(int j, const Eigen::VectorXd& y) const {
    if (j >= n_) return y(j - n_);
    double dot = 0.0;
    for (const auto& [row, value] : a_.columns[static_cast<std::size_t>(j)]) {
      dot += y(row) * value * row_sign_[static_cast<std::size_t>(row)];
    }
    return dot;
  }

  // d = B^{-1} A_j.
  Eigen::VectorXd basis_solve(int j) const {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(m_);
    if (j >= n_) {
      d = b_inv_.col(j - n_);
      return d;
    }
    for (const auto& [row, value] : a_.columns[static_cast<std::size_t>(j)]) {
      d += (value * row_sign_[static_cast<std::size_t>(row)]) * b_inv_.col(row);
    }
    return d;
  }

  void pivot(int entering, int leaving, const Eigen::VectorXd& d,
             double theta) {
    const int outgoing = basis_[static_cast<std::size_t>(leaving)];
    in_basis_[static_cast<std::size_t>(outgoing)] = 0;
    in_basis_[static_cast<std::size_t>(entering)] = 1;
    basis_[static_cast<std::size_t>(leaving)] = entering;

    x_b_ -= theta * d;
    x_b_(leaving) = theta;
    for (int i = 0; i < m_; ++i) {
      if (x_b_(i) < 0.0 && x_b_(i) > -1e-11) x_b_(i) = 0.0;
    }

    const double pivot_value = d(leaving);
    b_inv_.row(leaving) /= pivot_value;
    for (int i = 0; i < m_; ++i) {
      if (i == leaving) continue;
      if (d(i) != 0.0) b_inv_.row(i) -= d(i) * b_inv_.row(leaving);
    }
  }

  // Rebuilds B^{-1} and x_B from the basis columns.
  void refactor() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const int var = basis_[static_cast<std::size_t>(i)];
      if (var >= n_) {
        basis_matrix(var - n_, i) = 1.0;
      } else {
        for (const auto& [row, value] :
             a_.columns[static_cast<std::size_t>(var)]) {
          basis_matrix(row, i) =
              value * row_sign_[static_cast<std::size_t>(row)];
        }
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
    if (!lu.isInvertible()) {
      throw std::runtime_error("solve_lp: basis matrix became singular");
    }
    b_inv_ = lu.inverse();
    x_b_ = b_inv_ * Eigen::Map<const Eigen::VectorXd>(b_.data(), m_);
    for (int i = 0; i < m_; ++i) {
      if (x_b_(i) < 0.0 && x_b_(i) > -1e-11) x_b_(i) = 0.0;
    }
  }

  // After phase 1, swap basic artificials for structural columns where a
  // nonzero pivot exists (rows left over are redundant constraints).
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)]) continue;
        const Eigen::VectorXd d = basis_solve(j);
        if (std::abs(d(i)) > 1e-7) {
          // The artificial sits at (numerically) zero, so the swap is a
          // zero-length step.
          pivot(j, i, d, 0.0);
          break;
        }
      }
    }
    refactor();
  }

  LpResult finalize(LpResult result) {
    result.x.assign(static_cast<std::size_t>(n_), 0.0);
    for (int i = 0; i < m_; ++i) {
      const int var = basis_[static_cast<std::size_t>(i)];
      if (var < n_) {
        result.x[static_cast<std::size_t>(var)] = std::max(0.0, x_b_(i));
      }
    }
    KahanSum objective;
    for (int j = 0; j < n_; ++j) {
      objective.add(c_[static_cast<std::size_t>(j)] *
                    result.x[static_cast<std::size_t>(j)]);
    }
    result.objective = objective.value();

    // Primal residual against the original (unflipped) system.
    std::vector<KahanSum> row_sums(static_cast<std::size_t>(m_));
    for (int j = 0; j < n_; ++j) {
      const double xj = result.x[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      for (const auto& [row, value] : a_.columns[static_cast<std::size_t>(j)]) {
        row_sums[static_cast<std::size_t>(row)].add(value * xj);
      }
    }
    result.max_primal_residual = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double original_b = b_[static_cast<std::size_t>(i)] *
                                row_sign_[static_cast<std::size_t>(i)];
      result.max_primal_residual =
          std::max(result.max_primal_residual,
                   std::abs(row_sums[static_cast<std::size_t>(i)].value() -
                            original_b));
    }

    // Duals in the original row convention, plus dual feasibility and gap.
    std::vector<double> phase2_cost(static_cast<std::size_t>(n_ + m_), 0.0);
    for (int j = 0; j < n_; ++j) {
      phase2_cost[static_cast<std::size_t>(j)] = c_[static_cast<std::size_t>(j)];
    }
    const Eigen::VectorXd y = dual_vector(phase2_cost);
    result.duals.assign(static_cast<std::size_t>(m_), 0.0);
    for (int i = 0; i < m_; ++i) {
      result.duals[static_cast<std::size_t>(i)] =
          y(i) * row_sign_[static_cast<std::size_t>(i)];
    }
    result.max_dual_infeasibility = 0.0;
    if (result.status == LpStatus::kOptimal) {
      for (int j = 0; j < n_; ++j) {
        const double reduced =
            c_[static_cast<std::size_t>(j)] - column_dot(j, y);
        result.max_dual_infeasibility =
            std::max(result.max_dual_infeasibility, -reduced);
      }
      KahanSum yb;
      for (int i = 0; i < m_; ++i) {
        const double original_b = b_[static_cast<std::size_t>(i)] *
                                  row_sign_[static_cast<std::size_t>(i)];
        yb.add(result.duals[static_cast<std::size_t>(i)] * original_b);
      }
      result.duality_gap = std::abs(result.objective - yb.value());
    }
    return result;
  }

  const SparseMatrix& a_;
  const std::vector<double>& c_;
  const LpOptions& options_;
  int m_;
  int n_;
  std::vector<double> row_sign_;
  std::vector<double> b_;
  std::vector<int> basis_;
  std::vector<char> in_basis_;
  Eigen::MatrixXd b_inv_;
  Eigen::VectorXd x_b_;
};

}  // namespace

LpResult solve_lp(const SparseMatrix& a, const std::vector<double>& b,
                  const std::vector<double>& c, const LpOptions& options) {
  if (a.rows <= 0 || a.cols <= 0) {
    throw std::invalid_argument("solve_lp: empty constraint system");
  }
  if (b.size() != static_cast<std::size_t>(a.rows) ||
      c.size() != static_cast<std::size_t>(a.cols) ||
      a.columns.size() != static_cast<std::size_t>(a.cols)) {
    throw std::invalid_argument("solve_lp: dimension mismatch");
  }
  for (const auto& column : a.columns) {
    int prev_row = -1;
    for (const auto& [row, value] : column) {
      if (row <= prev_row || row >= a.rows) {
        throw std::invalid_argument(
            "solve_lp: column rows must be strictly increasing and in range");
      }
      if (!std::isfinite(value)) {
        throw std::invalid_argument("solve_lp: non-finite matrix entry");
      }
      prev_row = row;
    }
  }
  SimplexSolver solver(a, b, c, options);
  return solver.solve();
}

}  // namespace magiclab
