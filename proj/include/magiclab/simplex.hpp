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

#ifndef MAGICLAB_SIMPLEX_HPP_
#define MAGICLAB_SIMPLEX_HPP_

#include <utility>
#include <vector>

namespace magiclab {

// Column-major sparse matrix for LP constraint systems.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  // columns[j] lists (row, value) pairs with strictly increasing row.
  std::vector<std::vector<std::pair<int, double>>> columns;
};

struct LpOptions {
  int max_iterations = 50000;
  double tol = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak_limit = 50;
  // Dense basis-inverse refactorization period.
  int refactor_period = 64;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> x;      // primal solution, size cols
  std::vector<double> duals;  // y, size rows
  int iterations = 0;
  // Self-certification at termination.
  double max_primal_residual = 0.0;     // ||A x - b||_inf
  double max_dual_infeasibility = 0.0;  // max_j max(0, y.A_j - c_j)
  double duality_gap = 0.0;             // |c.x - y.b|
};

// Minimizes c.x subject to A x = b, x >= 0, with a two-phase revised
// simplex method (dense basis inverse, Dantzig pricing with a Bland's-rule
// fallback against cycling).
LpResult solve_lp(const SparseMatrix& a, const std::vector<double>& b,
                  const std::vector<double>& c,
                  const LpOptions& options = LpOptions());

}  // namespace magiclab

#endif  // MAGICLAB_SIMPLEX_HPP_
