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

#ifndef MAGICLAB_MONOTONES_HPP_
#define MAGICLAB_MONOTONES_HPP_

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "magiclab/dense_state.hpp"
#include "magiclab/simplex.hpp"
#include "magiclab/stabilizer_set.hpp"

namespace magiclab {

// Nonstabilizerness monotones of a pure state.  Fields not computed by a
// given operation are left NaN.
struct MonotoneReport {
  int n_qubits = 0;
  double stab_fidelity = std::numeric_limits<double>::quiet_NaN();
  double d_min = std::numeric_limits<double>::quiet_NaN();
  double log_robustness = std::numeric_limits<double>::quiet_NaN();
  std::size_t argmax_index = 0;  // fidelity argmax descriptor id

  // LP certificates, populated by log_robustness.
  double lp_duality_gap = std::numeric_limits<double>::quiet_NaN();
  double lp_max_primal_residual = std::numeric_limits<double>::quiet_NaN();
  double lp_max_dual_infeasibility = std::numeric_limits<double>::quiet_NaN();
  int lp_iterations = 0;
};

// F_STAB = max over all pure stabilizer states of |<psi|sigma>|^2, exact by
// enumeration, with D_min = -log F_STAB.  Ties in the argmax break to the
// lowest descriptor id.  N <= 4.
MonotoneReport stabilizer_fidelity(const DenseState& state);

struct LrOptions {
  // The four-qubit LP (73440 variables) must be requested explicitly.
  bool allow_four_qubits = false;
  LpOptions lp;
};

// LR = log min { sum_i |x_i| : |psi><psi| = sum_i x_i |sigma_i><sigma_i| },
// solved exactly as an L1-minimization LP over the enumerated stabilizer
// set with one equality constraint per Pauli string.  N <= 3 by default.
MonotoneReport log_robustness(const DenseState& state,
                              const LrOptions& options = LrOptions());

// Both monotones in one report.
MonotoneReport monotone_report(const DenseState& state,
                               const LrOptions& options = LrOptions());

std::string monotone_report_to_json(const MonotoneReport& report);

// Slack report for the inequality chain relating stabilizer entropies to
// the monotones:
//   M_n <= 2 LR              for n >= 1/2
//   M_n <= 2n/(n-1) D_min    for n > 1
//   D_min <= LR.
// Slacks are (right side - left side); all must be >= -1e-8.
struct InequalityCheck {
  double renyi_index = 0.0;
  double m_n = 0.0;
  bool lr_applicable = false;    // n >= 1/2
  double lr_slack = 0.0;         // 2 LR - M_n
  bool dmin_applicable = false;  // n > 1
  double dmin_slack = 0.0;       // 2n/(n-1) D_min - M_n
};

struct InequalityReport {
  int n_qubits = 0;
  double d_min = 0.0;
  double log_robustness = 0.0;
  double dmin_vs_lr_slack = 0.0;  // LR - D_min
  std::vector<InequalityCheck> checks;
};

InequalityReport check_inequality_suite(const DenseState& state,
                                        const std::vector<double>& n_list);

// Growth of the lower-bound proxy M_{1/2}/(2 M_n) for LR/M_n on the product
// family Lambda_N(s0) = Omega(s0/sqrt(N))^{x N}, evaluated per factor via
// the closed form plus additivity.  Requires n >= 1/2.
struct RatioTableRow {
  int n_qubits = 0;
  double m_half = 0.0;
  double m_n = 0.0;
  double ratio_proxy = 0.0;  // m_half / (2 m_n)
};

struct RatioGrowth {
  std::vector<RatioTableRow> rows;
  double fitted_exponent = 0.0;  // slope of log(proxy) vs log(N)
};

RatioGrowth lr_over_mn_growth(double n, double s0,
                              const std::vector<int>& n_list);

// Random-restart gradient search minimizing M_n / D_min over pure states.
// States with D_min < 1e-6 are excluded from the ratio (the objective is
// +infinity there).  n in [1, 2], n_qubits <= 4.
struct RatioSearchResult {
  DenseState best_state;
  double min_ratio = std::numeric_limits<double>::infinity();
  double m_n_value = 0.0;
  double d_min_value = 0.0;
  int best_restart = -1;

  RatioSearchResult() : best_state(1) {}
};

RatioSearchResult min_ratio_search(double n, int n_qubits, int restarts,
                                   std::mt19937_64& rng);

}  // namespace magiclab

#endif  // MAGICLAB_MONOTONES_HPP_
