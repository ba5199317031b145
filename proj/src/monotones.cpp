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

#include "magiclab/monotones.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

#include "magiclab/pauli.hpp"
#include "magiclab/se_exact.hpp"
#include "magiclab/state_search.hpp"

namespace magiclab {

namespace {

constexpr double kRatioExclusionDmin = 1e-6;

// Lazily built per-N context shared by all monotone calls: the enumerated
// stabilizer set, and (on demand) the LP column matrix [+A | -A] whose rows
// are Pauli strings and whose columns are signed stabilizer expectation
// profiles.
struct StabContext {
  std::unique_ptr<StabilizerBasisSet> set;
  SparseMatrix lp_columns;
  bool lp_built = false;
};

std::mutex g_context_mutex;
StabContext g_context[5];  // index = n_qubits (1..4)

const StabilizerBasisSet& shared_set(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 4) {
    throw std::length_error(
        "stabilizer monotones support 1 to 4 qubits, got " +
        std::to_string(n_qubits));
  }
  std::lock_guard<std::mutex> lock(g_context_mutex);
  StabContext& ctx = g_context[n_qubits];
  if (!ctx.set) {
    ctx.set = std::make_unique<StabilizerBasisSet>(
        enumerate_stabilizer_states(n_qubits));
  }
  return *ctx.set;
}

const SparseMatrix& shared_lp_columns(int n_qubits) {
  const StabilizerBasisSet& set = shared_set(n_qubits);
  std::lock_guard<std::mutex> lock(g_context_mutex);
  StabContext& ctx = g_context[n_qubits];
  if (!ctx.lp_built) {
    const std::size_t n_states = set.size();
    const std::uint64_t n_paulis = pauli_count(n_qubits);
    SparseMatrix a;
    a.rows = static_cast<int>(n_paulis);
    a.cols = static_cast<int>(2 * n_states);
    a.columns.resize(2 * n_states);
    std::atomic<bool> malformed{false};
    parallel_for_chunks(n_states, [&](std::size_t, std::size_t begin,
                                      std::size_t end) {
      for (std::size_t id = begin; id < end; ++id) {
        std::vector<std::pair<int, double>> column;
        column.reserve(std::size_t{1} << n_qubits);
        for (std::uint64_t p = 0; p < n_paulis; ++p) {
          const double e =
              expectation(set.dense(id), PauliString(n_qubits, p));
          const double rounded = std::round(e);
          if (std::abs(e - rounded) > 1e-9) {
            malformed.store(true, std::memory_order_relaxed);
            return;
          }
          if (rounded != 0.0) {
            column.emplace_back(static_cast<int>(p), rounded);
          }
        }
        if (column.size() != (std::size_t{1} << n_qubits)) {
          malformed.store(true, std::memory_order_relaxed);
          return;
        }
        a.columns[id] = column;
        for (auto& [row, value] : column) value = -value;
        a.columns[n_states + id] = std::move(column);
      }
    });
    if (malformed.load()) {
      throw std::runtime_error(
          "log_robustness: a stabilizer expectation profile is malformed "
          "(enumeration bug)");
    }
    ctx.lp_columns = std::move(a);
    ctx.lp_built = true;
  }
  return ctx.lp_columns;
}

}  // namespace

MonotoneReport stabilizer_fidelity(const DenseState& state) {
  const StabilizerBasisSet& set = shared_set(state.n_qubits());
  MonotoneReport report;
  report.n_qubits = state.n_qubits();
  double best = -1.0;
  std::size_t best_id = 0;
  for (std::size_t id = 0; id < set.size(); ++id) {
    const std::vector<cplx>& sigma = set.dense(id);
    KahanSum re, im;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const cplx term = std::conj(state.amp(i)) * sigma[i];
      re.add(term.real());
      im.add(term.imag());
    }
    const double overlap = re.value() * re.value() + im.value() * im.value();
    if (overlap > best) {
      best = overlap;
      best_id = id;
    }
  }
  report.stab_fidelity = best;
  report.d_min = -std::log(best);
  if (report.d_min < 0.0 && report.d_min > -1e-12) report.d_min = 0.0;
  report.argmax_index = best_id;
  return report;
}

MonotoneReport log_robustness(const DenseState& state,
                              const LrOptions& options) {
  const int n = state.n_qubits();
  if (n > 3 && !options.allow_four_qubits) {
    throw std::length_error(
        "log_robustness: the four-qubit LP must be enabled explicitly "
        "(LrOptions::allow_four_qubits)");
  }
  const SparseMatrix& a = shared_lp_columns(n);
  const std::uint64_t n_paulis = pauli_count(n);

  std::vector<double> b(n_paulis);
  for (std::uint64_t p = 0; p < n_paulis; ++p) {
    b[p] = expectation(state, PauliString(n, p));
  }
  const std::vector<double> costs(static_cast<std::size_t>(a.cols), 1.0);

  const LpResult lp = solve_lp(a, b, costs, options.lp);
  if (lp.status == LpStatus::kInfeasible) {
    throw std::runtime_error(
        "log_robustness: LP infeasible; the stabilizer set does not span "
        "(enumeration bug)");
  }
  if (lp.status != LpStatus::kOptimal) {
    throw std::runtime_error(
        "log_robustness: LP did not converge within the iteration cap");
  }

  MonotoneReport report;
  report.n_qubits = n;
  report.log_robustness = std::log(lp.objective);
  if (report.log_robustness < 0.0 && report.log_robustness > -1e-12) {
    report.log_robustness = 0.0;
  }
  report.lp_duality_gap = lp.duality_gap;
  report.lp_max_primal_residual = lp.max_primal_residual;
  report.lp_max_dual_infeasibility = lp.max_dual_infeasibility;
  report.lp_iterations = lp.iterations;
  return report;
}

MonotoneReport monotone_report(const DenseState& state,
                               const LrOptions& options) {
  MonotoneReport report = stabilizer_fidelity(state);
  const MonotoneReport lr = log_robustness(state, options);
  report.log_robustness = lr.log_robustness;
  report.lp_duality_gap = lr.lp_duality_gap;
  report.lp_max_primal_residual = lr.lp_max_primal_residual;
  report.lp_max_dual_infeasibility = lr.lp_max_dual_infeasibility;
  report.lp_iterations = lr.lp_iterations;
  return report;
}

std::string monotone_report_to_json(const MonotoneReport& report) {
  nlohmann::json j;
  j["n_qubits"] = report.n_qubits;
  j["stab_fidelity"] = report.stab_fidelity;
  j["d_min"] = report.d_min;
  j["log_robustness"] = report.log_robustness;
  j["argmax_index"] = report.argmax_index;
  j["lp"] = {{"duality_gap", report.lp_duality_gap},
             {"max_primal_residual", report.lp_max_primal_residual},
             {"max_dual_infeasibility", report.lp_max_dual_infeasibility},
             {"iterations", report.lp_iterations}};
  return j.dump();
}

InequalityReport check_inequality_suite(const DenseState& state,
                                        const std::vector<double>& n_list) {
  const MonotoneReport mono = monotone_report(state);
  InequalityReport report;
  report.n_qubits = state.n_qubits();
  report.d_min = mono.d_min;
  report.log_robustness = mono.log_robustness;
  report.dmin_vs_lr_slack = mono.log_robustness - mono.d_min;
  report.checks.reserve(n_list.size());

  const std::vector<SEValue> curve = se_curve(state, n_list);
  for (const SEValue& se : curve) {
    InequalityCheck check;
    check.renyi_index = se.renyi_index;
    check.m_n = se.value;
    if (se.renyi_index >= 0.5) {
      check.lr_applicable = true;
      check.lr_slack = 2.0 * mono.log_robustness - se.value;
    }
    if (se.renyi_index > 1.0) {
      check.dmin_applicable = true;
      check.dmin_slack = 2.0 * se.renyi_index / (se.renyi_index - 1.0) *
                             mono.d_min -
                         se.value;
    }
    report.checks.push_back(check);
  }
  return report;
}

RatioGrowth lr_over_mn_growth(double n, double s0,
                              const std::vector<int>& n_list) {
  if (!(n >= 0.5)) {
    throw std::invalid_argument("lr_over_mn_growth: requires n >= 1/2");
  }
  if (n_list.empty()) {
    throw std::invalid_argument("lr_over_mn_growth: empty N list");
  }
  RatioGrowth growth;
  growth.rows.reserve(n_list.size());
  for (int big_n : n_list) {
    if (big_n < 1) {
      throw std::invalid_argument("lr_over_mn_growth: N must be positive");
    }
    const double s = s0 / std::sqrt(static_cast<double>(big_n));
    RatioTableRow row;
    row.n_qubits = big_n;
    row.m_half = big_n * omega_m_n_closed(s, 0.5);
    row.m_n = big_n * omega_m_n_closed(s, n);
    row.ratio_proxy = row.m_half / (2.0 * row.m_n);
    growth.rows.push_back(row);
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(growth.rows.size());
  for (const RatioTableRow& row : growth.rows) {
    const double x = std::log(static_cast<double>(row.n_qubits));
    const double y = std::log(row.ratio_proxy);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  growth.fitted_exponent = denom == 0.0 ? 0.0 : (m * sxy - sx * sy) / denom;
  return growth;
}

RatioSearchResult min_ratio_search(double n, int n_qubits, int restarts,
                                   std::mt19937_64& rng) {
  if (!(n >= 1.0 && n <= 2.0)) {
    throw std::invalid_argument("min_ratio_search: n must lie in [1, 2]");
  }
  if (n_qubits < 1 || n_qubits > 4) {
    throw std::length_error("min_ratio_search: n_qubits must be in [1, 4]");
  }
  if (restarts < 1) {
    throw std::invalid_argument("min_ratio_search: restarts must be >= 1");
  }

  const auto objective = [&](const DenseState& state) {
    const MonotoneReport mono = stabilizer_fidelity(state);
    if (mono.d_min < kRatioExclusionDmin) {
      return std::numeric_limits<double>::infinity();
    }
    return m_n(state, n).value / mono.d_min;
  };

  StateSearchOptions options;
  options.max_iterations = 2000;

  RatioSearchResult best;
  for (int restart = 0; restart < restarts; ++restart) {
    const DenseState start = haar_random_state(n_qubits, rng);
    if (!std::isfinite(objective(start))) {
      continue;  // landed in the excluded region; try the next restart
    }
    const StateSearchResult run =
        minimize_over_states(start, objective, options);
    if (run.value < best.min_ratio) {
      best.min_ratio = run.value;
      best.best_state = run.state;
      best.best_restart = restart;
    }
  }
  if (best.best_restart >= 0) {
    best.m_n_value = m_n(best.best_state, n).value;
    best.d_min_value = stabilizer_fidelity(best.best_state).d_min;
  }
  return best;
}

}  // namespace magiclab
