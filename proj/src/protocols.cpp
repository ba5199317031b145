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

#include "magiclab/protocols.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "magiclab/se_exact.hpp"
#include "magiclab/state_search.hpp"
#include "magiclab/symmetric.hpp"

namespace magiclab {

bool is_clifford_circuit(const Circuit& circuit) {
  for (const GateOp& op : circuit) {
    if (op.kind != GateOp::Kind::kNamed && op.kind != GateOp::Kind::kCZ) {
      return false;
    }
  }
  return true;
}

FeedbackProtocol build_counterexample_protocol() {
  FeedbackProtocol protocol;
  protocol.measured_site = 1;
  protocol.feedback[1] = {};  // outcome 1: identity
  // Outcome 0: U = V2 V1.  V1 = X1 (x) ((X2-Y2)/sqrt 2) as the word
  // X1, X2, H2, S2, H2, S2, H2 (rightmost operator factor applied first);
  // V2 = X3 . CZ34 . X3.
  protocol.feedback[0] = {
      GateOp::named(NamedGate::kX, 1), GateOp::named(NamedGate::kX, 2),
      GateOp::named(NamedGate::kH, 2), GateOp::named(NamedGate::kS, 2),
      GateOp::named(NamedGate::kH, 2), GateOp::named(NamedGate::kS, 2),
      GateOp::named(NamedGate::kH, 2), GateOp::named(NamedGate::kX, 3),
      GateOp::cz(3, 4),                GateOp::named(NamedGate::kX, 3),
  };
  return protocol;
}

std::vector<ProtocolBranch> run_all_branches(const FeedbackProtocol& protocol,
                                             const DenseState& input) {
  for (const Circuit& circuit : protocol.feedback) {
    if (!is_clifford_circuit(circuit)) {
      throw std::invalid_argument(
          "run_all_branches: feedback circuits must consist of named gates "
          "and CZ only");
    }
  }
  std::vector<ProtocolBranch> out;
  const auto branches = enumerate_branches(input, protocol.measured_site);
  for (const MeasurementOutcome& branch : branches) {
    if (!branch.present) continue;
    ProtocolBranch result;
    result.outcome = branch.outcome_bits[0];
    result.probability = branch.probability;
    result.state = branch.post_state;
    apply_circuit(result.state,
                  protocol.feedback[static_cast<std::size_t>(result.outcome)]);
    out.push_back(std::move(result));
  }
  return out;
}

DenseState run_protocol(const FeedbackProtocol& protocol,
                        const DenseState& input, std::mt19937_64& rng) {
  const auto branches = run_all_branches(protocol, input);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  for (const ProtocolBranch& branch : branches) {
    if (r < branch.probability) return branch.state;
    r -= branch.probability;
  }
  return branches.back().state;
}

std::vector<DeltaMPoint> delta_m_curve(const std::vector<double>& n_grid) {
  for (double n : n_grid) {
    if (!(n >= 0.0 && n <= 15.0)) {
      throw std::invalid_argument("delta_m_curve: grid must lie in [0, 15]");
    }
  }
  const std::vector<SEValue> input_curve = se_curve(make_phi_star(), n_grid);
  const std::vector<SEValue> output_curve = se_curve(make_chi_star(), n_grid);
  std::vector<DeltaMPoint> out;
  out.reserve(n_grid.size());
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    out.push_back(
        DeltaMPoint{n_grid[k], input_curve[k].value - output_curve[k].value});
  }
  return out;
}

double strong_mono_functional(const DenseState& state, double n, int site) {
  const double total = m_n(state, n).value;
  KahanSum branch_sum;
  for (const MeasurementOutcome& branch : enumerate_branches(state, site)) {
    if (!branch.present) continue;  // zero-probability branch contributes 0
    branch_sum.add(branch.probability * m_n(branch.post_state, n).value);
  }
  return total - branch_sum.value();
}

ViolationSearchResult gradient_search(int n_qubits, double n, int restarts,
                                      int max_iters, double step_size,
                                      std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 5) {
    throw std::length_error("gradient_search: n_qubits must be in [1, 5]");
  }
  if (restarts < 1 || max_iters < 1 || !(step_size > 0.0)) {
    throw std::invalid_argument("gradient_search: bad search parameters");
  }

  const auto objective = [n](const DenseState& state) {
    return strong_mono_functional(state, n, 1);
  };
  StateSearchOptions options;
  options.max_iterations = max_iters;
  options.initial_step = step_size;

  // Restarts are independent (index-derived RNG streams) and reduced by
  // minimum value with restart-index tie-break, so any execution order
  // gives the same result.
  std::vector<StateSearchResult> runs(static_cast<std::size_t>(restarts));
  detail::run_chunks(
      static_cast<std::size_t>(restarts), worker_thread_count(),
      [&](std::size_t restart) {
        std::mt19937_64 rng =
            make_stream(seed, static_cast<std::uint64_t>(restart));
        const DenseState start = haar_random_state(n_qubits, rng);
        runs[restart] = minimize_over_states(start, objective, options);
      });

  ViolationSearchResult result;
  result.renyi_index = n;
  result.restarts_used = restarts;
  result.max_iters = max_iters;
  result.step_size = step_size;
  result.seed = seed;
  result.delta_n = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < restarts; ++restart) {
    const StateSearchResult& run = runs[static_cast<std::size_t>(restart)];
    if (run.value < result.delta_n) {
      result.delta_n = run.value;
      result.state = run.state;
      result.best_restart = restart;
      result.converged = run.iterations < max_iters;
    }
  }
  return result;
}

std::string violation_search_result_to_json(const ViolationSearchResult& r) {
  nlohmann::json j;
  j["n_qubits"] = r.state.n_qubits();
  j["renyi_index"] = r.renyi_index;
  j["delta_n"] = r.delta_n;
  j["restarts_used"] = r.restarts_used;
  j["best_restart"] = r.best_restart;
  j["converged"] = r.converged;
  j["hyperparameters"] = {
      {"max_iters", r.max_iters},     {"step_size", r.step_size},
      {"momentum", 0.9},              {"gradient_h", 1e-5},
      {"seed", r.seed},
  };
  nlohmann::json amplitudes = nlohmann::json::array();
  nlohmann::json hints = nlohmann::json::array();
  // Rounding aid: nearest point of {a + b i : a, b in
  // {0, +-1, +-sqrt(2), +-2}} / (2 sqrt(6)); a hint, not an identification.
  const double unit = 1.0 / (2.0 * std::sqrt(6.0));
  const double grid[7] = {0.0,           1.0,  -1.0, std::sqrt(2.0),
                          -std::sqrt(2.0), 2.0,  -2.0};
  for (std::size_t i = 0; i < r.state.dim(); ++i) {
    const cplx a = r.state.amp(i);
    amplitudes.push_back({a.real(), a.imag()});
    double best_re = 0.0, best_im = 0.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (double re : grid) {
      for (double im : grid) {
        const double dist = std::abs(a - cplx(re * unit, im * unit));
        if (dist < best_dist) {
          best_dist = dist;
          best_re = re;
          best_im = im;
        }
      }
    }
    hints.push_back({{"grid_re", best_re},
                     {"grid_im", best_im},
                     {"distance", best_dist}});
  }
  j["amplitudes"] = std::move(amplitudes);
  j["rounding_hints"] = std::move(hints);
  return j.dump();
}

StrongMonoGap psi_eps_strong_mono_gap(int n_qubits, double eps, double n,
                                      GapMethod method) {
  if (n_qubits < 2) {
    throw std::invalid_argument(
        "psi_eps_strong_mono_gap: needs at least 2 qubits");
  }
  StrongMonoGap gap;
  gap.p1 = psi_eps_p1(n_qubits, eps);

  bool use_dense = method == GapMethod::kDense;
  // The closed form covers every n except the von Neumann limit.
  if (method == GapMethod::kAuto) use_dense = (n == 1.0);
  if (use_dense && n_qubits > 14) {
    throw std::length_error(
        "psi_eps_strong_mono_gap: dense path supports N <= 14");
  }

  if (use_dense) {
    gap.lhs = m_n(make_psi_eps(n_qubits, eps), n).value;
    gap.used_dense = true;
  } else {
    if (eps == 0.0) {
      gap.lhs = 0.0;
    } else {
      SymmetricSEInput input;
      input.n_qubits = n_qubits;
      input.eps = eps;
      input.n = n;
      gap.lhs = m_n_psi_eps(input);
    }
  }
  gap.rhs = gap.p1 * (n_qubits - 1) * chi_m_n_closed(n);
  gap.gap = gap.lhs - gap.rhs;
  return gap;
}

double clifford_eigenstate_residual(const DenseState& state,
                                    const Circuit& circuit) {
  if (!is_clifford_circuit(circuit)) {
    throw std::invalid_argument(
        "clifford_eigenstate_residual: circuit must consist of named gates "
        "and CZ only");
  }
  DenseState transformed = state;
  apply_circuit(transformed, circuit);
  const double overlap = std::abs(inner_product(state, transformed));
  const double radicand = std::max(0.0, 2.0 - 2.0 * overlap);
  return std::sqrt(radicand);
}

}  // namespace magiclab
