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

// Acceptance suite: twelve end-to-end criteria, one PASS/FAIL line each.
// Every tolerance is pinned in this file.  The process exit code is the
// number of criteria whose outcome differs from the expected table in
// main(); two criteria are expected to FAIL and stay in the suite to
// document the measured gap:
//
//   Criterion 10: the closed-form M_2 of the symmetric family psi_eps at
//     eps = 0.5 exceeds 4 log(1.25) + 0.02 for nine sizes below N = 29
//     (worst 1.0573 at N = 12).  The bound holds from N = 29 on.
//   Criterion 11: the m_1(Delta) curve of the XXZ chain at N = 16 rises
//     monotonically across [-1, 1].  A decrease between Delta = 0.95 and
//     Delta = 1 appears only for N >= 18 (at N = 20 it is +8.3e-4 per
//     site, slightly above 3 sigma at 5e5 samples); at N = 16 the measured
//     difference is +1.0e-4 +- 1.8e-4 per site at 1e6 samples, so no
//     decrease is resolvable at this size.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"
#include "magiclab/dmrg.hpp"
#include "magiclab/monotones.hpp"
#include "magiclab/mpo.hpp"
#include "magiclab/mps.hpp"
#include "magiclab/pauli.hpp"
#include "magiclab/protocols.hpp"
#include "magiclab/replica.hpp"
#include "magiclab/sampling.hpp"
#include "magiclab/se_exact.hpp"
#include "magiclab/stabilizer_set.hpp"
#include "magiclab/symmetric.hpp"

namespace {

using namespace magiclab;

constexpr std::uint64_t kSeed = 20260816;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double value, int precision = 6) {
  std::ostringstream out;
  out.precision(precision);
  out << value;
  return out.str();
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  const auto now = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(now - start).count();
}

// 1. Feedback counterexample curve: delta_m(n) strictly negative below
//    n = 2, nonnegative above, in under 5 seconds.
Outcome criterion_counterexample_curve() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> below = {0.0, 0.5, 1.0, 1.5, 1.9};
  const std::vector<double> above = {2.5, 3.0, 5.0, 10.0};
  std::vector<double> grid = below;
  grid.insert(grid.end(), above.begin(), above.end());
  const std::vector<DeltaMPoint> curve = delta_m_curve(grid);
  double max_below = -std::numeric_limits<double>::infinity();
  double min_above = std::numeric_limits<double>::infinity();
  for (const DeltaMPoint& point : curve) {
    if (point.renyi_index < 2.0) {
      max_below = std::max(max_below, point.delta_m);
    } else {
      min_above = std::min(min_above, point.delta_m);
    }
  }
  const double seconds = elapsed_seconds(start);
  Outcome out;
  out.pass = max_below < -1e-4 && min_above > -1e-10 && seconds < 5.0;
  out.detail = "max delta_m below n=2: " + num(max_below) +
               " (need < -1e-4); min above: " + num(min_above) +
               " (need > -1e-10); " + num(seconds, 3) + " s (need < 5)";
  return out;
}

// 2. Protocol determinism: both measurement branches on phi_star coincide
//    with |1> x chi_star, with probability 1/2 each.
Outcome criterion_protocol_determinism() {
  const FeedbackProtocol protocol = build_counterexample_protocol();
  const std::vector<ProtocolBranch> branches =
      run_all_branches(protocol, make_phi_star());
  Outcome out;
  if (branches.size() != 2) {
    out.detail = "expected 2 branches, got " + std::to_string(branches.size());
    return out;
  }
  const DenseState target = make_psi_star();
  const double mutual = fidelity(branches[0].state, branches[1].state);
  const double f0 = fidelity(branches[0].state, target);
  const double f1 = fidelity(branches[1].state, target);
  const double prob_err = std::max(std::abs(branches[0].probability - 0.5),
                                   std::abs(branches[1].probability - 0.5));
  out.pass = mutual >= 1.0 - 1e-10 && f0 >= 1.0 - 1e-10 &&
             f1 >= 1.0 - 1e-10 && prob_err <= 1e-12;
  out.detail = "mutual fidelity " + num(1.0 - mutual, 3) +
               " below 1; to target " + num(1.0 - std::min(f0, f1), 3) +
               " below 1; max |p - 1/2| = " + num(prob_err, 3);
  return out;
}

// 3. Branch-average identity: the probability-weighted branch entropies
//    reproduce M_n of the post-measurement state for n in {0.5, 1, 1.5}.
Outcome criterion_branch_average_identity() {
  const FeedbackProtocol protocol = build_counterexample_protocol();
  const std::vector<ProtocolBranch> branches =
      run_all_branches(protocol, make_phi_star());
  const DenseState target = make_psi_star();
  double max_err = 0.0;
  for (const double n : {0.5, 1.0, 1.5}) {
    KahanSum average;
    for (const ProtocolBranch& branch : branches) {
      average.add(branch.probability * m_n(branch.state, n).value);
    }
    const double reference = m_n(target, n).value;
    max_err = std::max(max_err, std::abs(average.value() - reference));
  }
  Outcome out;
  out.pass = max_err <= 1e-10;
  out.detail = "max |avg - M_n(psi_star)| = " + num(max_err, 3) +
               " (need <= 1e-10)";
  return out;
}

// 4. Stabilizer enumeration counts 6 / 60 / 1080 / 36720 at N = 1..4.
Outcome criterion_stabilizer_counts() {
  const std::vector<std::uint64_t> expected = {6, 60, 1080, 36720};
  Outcome out;
  out.pass = true;
  std::string counts;
  for (int n_qubits = 1; n_qubits <= 4; ++n_qubits) {
    const StabilizerBasisSet set = enumerate_stabilizer_states(n_qubits);
    const std::uint64_t enumerated = set.size();
    const std::uint64_t formula = stabilizer_state_count(n_qubits);
    if (enumerated != expected[n_qubits - 1] ||
        formula != expected[n_qubits - 1]) {
      out.pass = false;
    }
    counts += (n_qubits > 1 ? "/" : "") + std::to_string(enumerated);
  }
  out.detail = "enumerated " + counts + " (expect 6/60/1080/36720)";
  return out;
}

// 5. Single-qubit reference values for |chi>: M_2, M_1, D_min, LR.
Outcome criterion_single_qubit_values() {
  const DenseState chi = make_chi();
  const double m2_err = std::abs(m_n(chi, 2.0).value - std::log(1.5));
  const double m1_err = std::abs(m_n(chi, 1.0).value - 0.5 * std::log(3.0));
  const MonotoneReport report = monotone_report(chi);
  const double dmin_ref = -std::log((1.0 + 1.0 / std::sqrt(3.0)) / 2.0);
  const double dmin_err = std::abs(report.d_min - dmin_ref);
  const double lr_err =
      std::abs(report.log_robustness - 0.5 * std::log(3.0));
  Outcome out;
  out.pass = m2_err <= 1e-10 && m1_err <= 1e-10 && dmin_err <= 1e-9 &&
             lr_err <= 1e-6;
  out.detail = "errors: M_2 " + num(m2_err, 3) + ", M_1 " + num(m1_err, 3) +
               ", D_min " + num(dmin_err, 3) + ", LR " + num(lr_err, 3);
  return out;
}

// 6. Inequality fuzzing: 500 seeded random states at N in {1, 2, 3} and
//    n in {0.5, 2, 3}; every slack >= -1e-8; under 10 minutes.
Outcome criterion_inequality_fuzzing() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> n_list = {0.5, 2.0, 3.0};
  const int num_states = 500;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < num_states; ++i) {
    const int n_qubits = 1 + i % 3;
    std::mt19937_64 rng = make_stream(kSeed, 60000 + i);
    const DenseState state = haar_random_state(n_qubits, rng);
    const InequalityReport report = check_inequality_suite(state, n_list);
    min_slack = std::min(min_slack, report.dmin_vs_lr_slack);
    for (const InequalityCheck& check : report.checks) {
      if (check.lr_applicable) {
        min_slack = std::min(min_slack, check.lr_slack);
      }
      if (check.dmin_applicable) {
        min_slack = std::min(min_slack, check.dmin_slack);
      }
    }
  }
  const double seconds = elapsed_seconds(start);
  Outcome out;
  out.pass = min_slack >= -1e-8 && seconds < 600.0;
  out.detail = "min slack over " + std::to_string(num_states) + " states: " +
               num(min_slack, 3) + " (need >= -1e-8); " + num(seconds, 3) +
               " s (need < 600)";
  return out;
}

// 7. Gradient search: N = 4, n = 1 finds delta_n < -1e-3 within 50
//    restarts; N in {2, 3} never dips below -1e-9 in 100 restarts.
Outcome criterion_gradient_search() {
  const ViolationSearchResult four =
      gradient_search(4, 1.0, 50, 800, 0.1, kSeed);
  const ViolationSearchResult two =
      gradient_search(2, 1.0, 100, 800, 0.1, kSeed);
  const ViolationSearchResult three =
      gradient_search(3, 1.0, 100, 800, 0.1, kSeed);
  Outcome out;
  out.pass = four.delta_n < -1e-3 && two.delta_n >= -1e-9 &&
             three.delta_n >= -1e-9;
  out.detail = "N=4 delta_n " + num(four.delta_n) + " (restart " +
               std::to_string(four.best_restart) + "); N=2 min " +
               num(two.delta_n, 3) + "; N=3 min " + num(three.delta_n, 3);
  return out;
}

// 8. Oracle equivalence: replica M_n vs dense enumeration on 50 random
//    MPSs (N = 6, chi <= 3, n in {2, 3}) within 1e-9, and the exhaustive
//    chain rule vs the dense Xi distribution within 1e-10 at N <= 4.
Outcome criterion_oracle_equivalence() {
  double max_replica_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int chi = 1 + i % 3;
    std::mt19937_64 rng = make_stream(kSeed, 80000 + i);
    const MPS mps = MPS::random_mps(6, chi, rng);
    const DenseState dense = to_dense(mps);
    for (const int n : {2, 3}) {
      const double err = std::abs(replica_m_n(mps, n) -
                                  m_n(dense, static_cast<double>(n)).value);
      max_replica_err = std::max(max_replica_err, err);
    }
  }
  double max_chain_err = 0.0;
  const int chain_chi[4] = {1, 2, 2, 3};
  for (int n_qubits = 1; n_qubits <= 4; ++n_qubits) {
    std::mt19937_64 rng = make_stream(kSeed, 81000 + n_qubits);
    const MPS mps = MPS::random_mps(n_qubits, chain_chi[n_qubits - 1], rng);
    const std::vector<double> chain = exhaustive_chain_rule(mps);
    const XiDistribution dense = xi_distribution(to_dense(mps));
    for (std::size_t idx = 0; idx < chain.size(); ++idx) {
      max_chain_err =
          std::max(max_chain_err, std::abs(chain[idx] - dense.values[idx]));
    }
  }
  Outcome out;
  out.pass = max_replica_err <= 1e-9 && max_chain_err <= 1e-10;
  out.detail = "max replica error " + num(max_replica_err, 3) +
               " (need <= 1e-9); max chain-rule error " +
               num(max_chain_err, 3) + " (need <= 1e-10)";
  return out;
}

// 9. Sampling error scaling: mean |prefix-mean - reference| over 24
//    instances falls with slope -0.5 +- 0.1 across S = 1e2, 1e3, 1e4.
Outcome criterion_sampling_error_scaling() {
  DmrgOptions options;
  options.seed = kSeed;
  const int n_qubits = 10;
  const DmrgResult run =
      dmrg_ground_state(n_qubits, 0.95, 24, 30, 0.5, options);
  const MPS state = compress(run.ground_state, 8, 1e-14);
  const double offset = static_cast<double>(n_qubits) * std::log(2.0);
  const std::vector<std::uint64_t> s_list = {100, 1000, 10000};
  const std::uint64_t s_ref = 100000;
  const int instances = 24;
  std::vector<KahanSum> abs_error(s_list.size());
  for (int inst = 0; inst < instances; ++inst) {
    std::mt19937_64 seeder = make_stream(kSeed, 40000 + inst);
    const std::uint64_t instance_seed = seeder();
    KahanSum acc;
    std::vector<double> prefix_mean(s_list.size(), 0.0);
    std::size_t next = 0;
    for (std::uint64_t s = 0; s < s_ref; ++s) {
      std::mt19937_64 rng = make_stream(instance_seed, s);
      const PauliSample sample = perfect_pauli_sample(state, rng);
      acc.add(-(std::log(sample.xi_value) + offset));
      if (next < s_list.size() && s + 1 == s_list[next]) {
        prefix_mean[next] = acc.value() / static_cast<double>(s + 1);
        ++next;
      }
    }
    const double reference = acc.value() / static_cast<double>(s_ref);
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      abs_error[i].add(std::abs(prefix_mean[i] - reference));
    }
  }
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  const double points = static_cast<double>(s_list.size());
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    const double x = std::log(static_cast<double>(s_list[i]));
    const double y =
        std::log(abs_error[i].value() / static_cast<double>(instances));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (points * sxy - sx * sy) / (points * sxx - sx * sx);
  Outcome out;
  out.pass = slope >= -0.6 && slope <= -0.4;
  out.detail = "log-log slope " + num(slope) + " over S in {1e2, 1e3, 1e4} " +
               "with 24 instances (need in [-0.6, -0.4])";
  return out;
}

// 10. Symmetric-family bound at eps = 0.5, n = 2: closed-form M_2 must stay
//     below 4 log(1.25) + 0.02 for all N <= 60, and the closed form must
//     match dense enumeration at N = 5.  The first clause is a documented
//     FAIL: nine sizes below N = 29 exceed the allowance (see file header).
Outcome criterion_symmetric_bound() {
  const double bound = bound_c(2.0, 0.5) + 0.02;
  int violations = 0;
  double worst_value = -std::numeric_limits<double>::infinity();
  int worst_n = 0;
  for (int n_qubits = 1; n_qubits <= 60; ++n_qubits) {
    SymmetricSEInput input;
    input.n_qubits = n_qubits;
    input.eps = 0.5;
    input.n = 2.0;
    const double value = m_n_psi_eps(input);
    if (value > bound) {
      ++violations;
      if (value > worst_value) {
        worst_value = value;
        worst_n = n_qubits;
      }
    }
  }
  SymmetricSEInput five;
  five.n_qubits = 5;
  five.eps = 0.5;
  five.n = 2.0;
  const double closed = m_n_psi_eps(five);
  const double dense = m_n(make_psi_eps(5, 0.5), 2.0).value;
  const double dense_err = std::abs(closed - dense);
  Outcome out;
  out.pass = violations == 0 && dense_err <= 1e-10;
  out.detail = std::to_string(violations) + " of 60 sizes exceed bound " +
               num(bound);
  if (violations > 0) {
    out.detail += " (worst " + num(worst_value) + " at N = " +
                  std::to_string(worst_n) + ")";
  }
  out.detail += "; closed vs dense at N = 5: " + num(dense_err, 3) +
                " (need <= 1e-10)";
  return out;
}

// 11. XXZ cross-validation.  (a) DMRG penalized energy at N = 10,
//     Delta = 0.95 vs dense diagonalization, relative error <= 1e-6.
//     (b) replica m_2 of the compressed ground state vs dense evaluation,
//     absolute error <= 1e-4.  (c) the m_1(Delta) curve at N = 16 must
//     rise over [-1, 0.9] and then decrease from Delta = 0.95 to 1.0 by
//     more than 3 sigma.  Clause (c) is a documented FAIL: the decrease
//     only develops for N >= 18 (see file header).
Outcome criterion_xxz_cross_validation() {
  DmrgOptions options;
  options.seed = kSeed;
  const DmrgResult run10 = dmrg_ground_state(10, 0.95, 24, 30, 0.5, options);
  const Eigen::MatrixXcd dense_h =
      mpo_to_dense_matrix(xxz_penalized_mpo(10, 0.95, 0.5));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      dense_h, Eigen::EigenvaluesOnly);
  const double ground = solver.eigenvalues()(0);
  const double energy_rel =
      std::abs(run10.energy_penalized - ground) / std::abs(ground);
  const bool energy_ok = energy_rel <= 1e-6;

  const DenseState dense10 = to_dense(run10.ground_state);
  const double m2_dense = m_n(dense10, 2.0).value;
  const double m2_replica =
      replica_m_n(compress(run10.ground_state, 6, 1e-14), 2);
  const double m2_err = std::abs(m2_replica - m2_dense);
  const bool m2_ok = m2_err <= 1e-4;

  const int n_qubits = 16;
  const double inv_n = 1.0 / static_cast<double>(n_qubits);
  const auto sampled_m1 = [&](double delta, std::uint64_t samples) {
    const DmrgResult run =
        dmrg_ground_state(n_qubits, delta, 20, 30, 0.5, options);
    return estimate_m1(run.ground_state, samples, kSeed);
  };
  const SampledEstimate low = sampled_m1(-1.0, 10000);
  const SampledEstimate mid = sampled_m1(0.9, 10000);
  const SampledEstimate near = sampled_m1(0.95, 200000);
  const SampledEstimate end = sampled_m1(1.0, 200000);
  const double rise = mid.value - low.value;
  const double rise_sigma =
      std::hypot(mid.standard_error, low.standard_error);
  const double drop = near.value - end.value;
  const double drop_sigma =
      std::hypot(near.standard_error, end.standard_error);
  const bool rise_ok = rise > 10.0 * rise_sigma;
  const bool drop_ok = drop > 3.0 * drop_sigma;

  Outcome out;
  out.pass = energy_ok && m2_ok && rise_ok && drop_ok;
  out.detail = "energy rel err " + num(energy_rel, 3) +
               " (need <= 1e-6); m_2 err " + num(m2_err, 3) +
               " (need <= 1e-4); m_1/N rise -1 to 0.9: " +
               num(rise * inv_n, 3) + " (" + num(rise / rise_sigma, 3) +
               " sigma, need > 10); decrease 0.95 to 1: " +
               num(drop * inv_n, 3) + " +- " + num(drop_sigma * inv_n, 2) +
               " (" + num(drop_sigma > 0.0 ? drop / drop_sigma : 0.0, 3) +
               " sigma, need > 3)";
  return out;
}

// 12. Bond-dimension convergence at N = 12, Delta = 0.95 against a
//     chi_ref = 8 reference: fidelity nondecreasing over chi in {2..6}
//     (slack 1e-8) and |m_2(chi) - m_2(ref)| decreasing over chi in
//     {3..6}.  The error series starts at chi = 3 because the chi = 2
//     ground state lands nearly orthogonal to the reference (fidelity
//     below 0.01), so its m_2 error does not reflect convergence.
Outcome criterion_bond_convergence() {
  DmrgOptions options;
  options.seed = kSeed;
  ReplicaOptions replica_options;
  replica_options.memory_budget_bytes = std::uint64_t{3} << 30;
  const int n_qubits = 12;
  const double delta = 0.95;
  const DmrgResult ref =
      dmrg_ground_state(n_qubits, delta, 8, 30, 0.5, options);
  const double m2_ref = replica_m_n(ref.ground_state, 2, replica_options);

  std::vector<double> fidelities;
  std::vector<double> m2_errors;
  for (const int chi : {2, 3, 4, 5, 6}) {
    const DmrgResult run =
        dmrg_ground_state(n_qubits, delta, chi, 30, 0.5, options);
    fidelities.push_back(fidelity(run.ground_state, ref.ground_state));
    if (chi >= 3) {
      const double m2 = replica_m_n(run.ground_state, 2, replica_options);
      m2_errors.push_back(std::abs(m2 - m2_ref));
    }
  }
  fidelities.push_back(1.0);  // reference row

  bool fidelity_ok = true;
  for (std::size_t i = 0; i + 1 < fidelities.size(); ++i) {
    if (fidelities[i + 1] < fidelities[i] - 1e-8) {
      fidelity_ok = false;
    }
  }
  bool error_ok = true;
  for (std::size_t i = 0; i + 1 < m2_errors.size(); ++i) {
    if (m2_errors[i + 1] >= m2_errors[i] + 1e-8) {
      error_ok = false;
    }
  }
  Outcome out;
  out.pass = fidelity_ok && error_ok;
  std::string fid_list;
  for (const double f : fidelities) {
    fid_list += (fid_list.empty() ? "" : ", ") + num(f, 4);
  }
  std::string err_list;
  for (const double e : m2_errors) {
    err_list += (err_list.empty() ? "" : ", ") + num(e, 3);
  }
  out.detail = "fidelity [" + fid_list + "] nondecreasing: " +
               (fidelity_ok ? "yes" : "no") + "; m_2 error [" + err_list +
               "] decreasing: " + (error_ok ? "yes" : "no");
  return out;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    Outcome (*run)();
    bool expected_pass;
  };
  const std::vector<Entry> entries = {
      {"counterexample curve", criterion_counterexample_curve, true},
      {"protocol determinism", criterion_protocol_determinism, true},
      {"branch-average identity", criterion_branch_average_identity, true},
      {"stabilizer enumeration counts", criterion_stabilizer_counts, true},
      {"single-qubit reference values", criterion_single_qubit_values, true},
      {"inequality fuzzing", criterion_inequality_fuzzing, true},
      {"gradient violation search", criterion_gradient_search, true},
      {"tensor-kernel oracle equivalence", criterion_oracle_equivalence,
       true},
      {"sampling error scaling", criterion_sampling_error_scaling, true},
      {"symmetric-family bound", criterion_symmetric_bound, false},
      {"xxz cross-validation", criterion_xxz_cross_validation, false},
      {"bond-dimension convergence", criterion_bond_convergence, true},
  };

  std::printf("magiclab acceptance suite: %zu criteria, seed %llu\n",
              entries.size(), static_cast<unsigned long long>(kSeed));
  int passes = 0;
  int mismatches = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& entry = entries[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    bool threw = false;
    try {
      outcome = entry.run();
    } catch (const std::exception& error) {
      threw = true;
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + error.what();
    }
    const double seconds = elapsed_seconds(start);
    std::printf("[%s] criterion %2zu (%7.1f s) %s: %s%s\n",
                outcome.pass ? "PASS" : "FAIL", i + 1, seconds, entry.name,
                outcome.detail.c_str(),
                !entry.expected_pass && !outcome.pass && !threw
                    ? " [documented known failure]"
                    : "");
    std::fflush(stdout);
    if (outcome.pass) {
      ++passes;
    }
    if (threw || outcome.pass != entry.expected_pass) {
      ++mismatches;
    }
  }
  std::printf(
      "summary: %d of %zu criteria pass; %d outcomes differ from the "
      "expected table (criteria 10 and 11 are expected to fail)\n",
      passes, entries.size(), mismatches);
  return mismatches;
}
