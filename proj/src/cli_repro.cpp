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

#include "magiclab/cli_repro.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"
#include "magiclab/dmrg.hpp"
#include "magiclab/monotones.hpp"
#include "magiclab/mps.hpp"
#include "magiclab/protocols.hpp"
#include "magiclab/replica.hpp"
#include "magiclab/sampling.hpp"
#include "magiclab/se_exact.hpp"
#include "magiclab/symmetric.hpp"

namespace magiclab {
namespace {

constexpr double kGridSnap = 1e-9;

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + token + "'");
  }
  if (used != token.size()) {
    throw std::invalid_argument("trailing characters in number: '" + token +
                                "'");
  }
  return value;
}

void append_range(const std::string& token, std::vector<double>& out) {
  const std::size_t c1 = token.find(':');
  if (c1 == std::string::npos) {
    out.push_back(parse_number(token));
    return;
  }
  const std::size_t c2 = token.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw std::invalid_argument("range needs lo:hi:step, got '" + token + "'");
  }
  const double lo = parse_number(token.substr(0, c1));
  const double hi = parse_number(token.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_number(token.substr(c2 + 1));
  if (!(step > 0.0)) {
    throw std::invalid_argument("range step must be > 0 in '" + token + "'");
  }
  if (hi < lo) {
    throw std::invalid_argument("range hi < lo in '" + token + "'");
  }
  const auto count =
      static_cast<std::size_t>(std::floor((hi - lo) / step + kGridSnap)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(lo + step * static_cast<double>(i));
  }
}

std::ofstream open_output(const RunConfig& config, const char* filename,
                          std::filesystem::path* path_out) {
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" +
                             config.output_dir.string() +
                             "': " + ec.message());
  }
  const std::filesystem::path path = config.output_dir / filename;
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  }
  if (path_out != nullptr) {
    *path_out = path;
  }
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed on '" + path.string() + "'");
  }
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void require_profile(const RunConfig& config) {
  if (config.profile != "desk" && config.profile != "paper") {
    throw std::invalid_argument("profile must be 'desk' or 'paper', got '" +
                                config.profile + "'");
  }
}

bool is_paper(const RunConfig& config) { return config.profile == "paper"; }

double single_delta(const RunConfig& config, double fallback) {
  if (config.delta_list.empty()) {
    return fallback;
  }
  if (config.delta_list.size() != 1) {
    throw std::invalid_argument(
        "this subcommand takes a single --delta value");
  }
  return config.delta_list.front();
}

int single_chi(const RunConfig& config, int fallback) {
  if (config.chi_list.empty()) {
    return fallback;
  }
  if (config.chi_list.size() != 1) {
    throw std::invalid_argument("this subcommand takes a single --chi value");
  }
  return config.chi_list.front();
}

std::uint64_t sample_count(const RunConfig& config, std::uint64_t fallback) {
  if (config.samples < 0) {
    return fallback;
  }
  if (config.samples == 0) {
    throw std::invalid_argument("--samples must be >= 1");
  }
  return static_cast<std::uint64_t>(config.samples);
}

DmrgResult ground_state_run(int n_qubits, double delta, int chi,
                            std::uint64_t seed) {
  DmrgOptions options;
  options.seed = seed;
  DmrgResult result = dmrg_ground_state(n_qubits, delta, chi, 30, 0.5,
                                        options);
  if (!result.converged) {
    std::cerr << "warning: DMRG did not reach the energy tolerance at delta="
              << fmt(delta) << " chi=" << chi << " (sweeps="
              << result.sweeps_used << ")\n";
  }
  return result;
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty value list");
  }
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    if (end == start) {
      throw std::invalid_argument("empty entry in value list '" + text + "'");
    }
    append_range(text.substr(start, end - start), out);
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

int cmd_fig1_deltam(const RunConfig& config) {
  require_profile(config);
  std::vector<double> grid = config.n_grid;
  if (grid.empty()) {
    grid = parse_value_list("0:15:0.05");
  }
  const std::vector<DeltaMPoint> curve = delta_m_curve(grid);

  std::filesystem::path path;
  std::ofstream out = open_output(config, "fig1_deltam.csv", &path);
  out << "# schema: fig1_deltam v1; columns: n,delta_m\n";
  out << "n,delta_m\n";
  for (const DeltaMPoint& point : curve) {
    out << fmt(point.renyi_index) << ',' << fmt(point.delta_m) << '\n';
  }
  finish_output(out, path);
  std::cout << "fig1-deltam: wrote " << path.string() << " (" << curve.size()
            << " rows)\n";
  return 0;
}

int cmd_fig2_xxz(const RunConfig& config) {
  require_profile(config);
  const bool paper = is_paper(config);
  const int n_qubits = config.n_max > 0 ? config.n_max : (paper ? 32 : 16);
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw std::invalid_argument("fig2 requires an even qubit number >= 2");
  }
  const int chi = single_chi(config, paper ? 40 : 20);
  if (chi < 2) {
    throw std::invalid_argument("fig2 requires chi >= 2");
  }
  const std::uint64_t samples =
      sample_count(config, paper ? 100000 : 10000);
  std::vector<double> deltas = config.delta_list;
  if (deltas.empty()) {
    deltas = parse_value_list(paper ? "-1:0.25:3" : "-1:0.25:1");
  }
  // Bond dimension for the replica m2 pass; the ground state is compressed
  // to this before the chi^{4n} contraction.
  const int chi_m2 = 6;

  std::filesystem::path path;
  std::ofstream out = open_output(config, "fig2_xxz.csv", &path);
  out << "# schema: fig2_xxz v1; columns: delta,m1_hat,m1_stderr,m2; "
         "densities (per qubit); N="
      << n_qubits << " chi=" << chi << " samples=" << samples
      << " chi_m2=" << chi_m2 << " seed=" << config.seed << "\n";
  out << "delta,m1_hat,m1_stderr,m2\n";
  const double inv_n = 1.0 / static_cast<double>(n_qubits);
  for (const double delta : deltas) {
    const DmrgResult run =
        ground_state_run(n_qubits, delta, chi, config.seed);
    const SampledEstimate m1 =
        estimate_m1(run.ground_state, samples, config.seed);
    const MPS small = compress(run.ground_state, chi_m2, 1e-14);
    const double m2 = replica_m_n(small, 2);
    out << fmt(delta) << ',' << fmt(m1.value * inv_n) << ','
        << fmt(m1.standard_error * inv_n) << ',' << fmt(m2 * inv_n) << '\n';
  }
  finish_output(out, path);
  std::cout << "fig2-xxz: wrote " << path.string() << " (" << deltas.size()
            << " rows)\n";
  return 0;
}

int cmd_fig3_bound(const RunConfig& config) {
  require_profile(config);
  const double eps = config.eps >= 0.0 ? config.eps : 0.5;
  double n = 2.0;
  if (!config.n_grid.empty()) {
    if (config.n_grid.size() != 1) {
      throw std::invalid_argument("fig3 takes a single --n-grid value");
    }
    n = config.n_grid.front();
  }
  if (!(n > 1.0)) {
    throw std::invalid_argument("fig3 requires a Renyi index n > 1");
  }
  const int n_max = config.n_max > 0 ? config.n_max : 60;
  const double bound = bound_c(n, eps);

  std::filesystem::path path;
  std::ofstream out = open_output(config, "fig3_bound.csv", &path);
  out << "# schema: fig3_bound v1; columns: N,m_n,bound_c; eps=" << fmt(eps)
      << " n=" << fmt(n) << "\n";
  out << "N,m_n,bound_c\n";
  for (int qubits = 1; qubits <= n_max; ++qubits) {
    SymmetricSEInput input;
    input.n_qubits = qubits;
    input.eps = eps;
    input.n = n;
    out << qubits << ',' << fmt(m_n_psi_eps(input)) << ',' << fmt(bound)
        << '\n';
  }
  finish_output(out, path);
  std::cout << "fig3-bound: wrote " << path.string() << " (" << n_max
            << " rows)\n";
  return 0;
}

int cmd_fig4_sampling_error(const RunConfig& config) {
  require_profile(config);
  const bool paper = is_paper(config);
  const int n_qubits = config.n_max > 0 ? config.n_max : (paper ? 32 : 10);
  if (n_qubits < 2) {
    throw std::invalid_argument("fig4 requires at least 2 qubits");
  }
  const double delta = single_delta(config, 0.95);
  const int chi = single_chi(config, paper ? 40 : 24);
  const int chi_sample = std::min(chi, paper ? 12 : 8);
  const int instances = config.restarts > 0 ? config.restarts
                                            : (paper ? 100 : 24);
  if (instances < 2) {
    throw std::invalid_argument("fig4 requires at least 2 instances");
  }
  const std::uint64_t s_ref = sample_count(config, 100000);
  const std::vector<std::uint64_t> s_grid = {100, 1000, 10000};
  std::vector<std::uint64_t> s_list;
  for (const std::uint64_t s : s_grid) {
    if (2 * s <= s_ref) {
      s_list.push_back(s);
    }
  }
  if (s_list.empty()) {
    throw std::invalid_argument(
        "fig4 requires --samples >= 2 x the smallest grid point (200)");
  }

  const DmrgResult run = ground_state_run(n_qubits, delta, chi, config.seed);
  const MPS state = compress(run.ground_state, chi_sample, 1e-14);
  const double offset = static_cast<double>(n_qubits) * std::log(2.0);

  // Per instance: one stream of s_ref samples; the estimate at budget S is
  // the prefix mean of the first S values, and the reference is the full
  // mean, so the instance's error curve is a single deterministic pass.
  std::vector<KahanSum> abs_error(s_list.size());
  for (int inst = 0; inst < instances; ++inst) {
    std::mt19937_64 seeder = make_stream(config.seed, 40000 + inst);
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
    const double ref = acc.value() / static_cast<double>(s_ref);
    for (std::size_t i = 0; i < s_list.size(); ++i) {
      abs_error[i].add(std::abs(prefix_mean[i] - ref));
    }
  }

  std::filesystem::path path;
  std::ofstream out = open_output(config, "fig4_sampling_error.csv", &path);
  out << "# schema: fig4_sampling_error v1; columns: S,mean_abs_error; N="
      << n_qubits << " delta=" << fmt(delta) << " chi_sample=" << chi_sample
      << " instances=" << instances << " S_ref=" << s_ref
      << " seed=" << config.seed << "\n";
  out << "S,mean_abs_error\n";
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    out << s_list[i] << ','
        << fmt(abs_error[i].value() / static_cast<double>(instances)) << '\n';
  }
  finish_output(out, path);
  std::cout << "fig4-sampling-error: wrote " << path.string() << " ("
            << s_list.size() << " rows)\n";
  return 0;
}

int cmd_fig6_bond(const RunConfig& config) {
  require_profile(config);
  const bool paper = is_paper(config);
  const int n_qubits = config.n_max > 0 ? config.n_max : (paper ? 32 : 12);
  if (n_qubits < 2) {
    throw std::invalid_argument("fig6 requires at least 2 qubits");
  }
  const double delta = single_delta(config, 0.95);
  const std::uint64_t samples =
      sample_count(config, paper ? 100000 : 10000);
  std::vector<int> chi_list;
  if (config.chi_list.empty()) {
    chi_list = paper ? std::vector<int>{2, 3, 4, 5, 6, 8}
                     : std::vector<int>{2, 3, 4, 5, 6};
  } else {
    chi_list = config.chi_list;
  }
  const int chi_ref = paper ? 32 : 8;
  for (const int chi : chi_list) {
    if (chi < 1 || chi > chi_ref) {
      throw std::invalid_argument(
          "fig6 requires every --chi in [1, chi_ref=" +
          std::to_string(chi_ref) + "]");
    }
  }

  ReplicaOptions replica_options;
  replica_options.memory_budget_bytes = std::uint64_t{3} << 30;
  const double inv_n = 1.0 / static_cast<double>(n_qubits);
  const DmrgResult ref = ground_state_run(n_qubits, delta, chi_ref,
                                          config.seed);

  std::filesystem::path path;
  std::ofstream out = open_output(config, "fig6_bond.csv", &path);
  out << "# schema: fig6_bond v1; columns: chi,m1_hat,m2,fidelity_to_ref; "
         "densities (per qubit); N="
      << n_qubits << " delta=" << fmt(delta) << " chi_ref=" << chi_ref
      << " samples=" << samples << " seed=" << config.seed << "\n";
  out << "chi,m1_hat,m2,fidelity_to_ref\n";
  const auto emit_row = [&](int chi, const MPS& state, double fid) {
    const SampledEstimate m1 = estimate_m1(state, samples, config.seed);
    double m2;
    if (chi > 8) {
      // The chi^{4n} replica contraction is out of reach above chi=8; use
      // the sampled n=2 estimator instead.
      m2 = estimate_m_n_sampled(state, 2.0, samples, config.seed).value;
    } else {
      m2 = replica_m_n(state, 2, replica_options);
    }
    out << chi << ',' << fmt(m1.value * inv_n) << ',' << fmt(m2 * inv_n)
        << ',' << fmt(fid) << '\n';
  };
  for (const int chi : chi_list) {
    const DmrgResult run =
        ground_state_run(n_qubits, delta, chi, config.seed);
    emit_row(chi, run.ground_state,
             fidelity(run.ground_state, ref.ground_state));
  }
  emit_row(chi_ref, ref.ground_state, 1.0);
  finish_output(out, path);
  std::cout << "fig6-bond: wrote " << path.string() << " ("
            << chi_list.size() + 1 << " rows)\n";
  return 0;
}

int cmd_check_inequalities(const RunConfig& config) {
  require_profile(config);
  const std::uint64_t num_states =
      sample_count(config, is_paper(config) ? 2000 : 500);
  std::vector<double> n_list = config.n_grid;
  if (n_list.empty()) {
    n_list = {0.5, 2.0, 3.0};
  }
  std::vector<int> qubit_list;
  if (config.n_max > 0) {
    if (config.n_max > 3) {
      throw std::invalid_argument(
          "check-inequalities requires --nmax <= 3 (log-robustness LP)");
    }
    qubit_list = {config.n_max};
  } else {
    qubit_list = {1, 2, 3};
  }

  double min_lr_slack = std::numeric_limits<double>::infinity();
  double min_dmin_slack = std::numeric_limits<double>::infinity();
  double min_dmin_vs_lr = std::numeric_limits<double>::infinity();
  nlohmann::json violations = nlohmann::json::array();
  constexpr double kSlackFloor = -1e-8;

  for (std::uint64_t i = 0; i < num_states; ++i) {
    const int n_qubits =
        qubit_list[static_cast<std::size_t>(i % qubit_list.size())];
    std::mt19937_64 rng = make_stream(config.seed, i);
    const DenseState state = haar_random_state(n_qubits, rng);
    const InequalityReport report = check_inequality_suite(state, n_list);
    min_dmin_vs_lr = std::min(min_dmin_vs_lr, report.dmin_vs_lr_slack);
    if (report.dmin_vs_lr_slack < kSlackFloor) {
      violations.push_back({{"state_index", i},
                            {"n_qubits", n_qubits},
                            {"inequality", "dmin_le_lr"},
                            {"slack", report.dmin_vs_lr_slack}});
    }
    for (const InequalityCheck& check : report.checks) {
      if (check.lr_applicable) {
        min_lr_slack = std::min(min_lr_slack, check.lr_slack);
        if (check.lr_slack < kSlackFloor) {
          violations.push_back({{"state_index", i},
                                {"n_qubits", n_qubits},
                                {"renyi_index", check.renyi_index},
                                {"inequality", "m_n_le_2lr"},
                                {"slack", check.lr_slack}});
        }
      }
      if (check.dmin_applicable) {
        min_dmin_slack = std::min(min_dmin_slack, check.dmin_slack);
        if (check.dmin_slack < kSlackFloor) {
          violations.push_back({{"state_index", i},
                                {"n_qubits", n_qubits},
                                {"renyi_index", check.renyi_index},
                                {"inequality", "m_n_le_dmin_factor"},
                                {"slack", check.dmin_slack}});
        }
      }
    }
  }

  nlohmann::json doc;
  doc["schema"] = "check_inequalities v1";
  doc["seed"] = config.seed;
  doc["num_states"] = num_states;
  doc["qubit_list"] = qubit_list;
  doc["n_list"] = n_list;
  doc["slack_floor"] = kSlackFloor;
  doc["min_slacks"] = {{"m_n_le_2lr", min_lr_slack},
                       {"m_n_le_dmin_factor", min_dmin_slack},
                       {"dmin_le_lr", min_dmin_vs_lr}};
  doc["violations"] = violations;
  doc["pass"] = violations.empty();

  std::filesystem::path path;
  std::ofstream out = open_output(config, "check_inequalities.json", &path);
  out << doc.dump(2) << '\n';
  finish_output(out, path);
  std::cout << "check-inequalities: " << num_states << " states, "
            << violations.size() << " violations; wrote " << path.string()
            << "\n";
  return violations.empty() ? 0 : 1;
}

int cmd_search_violation(const RunConfig& config) {
  require_profile(config);
  const bool paper = is_paper(config);
  const int n_qubits = config.n_max > 0 ? config.n_max : 4;
  double n = 1.0;
  if (!config.n_grid.empty()) {
    if (config.n_grid.size() != 1) {
      throw std::invalid_argument(
          "search-violation takes a single --n-grid value");
    }
    n = config.n_grid.front();
  }
  const int restarts =
      config.restarts > 0 ? config.restarts : (paper ? 200 : 50);
  const int max_iters = paper ? 2000 : 800;

  const ViolationSearchResult result =
      gradient_search(n_qubits, n, restarts, max_iters, 0.1, config.seed);

  std::filesystem::path path;
  std::ofstream out = open_output(config, "search_violation.json", &path);
  out << violation_search_result_to_json(result) << '\n';
  finish_output(out, path);
  std::cout << "search-violation: N=" << n_qubits << " n=" << fmt(n)
            << " best delta_n=" << fmt(result.delta_n) << " (restart "
            << result.best_restart << "); wrote " << path.string() << "\n";
  return 0;
}

int run_subcommand(const RunConfig& config) {
  try {
    if (config.subcommand == "fig1-deltam") return cmd_fig1_deltam(config);
    if (config.subcommand == "fig2-xxz") return cmd_fig2_xxz(config);
    if (config.subcommand == "fig3-bound") return cmd_fig3_bound(config);
    if (config.subcommand == "fig4-sampling-error") {
      return cmd_fig4_sampling_error(config);
    }
    if (config.subcommand == "fig6-bond") return cmd_fig6_bond(config);
    if (config.subcommand == "check-inequalities") {
      return cmd_check_inequalities(config);
    }
    if (config.subcommand == "search-violation") {
      return cmd_search_violation(config);
    }
    throw std::invalid_argument("unknown subcommand '" + config.subcommand +
                                "'");
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace magiclab
