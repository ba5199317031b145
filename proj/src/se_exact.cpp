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

#include "magiclab/se_exact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "magiclab/pauli.hpp"

namespace magiclab {

namespace {

// Streams all 4^N Pauli expectations once and accumulates, per requested
// Renyi index: the power sum sum_P |e|^{2n} (n > 0), the support count
// (n = 0), and the Shannon sum -sum_P Xi log Xi (n = 1).  Reduction is over
// a fixed chunk grid merged in chunk order, so results do not depend on the
// worker count.
struct XiPass {
  std::vector<double> power_sums;   // aligned with n_grid; 0 where n in {0,1}
  std::vector<std::uint64_t> supports;  // support count where n == 0
  double shannon_sum = 0.0;         // filled if any n == 1
};

XiPass run_xi_pass(const DenseState& state, const std::vector<double>& n_grid) {
  const std::uint64_t count = pauli_count(state.n_qubits());
  const bool want_shannon =
      std::any_of(n_grid.begin(), n_grid.end(),
                  [](double n) { return n == 1.0; });
  const bool want_support =
      std::any_of(n_grid.begin(), n_grid.end(),
                  [](double n) { return n == 0.0; });
  const double xi_scale = std::ldexp(1.0, -state.n_qubits());

  const std::size_t chunk = detail::chunk_size_for(count);
  const std::size_t n_chunks = (count + chunk - 1) / chunk;
  struct ChunkAcc {
    std::vector<KahanSum> powers;
    KahanSum shannon;
    std::uint64_t support = 0;
  };
  std::vector<ChunkAcc> acc(n_chunks);

  parallel_for_chunks(count, [&](std::size_t c, std::size_t begin,
                                 std::size_t end) {
    ChunkAcc local;
    local.powers.resize(n_grid.size());
    for (std::size_t idx = begin; idx < end; ++idx) {
      const double e =
          expectation(state, PauliString(state.n_qubits(), idx));
      const double abs_e = std::abs(e);
      if (want_support && abs_e > kSupportThreshold) ++local.support;
      if (want_shannon) {
        const double xi = e * e * xi_scale;
        if (xi > 0.0) local.shannon.add(-xi * std::log(xi));
      }
      for (std::size_t k = 0; k < n_grid.size(); ++k) {
        const double n = n_grid[k];
        if (n == 0.0 || n == 1.0) continue;
        local.powers[k].add(pow_2n(abs_e, n));
      }
    }
    acc[c] = std::move(local);
  });

  XiPass out;
  out.power_sums.assign(n_grid.size(), 0.0);
  out.supports.assign(n_grid.size(), 0);
  std::vector<KahanSum> merged(n_grid.size());
  KahanSum shannon;
  std::uint64_t support = 0;
  for (const ChunkAcc& a : acc) {
    for (std::size_t k = 0; k < n_grid.size(); ++k) {
      merged[k].merge(a.powers[k]);
    }
    shannon.merge(a.shannon);
    support += a.support;
  }
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    out.power_sums[k] = merged[k].value();
    out.supports[k] = support;
  }
  out.shannon_sum = shannon.value();
  return out;
}

double m_n_from_pass(const XiPass& pass, std::size_t k, double n,
                     int n_qubits) {
  const double n_log2 = n_qubits * std::log(2.0);
  if (n == 1.0) return pass.shannon_sum - n_log2;
  if (n == 0.0) {
    if (pass.supports[k] == 0) {
      throw std::runtime_error("m_n: empty Pauli support");
    }
    return std::log(static_cast<double>(pass.supports[k])) - n_log2;
  }
  return (std::log(pass.power_sums[k]) - n_log2) / (1.0 - n);
}

void check_n(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("renyi index must be finite and >= 0");
  }
}

}  // namespace

SEValue renyi_se(const DenseState& state, double n) {
  check_n(n);
  if (n == 1.0) {
    throw std::invalid_argument(
        "renyi_se: n = 1 is the von Neumann limit; call von_neumann_se");
  }
  const std::vector<double> grid = {n};
  const XiPass pass = run_xi_pass(state, grid);
  return SEValue{n, m_n_from_pass(pass, 0, n, state.n_qubits()),
                 state.n_qubits()};
}

SEValue von_neumann_se(const DenseState& state) {
  const std::vector<double> grid = {1.0};
  const XiPass pass = run_xi_pass(state, grid);
  return SEValue{1.0, m_n_from_pass(pass, 0, 1.0, state.n_qubits()),
                 state.n_qubits()};
}

SEValue m_n(const DenseState& state, double n) {
  check_n(n);
  if (n == 1.0) return von_neumann_se(state);
  return renyi_se(state, n);
}

std::vector<SEValue> se_curve(const DenseState& state,
                              const std::vector<double>& n_grid) {
  for (double n : n_grid) check_n(n);
  const XiPass pass = run_xi_pass(state, n_grid);
  std::vector<SEValue> out;
  out.reserve(n_grid.size());
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    out.push_back(SEValue{n_grid[k],
                          m_n_from_pass(pass, k, n_grid[k], state.n_qubits()),
                          state.n_qubits()});
  }
  return out;
}

double omega_m_n_closed(double s, double n) {
  check_n(n);
  const double sx = std::sin(2.0 * s);
  const double sz = std::cos(2.0 * s);
  const double log2 = std::log(2.0);
  if (n == 0.0) {
    int support = 1;  // identity
    if (std::abs(sx) > kSupportThreshold) ++support;
    if (std::abs(sz) > kSupportThreshold) ++support;
    return std::log(static_cast<double>(support)) - log2;
  }
  if (n == 1.0) {
    const double xs[3] = {0.5, 0.5 * sx * sx, 0.5 * sz * sz};
    double shannon = 0.0;
    for (double xi : xs) {
      if (xi > 0.0) shannon -= xi * std::log(xi);
    }
    return shannon - log2;
  }
  const double power_sum =
      1.0 + pow_2n(std::abs(sx), n) + pow_2n(std::abs(sz), n);
  return (std::log(power_sum) - log2) / (1.0 - n);
}

ScalingFit omega_scaling_fit(double n, const std::vector<double>& s_grid) {
  check_n(n);
  if (s_grid.size() < 5) {
    throw std::invalid_argument(
        "omega_scaling_fit: need at least 5 grid points");
  }
  for (double s : s_grid) {
    if (!(s > 0.0 && s <= 0.2)) {
      throw std::invalid_argument(
          "omega_scaling_fit: s values must lie in (0, 0.2]");
    }
  }
  ScalingFit fit;
  std::vector<double> xs, ys;
  for (double s : s_grid) {
    const double value = m_n(make_omega(s), n).value;
    if (value < 1e-14) continue;  // underflow guard
    fit.used_s.push_back(s);
    xs.push_back(std::log(s));
    ys.push_back(std::log(value));
  }
  if (xs.size() < 2) {
    throw std::domain_error(
        "omega_scaling_fit: fewer than two grid points above the underflow "
        "floor");
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

}  // namespace magiclab
