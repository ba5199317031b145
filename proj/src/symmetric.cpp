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

#include "magiclab/symmetric.hpp"

#include <cmath>
#include <stdexcept>

#include "magiclab/common.hpp"

namespace magiclab {

namespace {

constexpr int kMaxSymmetricQubits = 200;

double beta_angle() { return 0.5 * std::acos(1.0 / std::sqrt(3.0)); }

void check_input(int n_qubits, double eps) {
  if (n_qubits < 1 || n_qubits > kMaxSymmetricQubits) {
    throw std::length_error("psi_eps closed form supports 1 to " +
                            std::to_string(kMaxSymmetricQubits) +
                            " qubits, got " + std::to_string(n_qubits));
  }
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("psi_eps: eps must be finite and >= 0");
  }
}

}  // namespace

double psi_eps_normalization(int n_qubits, double eps) {
  check_input(n_qubits, eps);
  const double beta = beta_angle();
  const double overlap = std::pow(std::cos(beta), n_qubits) *
                         std::cos(n_qubits * M_PI / 4.0);
  return 1.0 + eps * eps + 2.0 * eps * overlap;
}

double psi_eps_p1(int n_qubits, double eps) {
  const double beta = beta_angle();
  const double s = std::sin(beta);
  return eps * eps * s * s / psi_eps_normalization(n_qubits, eps);
}

double g_n_closed_form(const SymmetricSEInput& input) {
  check_input(input.n_qubits, input.eps);
  if (!(input.n >= 0.0) || !std::isfinite(input.n)) {
    throw std::invalid_argument("g_n_closed_form: n must be finite and >= 0");
  }
  if (input.n == 1.0) {
    throw std::invalid_argument(
        "g_n_closed_form: n = 1 is the von Neumann limit, not covered by "
        "the closed form");
  }
  const int n_sites = input.n_qubits;
  const double eps = input.eps;
  const double n = input.n;
  const double beta = beta_angle();
  const double sin_b = std::sin(beta);
  const double cos_b = std::cos(beta);
  const double norm = psi_eps_normalization(n_sites, eps);
  const double lgamma_total = std::lgamma(n_sites + 1.0);

  // Lattice order fixed: N_z outer, then N_x, then N_y.
  KahanSum sum;
  for (int nz = 0; nz <= n_sites; ++nz) {
    for (int nx = 0; nx + nz <= n_sites; ++nx) {
      for (int ny = 0; nx + ny + nz <= n_sites; ++ny) {
        const int weight = nx + ny + nz;
        double bracket = 0.0;
        if (nx == 0 && ny == 0) bracket += 1.0;
        bracket += eps * eps * std::pow(3.0, -0.5 * weight);
        bracket += 2.0 * eps * std::pow(sin_b, nx + ny) *
                   std::pow(cos_b, n_sites - nx - ny) *
                   std::cos(M_PI * (n_sites - nx + ny) / 4.0);
        bracket /= norm;

        const double abs_bracket = std::abs(bracket);
        double power;
        if (n == 0.0) {
          power = abs_bracket > kSupportThreshold ? 1.0 : 0.0;
        } else {
          power = pow_2n(abs_bracket, n);
        }
        if (power == 0.0) continue;

        const double log_multinomial =
            lgamma_total - std::lgamma(nx + 1.0) - std::lgamma(ny + 1.0) -
            std::lgamma(nz + 1.0) -
            std::lgamma(n_sites - nx - ny - nz + 1.0);
        sum.add(std::exp(log_multinomial) * power);
      }
    }
  }
  return sum.value() * std::ldexp(1.0, -n_sites);
}

double m_n_psi_eps(const SymmetricSEInput& input) {
  if (input.n == 1.0) {
    throw std::invalid_argument(
        "m_n_psi_eps: n = 1 is not covered by the closed form");
  }
  return std::log(g_n_closed_form(input)) / (1.0 - input.n);
}

double bound_c(double n, double eps) {
  if (!(n > 1.0)) {
    throw std::invalid_argument("bound_c: requires n > 1");
  }
  return 2.0 * n / (n - 1.0) * std::log1p(eps * eps);
}

double chi_m_n_closed(double n) {
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("chi_m_n_closed: n must be finite and >= 0");
  }
  const double log2 = std::log(2.0);
  if (n == 0.0) return std::log(4.0) - log2;
  if (n == 1.0) return 0.5 * std::log(3.0);
  return std::log((1.0 + std::pow(3.0, 1.0 - n)) / 2.0) / (1.0 - n);
}

}  // namespace magiclab
