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

#include "magiclab/sampling.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace magiclab {

namespace {

constexpr int kMaxSamplerQubits = 32;
constexpr int kMaxChainRuleQubits = 6;
constexpr double kConditionalIntegrityFloor = -1e-12;

// Extends the left marginal environment by one site for all four Pauli
// letters: ell'_alpha = 2^{-1/2} sum_{s,t} sigma^alpha[t,s] A^{sT} ell
// conj(A^t).  Right-canonical tensors make the four squared Frobenius norms
// sum to |ell|_F^2.
std::array<Eigen::MatrixXcd, 4> extend_left_environment(
    const Eigen::MatrixXcd& ell, const MPS::SiteTensor& site) {
  const Eigen::MatrixXcd h0 = site[0].transpose() * ell;
  const Eigen::MatrixXcd h1 = site[1].transpose() * ell;
  const Eigen::MatrixXcd g00 = h0 * site[0].conjugate();
  const Eigen::MatrixXcd g01 = h0 * site[1].conjugate();
  const Eigen::MatrixXcd g10 = h1 * site[0].conjugate();
  const Eigen::MatrixXcd g11 = h1 * site[1].conjugate();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<Eigen::MatrixXcd, 4> next;
  next[0] = inv_sqrt2 * (g00 + g11);
  next[1] = inv_sqrt2 * (g01 + g10);
  next[2] = inv_sqrt2 * (cplx(0, 1) * g01 - cplx(0, 1) * g10);
  next[3] = inv_sqrt2 * (g00 - g11);
  return next;
}

// Normalized conditionals from the four extension weights, applying the
// clipping contract for tiny negative values.
std::array<double, 4> conditionals_from_weights(
    const std::array<double, 4>& weights) {
  double total = 0.0;
  std::array<double, 4> cond{};
  for (int a = 0; a < 4; ++a) {
    if (!(weights[static_cast<std::size_t>(a)] >=
          kConditionalIntegrityFloor)) {
      throw std::runtime_error(
          "perfect_pauli_sample: conditional weight " +
          format_g17(weights[static_cast<std::size_t>(a)]) +
          " breaks numerical integrity");
    }
    cond[static_cast<std::size_t>(a)] =
        std::max(0.0, weights[static_cast<std::size_t>(a)]);
    total += cond[static_cast<std::size_t>(a)];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::runtime_error(
        "perfect_pauli_sample: degenerate conditional normalization");
  }
  for (auto& c : cond) c /= total;
  return cond;
}

// <P> of the MPS by a fresh transfer contraction; used to cross-check the
// sampled chain-rule product.
double pauli_expectation_mps(const MPS& mps, const PauliString& pauli) {
  static const std::array<Eigen::Matrix2cd, 4> sigma = [] {
    std::array<Eigen::Matrix2cd, 4> s;
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
  for (int k = 1; k <= mps.n_qubits(); ++k) {
    const auto& site = mps.site(k);
    const auto& m = sigma[static_cast<std::size_t>(pauli.code_at(k))];
    Eigen::MatrixXcd next =
        Eigen::MatrixXcd::Zero(site[0].cols(), site[0].cols());
    for (int sp = 0; sp < 2; ++sp) {
      for (int s = 0; s < 2; ++s) {
        const cplx coeff = m(sp, s);
        if (coeff == cplx(0, 0)) continue;
        next.noalias() += coeff *
                          (site[static_cast<std::size_t>(sp)].adjoint() * env *
                           site[static_cast<std::size_t>(s)]);
      }
    }
    env = std::move(next);
  }
  return env(0, 0).real();
}

void check_sampler_input(const MPS& mps) {
  if (mps.n_qubits() < 1) {
    throw std::invalid_argument("perfect_pauli_sample: empty state");
  }
  if (mps.n_qubits() > kMaxSamplerQubits) {
    throw std::length_error(
        "perfect_pauli_sample: supports at most 32 qubits");
  }
}

// Core sampler; requires right-canonical normalized tensors.
PauliSample sample_right_canonical(const MPS& mps, std::mt19937_64& rng) {
  const int n = mps.n_qubits();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXcd ell = Eigen::MatrixXcd::Ones(1, 1);
  std::uint64_t word_index = 0;
  PauliSample sample;
  sample.conditional_trace.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const auto ext = extend_left_environment(ell, mps.site(k));
    std::array<double, 4> weights{};
    for (int a = 0; a < 4; ++a) {
      weights[static_cast<std::size_t>(a)] =
          ext[static_cast<std::size_t>(a)].squaredNorm();
    }
    const auto cond = conditionals_from_weights(weights);
    const double u = unit(rng);
    int chosen = -1;
    double cum = 0.0;
    for (int a = 0; a < 4; ++a) {
      cum += cond[static_cast<std::size_t>(a)];
      if (u < cum) {
        chosen = a;
        break;
      }
    }
    if (chosen < 0) {
      for (int a = 3; a >= 0; --a) {
        if (cond[static_cast<std::size_t>(a)] > 0.0) {
          chosen = a;
          break;
        }
      }
    }
    if (chosen < 0) {
      throw std::runtime_error("perfect_pauli_sample: no branch selectable");
    }
    const double c = cond[static_cast<std::size_t>(chosen)];
    sample.conditional_trace.push_back(c);
    word_index = word_index * 4 + static_cast<std::uint64_t>(chosen);
    ell = ext[static_cast<std::size_t>(chosen)] /
          std::sqrt(weights[static_cast<std::size_t>(chosen)]);
  }
  sample.pauli = PauliString(n, word_index);
  const double expect = pauli_expectation_mps(mps, sample.pauli);
  sample.xi_value = expect * expect * std::ldexp(1.0, -n);
  return sample;
}

MPS right_canonical_copy(const MPS& mps) {
  MPS copy = mps;
  copy.canonicalize_right();
  const double defect = std::abs(copy.norm() - 1.0);
  if (defect > 1e-8) {
    throw std::invalid_argument(
        "sampling: input MPS must be normalized (defect " +
        format_g17(defect) + ")");
  }
  return copy;
}

void collect_chain_rule(const MPS& mps, int k, const Eigen::MatrixXcd& ell,
                        double prefix, std::size_t index,
                        std::vector<double>& out) {
  const int n = mps.n_qubits();
  if (k > n) {
    out[index] = prefix;
    return;
  }
  const auto ext = extend_left_environment(ell, mps.site(k));
  std::array<double, 4> weights{};
  for (int a = 0; a < 4; ++a) {
    weights[static_cast<std::size_t>(a)] =
        ext[static_cast<std::size_t>(a)].squaredNorm();
  }
  const auto cond = conditionals_from_weights(weights);
  for (int a = 0; a < 4; ++a) {
    const double c = cond[static_cast<std::size_t>(a)];
    const std::size_t child = index * 4 + static_cast<std::size_t>(a);
    if (c <= 0.0 || weights[static_cast<std::size_t>(a)] <= 0.0) {
      continue;  // out is zero-initialized for the whole subtree
    }
    const Eigen::MatrixXcd next =
        ext[static_cast<std::size_t>(a)] /
        std::sqrt(weights[static_cast<std::size_t>(a)]);
    collect_chain_rule(mps, k + 1, next, prefix * c, child, out);
  }
}

struct SampleStatistics {
  double mean = 0.0;
  double stddev = 0.0;
};

SampleStatistics mean_and_stddev(const std::vector<double>& values) {
  KahanSum sum;
  for (double v : values) sum.add(v);
  SampleStatistics stats;
  stats.mean = sum.value() / static_cast<double>(values.size());
  if (values.size() < 2) return stats;
  KahanSum sq;
  for (double v : values) {
    const double d = v - stats.mean;
    sq.add(d * d);
  }
  stats.stddev =
      std::sqrt(sq.value() / static_cast<double>(values.size() - 1));
  return stats;
}

// Per-sample values computed in parallel with counter-based streams; slot i
// depends only on (seed, i), so results are independent of thread count.
std::vector<double> sampled_values(
    const MPS& canonical, std::uint64_t num_samples, std::uint64_t seed,
    const std::function<double(double xi, int n)>& transform) {
  std::vector<double> values(static_cast<std::size_t>(num_samples), 0.0);
  const int n = canonical.n_qubits();
  parallel_for_chunks(
      static_cast<std::size_t>(num_samples),
      [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          auto rng = make_stream(seed, static_cast<std::uint64_t>(i));
          KahanSum log_xi;
          Eigen::MatrixXcd ell = Eigen::MatrixXcd::Ones(1, 1);
          std::uniform_real_distribution<double> unit(0.0, 1.0);
          for (int k = 1; k <= n; ++k) {
            const auto ext = extend_left_environment(ell, canonical.site(k));
            std::array<double, 4> weights{};
            for (int a = 0; a < 4; ++a) {
              weights[static_cast<std::size_t>(a)] =
                  ext[static_cast<std::size_t>(a)].squaredNorm();
            }
            const auto cond = conditionals_from_weights(weights);
            const double u = unit(rng);
            int chosen = -1;
            double cum = 0.0;
            for (int a = 0; a < 4; ++a) {
              cum += cond[static_cast<std::size_t>(a)];
              if (u < cum) {
                chosen = a;
                break;
              }
            }
            if (chosen < 0) {
              for (int a = 3; a >= 0; --a) {
                if (cond[static_cast<std::size_t>(a)] > 0.0) {
                  chosen = a;
                  break;
                }
              }
            }
            if (chosen < 0) {
              throw std::runtime_error(
                  "estimate: no branch selectable at a site");
            }
            log_xi.add(std::log(cond[static_cast<std::size_t>(chosen)]));
            ell = ext[static_cast<std::size_t>(chosen)] /
                  std::sqrt(weights[static_cast<std::size_t>(chosen)]);
          }
          values[i] = transform(std::exp(log_xi.value()), n);
        }
      });
  return values;
}

}  // namespace

PauliSample perfect_pauli_sample(const MPS& mps, std::mt19937_64& rng) {
  check_sampler_input(mps);
  if (mps.canonical_form() == CanonicalForm::kRight) {
    return sample_right_canonical(mps, rng);
  }
  const MPS canonical = right_canonical_copy(mps);
  return sample_right_canonical(canonical, rng);
}

std::vector<double> exhaustive_chain_rule(const MPS& mps) {
  if (mps.n_qubits() < 1) {
    throw std::invalid_argument("exhaustive_chain_rule: empty state");
  }
  if (mps.n_qubits() > kMaxChainRuleQubits) {
    throw std::length_error(
        "exhaustive_chain_rule: supports at most 6 qubits");
  }
  const MPS canonical = mps.canonical_form() == CanonicalForm::kRight
                            ? mps
                            : right_canonical_copy(mps);
  std::vector<double> out(pauli_count(canonical.n_qubits()), 0.0);
  collect_chain_rule(canonical, 1, Eigen::MatrixXcd::Ones(1, 1), 1.0, 0, out);
  return out;
}

SampledEstimate estimate_m1(const MPS& mps, std::uint64_t num_samples,
                            std::uint64_t seed) {
  check_sampler_input(mps);
  if (num_samples < 100) {
    throw std::invalid_argument("estimate_m1: need at least 100 samples");
  }
  const MPS canonical = mps.canonical_form() == CanonicalForm::kRight
                            ? mps
                            : right_canonical_copy(mps);
  const auto values =
      sampled_values(canonical, num_samples, seed, [](double xi, int n) {
        return -std::log(xi) - static_cast<double>(n) * std::log(2.0);
      });
  const auto stats = mean_and_stddev(values);
  SampledEstimate est;
  est.value = stats.mean;
  est.standard_error =
      stats.stddev / std::sqrt(static_cast<double>(num_samples));
  est.num_samples = num_samples;
  return est;
}

SampledEstimate estimate_m_n_sampled(const MPS& mps, double n,
                                     std::uint64_t num_samples,
                                     std::uint64_t seed) {
  check_sampler_input(mps);
  if (num_samples < 100) {
    throw std::invalid_argument(
        "estimate_m_n_sampled: need at least 100 samples");
  }
  if (!(n >= 0.0) || n == 1.0) {
    throw std::invalid_argument(
        "estimate_m_n_sampled: n must be >= 0 and != 1 (use estimate_m1)");
  }
  const MPS canonical = mps.canonical_form() == CanonicalForm::kRight
                            ? mps
                            : right_canonical_copy(mps);
  const double exponent = n - 1.0;
  // The importance weight is <P>^{2(n-1)} = (2^N Xi)^{n-1}; the 2^N factor
  // converts the sampled probability back to the squared expectation.
  const auto values = sampled_values(
      canonical, num_samples, seed, [exponent](double xi, int n_qubits) {
        return std::pow(std::ldexp(xi, n_qubits), exponent);
      });
  const auto stats = mean_and_stddev(values);
  if (!(stats.mean > 0.0)) {
    throw std::runtime_error(
        "estimate_m_n_sampled: non-positive weighted mean");
  }
  SampledEstimate est;
  est.value = std::log(stats.mean) / (1.0 - n);
  est.standard_error = stats.stddev /
                       (std::sqrt(static_cast<double>(num_samples)) *
                        std::abs(1.0 - n) * stats.mean);
  est.num_samples = num_samples;
  return est;
}

}  // namespace magiclab
