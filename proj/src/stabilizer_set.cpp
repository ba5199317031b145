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

#include "magiclab/stabilizer_set.hpp"

#include <cmath>
#include <stdexcept>

namespace magiclab {

namespace {

constexpr int kMaxStabilizerQubits = 4;

// All k-element subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

// i^(e mod 4).
cplx quarter_phase(int e) {
  switch (e & 3) {
    case 0: return cplx(1.0, 0.0);
    case 1: return cplx(0.0, 1.0);
    case 2: return cplx(-1.0, 0.0);
    default: return cplx(0.0, -1.0);
  }
}

std::vector<cplx> dense_from_descriptor(int n_qubits,
                                        const StabilizerDescriptor& d) {
  const int k = d.subspace_dim;
  std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(std::ldexp(1.0, k));
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << k); ++x) {
    std::uint32_t index = d.shift;
    int phase = 0;
    for (int i = 0; i < k; ++i) {
      if ((x >> i) & 1u) {
        index ^= d.basis[static_cast<std::size_t>(i)];
        phase += d.linear_phase[static_cast<std::size_t>(i)];
      }
    }
    for (int i = 0; i < k; ++i) {
      if (!((x >> i) & 1u)) continue;
      for (int j = i + 1; j < k; ++j) {
        if (!((x >> j) & 1u)) continue;
        const int pair = i * (2 * k - i - 1) / 2 + (j - i - 1);
        if (d.quad_phase[static_cast<std::size_t>(pair)]) phase += 2;
      }
    }
    amps[index] = quarter_phase(phase) * scale;
  }
  return amps;
}

}  // namespace

DenseState StabilizerBasisSet::state(std::size_t id) const {
  return DenseState::from_amplitudes(n_qubits_, dense_[id]);
}

std::uint64_t stabilizer_state_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxStabilizerQubits) {
    throw std::length_error("stabilizer_state_count: n_qubits must be in [1, " +
                            std::to_string(kMaxStabilizerQubits) + "]");
  }
  std::uint64_t count = std::uint64_t{1} << n_qubits;
  for (int k = 1; k <= n_qubits; ++k) {
    count *= (std::uint64_t{1} << k) + 1;
  }
  return count;
}

StabilizerBasisSet enumerate_stabilizer_states(int n_qubits) {
  const std::uint64_t expected = stabilizer_state_count(n_qubits);
  const int n = n_qubits;

  StabilizerBasisSet set;
  set.n_qubits_ = n;
  set.descriptors_.reserve(expected);
  set.dense_.reserve(expected);

  for (int k = 0; k <= n; ++k) {
    for (const std::vector<int>& pivots : subsets_of_size(n, k)) {
      // Free positions of each row: non-pivot coordinates right of its pivot.
      std::vector<std::vector<int>> free_positions(
          static_cast<std::size_t>(k));
      int total_free = 0;
      for (int i = 0; i < k; ++i) {
        for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < n; ++c) {
          bool is_pivot = false;
          for (int p : pivots) is_pivot = is_pivot || (p == c);
          if (!is_pivot) {
            free_positions[static_cast<std::size_t>(i)].push_back(c);
            ++total_free;
          }
        }
      }
      std::vector<int> nonpivot;
      for (int c = 0; c < n; ++c) {
        bool is_pivot = false;
        for (int p : pivots) is_pivot = is_pivot || (p == c);
        if (!is_pivot) nonpivot.push_back(c);
      }

      for (std::uint32_t free_bits = 0;
           free_bits < (std::uint32_t{1} << total_free); ++free_bits) {
        std::vector<std::uint32_t> rows(static_cast<std::size_t>(k));
        std::uint32_t fb = free_bits;
        for (int i = 0; i < k; ++i) {
          std::uint32_t row =
              std::uint32_t{1} << (n - 1 - pivots[static_cast<std::size_t>(i)]);
          for (int c : free_positions[static_cast<std::size_t>(i)]) {
            if (fb & 1u) row |= std::uint32_t{1} << (n - 1 - c);
            fb >>= 1;
          }
          rows[static_cast<std::size_t>(i)] = row;
        }

        for (std::uint32_t shift_bits = 0;
             shift_bits < (std::uint32_t{1} << nonpivot.size());
             ++shift_bits) {
          std::uint32_t shift = 0;
          std::uint32_t sb = shift_bits;
          for (int c : nonpivot) {
            if (sb & 1u) shift |= std::uint32_t{1} << (n - 1 - c);
            sb >>= 1;
          }

          const std::uint32_t n_linear = std::uint32_t{1} << (2 * k);
          const std::uint32_t n_quad = std::uint32_t{1} << (k * (k - 1) / 2);
          for (std::uint32_t linear_bits = 0; linear_bits < n_linear;
               ++linear_bits) {
            for (std::uint32_t quad_bits = 0; quad_bits < n_quad;
                 ++quad_bits) {
              StabilizerDescriptor d;
              d.subspace_dim = k;
              d.shift = shift;
              d.basis = rows;
              d.linear_phase.resize(static_cast<std::size_t>(k));
              for (int i = 0; i < k; ++i) {
                d.linear_phase[static_cast<std::size_t>(i)] =
                    static_cast<std::uint8_t>((linear_bits >> (2 * i)) & 3u);
              }
              d.quad_phase.resize(static_cast<std::size_t>(k * (k - 1) / 2));
              for (std::size_t p = 0; p < d.quad_phase.size(); ++p) {
                d.quad_phase[p] =
                    static_cast<std::uint8_t>((quad_bits >> p) & 1u);
              }
              set.dense_.push_back(dense_from_descriptor(n, d));
              set.descriptors_.push_back(std::move(d));
            }
          }
        }
      }
    }
  }

  if (set.descriptors_.size() != expected) {
    throw std::runtime_error(
        "enumerate_stabilizer_states: count mismatch against the closed "
        "formula");
  }
  return set;
}

}  // namespace magiclab
