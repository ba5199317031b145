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

#ifndef MAGICLAB_SAMPLING_HPP_
#define MAGICLAB_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "magiclab/mps.hpp"
#include "magiclab/pauli.hpp"

namespace magiclab {

struct PauliSample {
  PauliString pauli{1, 0};
  // Xi value of the drawn string: <P>^2 / 2^N.
  double xi_value = 0.0;
  // Per-site conditional probabilities; their product equals xi_value.
  std::vector<double> conditional_trace;
};

// Draws one Pauli string from the Xi distribution of a normalized MPS by
// sweeping the chain once and sampling each site's Pauli letter from its
// exact conditional (the ratio of consecutive marginals, so the four
// weights at each site sum to 1 by construction).  A non-right-canonical
// input is canonicalized on a copy first; callers drawing many samples
// should canonicalize once themselves.  Cost is O(N chi^3) per sample;
// n_qubits <= 32.
PauliSample perfect_pauli_sample(const MPS& mps, std::mt19937_64& rng);

// All 4^N Xi values obtained by running the sampler's chain rule down every
// branch (N <= 6).  Indexed by PauliString::index(); used to validate the
// sampler against dense enumeration.
std::vector<double> exhaustive_chain_rule(const MPS& mps);

struct SampledEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t num_samples = 0;
};

// Monte Carlo estimate of M_1 = -E[log Xi] - N log 2 from num_samples
// (>= 100) perfect samples.  Per-sample randomness comes from a counter
// based stream (seed, sample index), so results do not depend on the worker
// thread count.
SampledEstimate estimate_m1(const MPS& mps, std::uint64_t num_samples,
                            std::uint64_t seed);

// Importance-weighted estimate of M_n for n > 1 from the same sampler,
//   M_n = (1-n)^{-1} log E[(2^N Xi)^{n-1}],
// where the expectation runs over strings drawn from Xi.
// The estimator is exact in expectation but its variance grows quickly with
// n and system size; treat it as experimental.  The standard error is the
// delta-method propagation of the sample variance of Xi^{n-1}.
SampledEstimate estimate_m_n_sampled(const MPS& mps, double n,
                                     std::uint64_t num_samples,
                                     std::uint64_t seed);

}  // namespace magiclab

#endif  // MAGICLAB_SAMPLING_HPP_
