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

#ifndef MAGICLAB_STABILIZER_SET_HPP_
#define MAGICLAB_STABILIZER_SET_HPP_

#include <cstdint>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"

namespace magiclab {

// Canonical descriptor of one pure stabilizer state.  The state's support
// is the affine subspace {shift XOR span(basis)}; relative to the shift,
// the amplitude on point x = XOR of a row subset T is
//   2^{-k/2} * i^{sum_{i in T} linear_phase[i]} * (-1)^{sum_{i<j in T} quad_phase[ij]}
// with the global phase fixed by a real positive amplitude at the shift.
struct StabilizerDescriptor {
  int subspace_dim = 0;              // k
  std::uint32_t shift = 0;           // zero at all pivot coordinates
  std::vector<std::uint32_t> basis;  // k RREF rows, bit (N-1) = site 1
  std::vector<std::uint8_t> linear_phase;  // k entries in Z_4
  std::vector<std::uint8_t> quad_phase;    // k(k-1)/2 bits, pair (i,j) at
                                           // index i*(2k-i-1)/2 + (j-i-1)
};

// The complete set of pure stabilizer states on n_qubits, with cached dense
// amplitude vectors.
class StabilizerBasisSet {
 public:
  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return descriptors_.size(); }

  const StabilizerDescriptor& descriptor(std::size_t id) const {
    return descriptors_[id];
  }
  const std::vector<cplx>& dense(std::size_t id) const { return dense_[id]; }
  DenseState state(std::size_t id) const;

  friend StabilizerBasisSet enumerate_stabilizer_states(int n_qubits);

 private:
  int n_qubits_ = 0;
  std::vector<StabilizerDescriptor> descriptors_;
  std::vector<std::vector<cplx>> dense_;
};

// Enumerates all pure stabilizer states via the affine canonical form
// (duplicate-free by construction).  Supports n_qubits in [1, 4].
StabilizerBasisSet enumerate_stabilizer_states(int n_qubits);

// Closed-form count 2^N * prod_{k=1..N} (2^k + 1).
std::uint64_t stabilizer_state_count(int n_qubits);

}  // namespace magiclab

#endif  // MAGICLAB_STABILIZER_SET_HPP_
