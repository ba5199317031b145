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

#ifndef MAGICLAB_REPLICA_HPP_
#define MAGICLAB_REPLICA_HPP_

#include <cstdint>

#include "magiclab/mps.hpp"

namespace magiclab {

struct ReplicaOptions {
  // The contraction environment needs on the order of chi^{4n} complex
  // entries; the call refuses to start if the working set would exceed this.
  std::uint64_t memory_budget_bytes = std::uint64_t{2} << 30;
};

// M_n of a normalized MPS for integer n in {2, 3, 4}, computed exactly by
// contracting 2n replicas of the transfer network.  Cost is
// O(N * n * chi^{4n+2}); memory is O(chi^{4n}).  Throws resource_error when
// the working set would exceed options.memory_budget_bytes.
double replica_m_n(const MPS& mps, int n, const ReplicaOptions& options = {});

}  // namespace magiclab

#endif  // MAGICLAB_REPLICA_HPP_
