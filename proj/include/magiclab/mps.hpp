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

#ifndef MAGICLAB_MPS_HPP_
#define MAGICLAB_MPS_HPP_

#include <array>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"

namespace magiclab {

enum class CanonicalForm { kNone, kLeft, kRight, kMixed };

// Matrix product state |Psi> = sum_s A_1^{s_1} ... A_N^{s_N} |s_1...s_N>.
// Site k (1-based, site 1 = qubit 1 = most significant bit) stores two
// chi_{k-1} x chi_k matrices, one per physical value; boundary bond
// dimensions are 1.
class MPS {
 public:
  using SiteTensor = std::array<Eigen::MatrixXcd, 2>;

  MPS() = default;

  // |0...0> as a chi = 1 product MPS.
  static MPS product_zero(int n_qubits);

  // Normalized random MPS with bond dimension min(chi, full rank at each
  // bond); right-canonical on return.
  static MPS random_mps(int n_qubits, int chi, std::mt19937_64& rng);

  int n_qubits() const { return static_cast<int>(tensors_.size()); }
  // Bond dimensions chi_0 .. chi_N (size N+1, both ends 1).
  std::vector<int> bond_dims() const;
  int max_bond_dim() const;

  const SiteTensor& site(int k) const;  // 1-based
  SiteTensor& site(int k);              // resets canonical_form to kNone

  CanonicalForm canonical_form() const { return form_; }
  int canonical_center() const { return center_; }

  double norm() const;   // sqrt(<Psi|Psi>)
  void normalize();      // rescales so norm() == 1

  // QR-based canonicalization (no truncation), with the R factors' phase
  // fixed so repeating the operation leaves the tensors unchanged.
  void canonicalize_left();
  void canonicalize_right();

 private:
  friend MPS from_dense(const DenseState& state, int chi_max,
                        double svd_cutoff, struct TruncationReport* report);
  friend MPS compress(const MPS& mps, int chi_max, double svd_cutoff,
                      struct TruncationReport* report);
  friend MPS load_mps(const std::string& path);

  std::vector<SiteTensor> tensors_;
  CanonicalForm form_ = CanonicalForm::kNone;
  int center_ = 0;
};

// Lower bound on the squared overlap with the untruncated state, tracked
// across sequential SVD truncations.
struct TruncationReport {
  double fidelity_lower_bound = 1.0;
  double discarded_weight = 0.0;
};

// Exact or truncated MPS from a dense state (N <= 14).  When chi_max is at
// least 2^{floor(N/2)} and svd_cutoff <= 0 the conversion is exact.
MPS from_dense(const DenseState& state, int chi_max, double svd_cutoff,
               TruncationReport* report = nullptr);

// Dense amplitudes of the MPS (N <= 14).
DenseState to_dense(const MPS& mps);

// Recompresses to the given bond dimension / cutoff.
MPS compress(const MPS& mps, int chi_max, double svd_cutoff,
             TruncationReport* report = nullptr);

// <a|b> by transfer-matrix contraction, cost O(N chi^3).
cplx overlap(const MPS& a, const MPS& b);

// |<a|b>|^2.
double fidelity(const MPS& a, const MPS& b);

// File format: one JSON header line
//   {"version": 1, "n_qubits": N, "bond_dims": [...],
//    "canonical_flag": "none"|"left"|"right"|"mixed",
//    "canonical_center": c}
// followed by the tensors as raw little-endian doubles, (re, im) pairs in
// row-major (left bond, physical, right bond) order, site 1 first.
void save_mps(const MPS& mps, const std::string& path);
MPS load_mps(const std::string& path);

}  // namespace magiclab

#endif  // MAGICLAB_MPS_HPP_
