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

#ifndef MAGICLAB_DENSE_STATE_HPP_
#define MAGICLAB_DENSE_STATE_HPP_

#include <array>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "magiclab/common.hpp"

namespace magiclab {

// Dense representation of a pure state of `n_qubits` qubits.
//
// Basis-state indexing: qubit 1 is the leftmost label and maps to the most
// significant bit of the amplitude index, so |b1 b2 ... bn> lives at index
// sum_k b_k * 2^(n-k).  Sites are 1-based throughout the public API.
class DenseState {
 public:
  // Prepares |0...0>.
  explicit DenseState(int n_qubits);

  // Builds a state from an amplitude vector of length 2^n_qubits.
  // Throws std::invalid_argument if the norm deviates from 1 by more than
  // kNormTolerance.
  static DenseState from_amplitudes(int n_qubits, std::vector<cplx> amps);

  // Same, but rescales the vector to unit norm (the vector must be nonzero).
  static DenseState from_amplitudes_normalized(int n_qubits,
                                               std::vector<cplx> amps);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  cplx amp(std::size_t index) const { return amps_[index]; }
  cplx& amp(std::size_t index) { return amps_[index]; }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }

  double norm() const;
  void renormalize();

  // Single-site gates; `site` is 1-based.
  void apply_h(int site);
  void apply_s(int site);
  void apply_x(int site);
  void apply_y(int site);
  void apply_z(int site);

  // Controlled-Z between two distinct sites (symmetric in its arguments).
  void apply_cz(int site_a, int site_b);

  // Arbitrary one- and two-site unitaries.  The matrix is validated to be
  // unitary to within kNormTolerance, otherwise std::invalid_argument is
  // thrown.  For the two-site form the row/column basis order is
  // |s_a s_b> -> 2*s_a + s_b.
  void apply_unitary1(const Eigen::Matrix2cd& u, int site);
  void apply_unitary2(const Eigen::Matrix4cd& u, int site_a, int site_b);

 private:
  // Bit value selecting `site` inside an amplitude index.
  std::size_t site_bit(int site) const;
  void check_site(int site) const;

  int n_qubits_;
  std::vector<cplx> amps_;
};

// Named single- and two-site gates used by the feedback protocols.
enum class NamedGate { kH, kS, kX, kY, kZ };

struct GateOp {
  enum class Kind { kNamed, kCZ, kCustom1, kCustom2 };

  Kind kind = Kind::kNamed;
  NamedGate gate = NamedGate::kH;
  int site_a = 1;
  int site_b = 1;
  Eigen::Matrix2cd u1;
  Eigen::Matrix4cd u2;

  static GateOp named(NamedGate g, int site);
  static GateOp cz(int site_a, int site_b);
  static GateOp custom1(const Eigen::Matrix2cd& u, int site);
  static GateOp custom2(const Eigen::Matrix4cd& u, int site_a, int site_b);
};

// A circuit is an ordered gate list; apply_circuit applies front() first.
using Circuit = std::vector<GateOp>;

void apply_circuit(DenseState& state, const Circuit& circuit);

// Applies one gate functionally, returning the transformed state.
DenseState apply_gate(const DenseState& state, const GateOp& op);

// One branch of a computational-basis measurement.
struct MeasurementOutcome {
  std::vector<int> outcome_bits;  // one bit per measured site, sites order
  double probability = 0.0;       // Born probability of this branch
  bool present = false;           // false when probability < kBranchProbFloor
  DenseState post_state;          // normalized post-measurement state

  MeasurementOutcome() : post_state(1) {}
};

// All 2^k branches of measuring the listed (distinct, 1-based) sites, in
// increasing order of the outcome word read with sites.front() as the most
// significant bit.  Branch probabilities sum to 1; branches below
// kBranchProbFloor are marked absent and their post state is left as
// |0...0>.
std::vector<MeasurementOutcome> enumerate_branches(
    const DenseState& state, const std::vector<int>& sites);

// Single-site convenience: branches [0] and [1] of measuring `site`.
std::vector<MeasurementOutcome> enumerate_branches(const DenseState& state,
                                                   int site);

// Samples one branch according to the Born rule.
MeasurementOutcome measure_computational(const DenseState& state,
                                         const std::vector<int>& sites,
                                         std::mt19937_64& rng);

// State algebra helpers.
cplx inner_product(const DenseState& a, const DenseState& b);
double fidelity(const DenseState& a, const DenseState& b);
DenseState tensor_product(const DenseState& a, const DenseState& b);

// Reference states.
//
// make_chi: the single-qubit state with Bloch vector (1,1,1)/sqrt(3),
//   eigenvector of (X+Y+Z)/sqrt(3) with eigenvalue +1.
DenseState make_chi();

// make_chi_star: a three-qubit state with amplitudes
//   (1/sqrt(6)) (|000> + i|001> - |010> - |011> + (1+i)|111>).
DenseState make_chi_star();

// make_psi_star: |1> x chi_star (four qubits).
DenseState make_psi_star();

// make_phi_star: the four-qubit input state of the counterexample feedback
// protocol; measuring site 1 and applying the protocol's conditional
// corrections maps it exactly to psi_star on either outcome.
DenseState make_phi_star();

// make_omega: cos(s)|0> + sin(s)|1>.
DenseState make_omega(double s);

// make_lambda_n: the product state omega(s0/sqrt(N))^{x N}.
DenseState make_lambda_n(double s0, int n_qubits);

// make_psi_eps: (|0>^{x N} + eps |chi>^{x N}) / sqrt(normalization).
DenseState make_psi_eps(int n_qubits, double eps);

// Haar-random pure state.
DenseState haar_random_state(int n_qubits, std::mt19937_64& rng);

// JSON serialization.  Schema:
//   {"n_qubits": N, "amplitudes": [[re, im], ...]}
// Reading validates the length and the norm (kNormTolerance).
std::string state_to_json(const DenseState& state);
DenseState state_from_json(const std::string& text);
void write_state_json(const DenseState& state, std::ostream& os);
DenseState read_state_json(std::istream& is);

}  // namespace magiclab

#endif  // MAGICLAB_DENSE_STATE_HPP_
