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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"
#include "magiclab/pauli.hpp"

using namespace magiclab;

namespace {

double state_distance(const DenseState& a, const DenseState& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out = std::max(out, std::abs(a.amp(i) - b.amp(i)));
  }
  return out;
}

}  // namespace

TEST_CASE("construction and norm validation") {
  const DenseState zero(2);
  CHECK(zero.dim() == 4);
  CHECK(zero.amp(0) == cplx(1.0, 0.0));
  CHECK(zero.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(
      DenseState::from_amplitudes(1, {cplx(1.0, 0.0), cplx(0.5, 0.0)}),
      std::invalid_argument);
  const DenseState scaled = DenseState::from_amplitudes_normalized(
      1, {cplx(3.0, 0.0), cplx(4.0, 0.0)});
  CHECK(scaled.amp(0).real() == doctest::Approx(0.6));
  CHECK(scaled.amp(1).real() == doctest::Approx(0.8));
}

TEST_CASE("named gate algebra") {
  auto rng = make_stream(3, 0);
  const DenseState state = haar_random_state(3, rng);

  DenseState h2 = state;
  h2.apply_h(2);
  h2.apply_h(2);
  CHECK(state_distance(h2, state) < 1e-12);

  DenseState s4 = state;
  for (int i = 0; i < 4; ++i) s4.apply_s(1);
  CHECK(state_distance(s4, state) < 1e-12);

  // HXH = Z.
  DenseState lhs = state;
  lhs.apply_h(3);
  lhs.apply_x(3);
  lhs.apply_h(3);
  DenseState rhs = state;
  rhs.apply_z(3);
  CHECK(state_distance(lhs, rhs) < 1e-12);

  // Y = i X Z.
  DenseState y = state;
  y.apply_y(2);
  DenseState xz = state;
  xz.apply_z(2);
  xz.apply_x(2);
  for (std::size_t i = 0; i < y.dim(); ++i) {
    CHECK(std::abs(y.amp(i) - cplx(0.0, 1.0) * xz.amp(i)) < 1e-12);
  }
}

TEST_CASE("cz is symmetric and matches its matrix") {
  auto rng = make_stream(5, 0);
  const DenseState state = haar_random_state(2, rng);
  DenseState ab = state;
  ab.apply_cz(1, 2);
  DenseState ba = state;
  ba.apply_cz(2, 1);
  CHECK(state_distance(ab, ba) == 0.0);

  Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
  u(3, 3) = -1.0;
  DenseState via_matrix = state;
  via_matrix.apply_unitary2(u, 1, 2);
  CHECK(state_distance(ab, via_matrix) < 1e-12);
}

TEST_CASE("custom unitaries validate unitarity") {
  DenseState state(1);
  Eigen::Matrix2cd not_unitary;
  not_unitary << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(state.apply_unitary1(not_unitary, 1),
                  std::invalid_argument);
}

TEST_CASE("apply_unitary2 site order convention") {
  // |s_a s_b> -> 2 s_a + s_b: a swap-like permutation distinguishes the
  // orders.
  Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  DenseState state(2);
  state.apply_x(1);  // |10>
  state.apply_unitary2(cnot, 1, 2);
  // Control = site 1 -> |11>.
  CHECK(std::abs(state.amp(3) - cplx(1.0, 0.0)) < 1e-12);

  DenseState flipped(2);
  flipped.apply_x(1);
  flipped.apply_unitary2(cnot, 2, 1);
  // Control = site 2 (bit 0) is zero -> state unchanged.
  CHECK(std::abs(flipped.amp(2) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("circuits apply front first") {
  DenseState state(1);
  const Circuit circuit = {GateOp::named(NamedGate::kX, 1),
                           GateOp::named(NamedGate::kS, 1)};
  apply_circuit(state, circuit);
  // S X |0> = i |1>.
  CHECK(std::abs(state.amp(1) - cplx(0.0, 1.0)) < 1e-12);
  const DenseState functional =
      apply_gate(apply_gate(DenseState(1), circuit[0]), circuit[1]);
  CHECK(state_distance(state, functional) < 1e-12);
}

TEST_CASE("measurement branches") {
  auto rng = make_stream(9, 0);
  const DenseState state = haar_random_state(3, rng);
  const auto branches = enumerate_branches(state, {1, 3});
  REQUIRE(branches.size() == 4);
  KahanSum total;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    total.add(branches[b].probability);
    if (!branches[b].present) continue;
    CHECK(branches[b].post_state.norm() == doctest::Approx(1.0));
    REQUIRE(branches[b].outcome_bits.size() == 2);
    // sites.front() is the most significant outcome bit.
    CHECK(branches[b].outcome_bits[0] == static_cast<int>(b >> 1));
    CHECK(branches[b].outcome_bits[1] == static_cast<int>(b & 1));
  }
  CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));

  // A basis state measures deterministically.
  DenseState basis(2);
  basis.apply_x(1);  // |10>
  const auto deterministic = enumerate_branches(basis, 1);
  CHECK(deterministic[0].probability == doctest::Approx(0.0));
  CHECK(deterministic[1].probability == doctest::Approx(1.0));
  CHECK(deterministic[0].present == false);

  auto sample_rng = make_stream(10, 0);
  const MeasurementOutcome sampled =
      measure_computational(basis, {1}, sample_rng);
  CHECK(sampled.outcome_bits[0] == 1);
}

TEST_CASE("state algebra helpers") {
  const DenseState chi = make_chi();
  DenseState plus(1);
  plus.apply_h(1);
  const cplx ip = inner_product(plus, plus);
  CHECK(std::abs(ip - cplx(1.0, 0.0)) < 1e-12);
  CHECK(fidelity(chi, chi) == doctest::Approx(1.0));

  const DenseState product = tensor_product(plus, chi);
  CHECK(product.n_qubits() == 2);
  for (std::size_t i = 0; i < 4; ++i) {
    const cplx expected = plus.amp(i >> 1) * chi.amp(i & 1);
    CHECK(std::abs(product.amp(i) - expected) < 1e-12);
  }
}

TEST_CASE("chi has the symmetric Bloch vector") {
  const DenseState chi = make_chi();
  const double target = 1.0 / std::sqrt(3.0);
  for (const char* word : {"X", "Y", "Z"}) {
    CHECK(expectation(chi, PauliString::from_string(word)) ==
          doctest::Approx(target).epsilon(1e-12));
  }
}

TEST_CASE("reference state amplitude tables") {
  const DenseState chi_star = make_chi_star();
  const double r = 1.0 / std::sqrt(6.0);
  const std::vector<cplx> chi_star_expected = {
      cplx(r, 0.0), cplx(0.0, r), cplx(-r, 0.0), cplx(-r, 0.0),
      cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(r, r)};
  REQUIRE(chi_star.dim() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(chi_star.amp(i) - chi_star_expected[i]) < 1e-12);
  }

  DenseState one(1);
  one.apply_x(1);
  CHECK(state_distance(make_psi_star(), tensor_product(one, chi_star)) <
        1e-12);

  const DenseState phi_star = make_phi_star();
  const double s = 1.0 / (2.0 * std::sqrt(6.0));
  const double q = std::sqrt(2.0) * s;
  const std::vector<cplx> phi_star_expected = {
      cplx(0, 0),      cplx(0, 0),     cplx(0, 0),   cplx(0, 2 * s),
      cplx(s, -s),     cplx(-s, -s),   cplx(-s, s),  cplx(-s, s),
      cplx(q, 0),      cplx(0, q),     cplx(-q, 0),  cplx(-q, 0),
      cplx(0, 0),      cplx(0, 0),     cplx(0, 0),   cplx(q, q)};
  REQUIRE(phi_star.dim() == 16);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(std::abs(phi_star.amp(i) - phi_star_expected[i]) < 1e-12);
  }
}

TEST_CASE("omega and lambda product families") {
  const double s0 = 0.3;
  const DenseState omega = make_omega(s0);
  CHECK(omega.amp(0).real() == doctest::Approx(std::cos(s0)));
  CHECK(omega.amp(1).real() == doctest::Approx(std::sin(s0)));

  const int n_qubits = 3;
  const DenseState lambda = make_lambda_n(s0, n_qubits);
  const DenseState factor = make_omega(s0 / std::sqrt(3.0));
  DenseState product = factor;
  for (int k = 2; k <= n_qubits; ++k) product = tensor_product(product, factor);
  CHECK(state_distance(lambda, product) < 1e-12);
}

TEST_CASE("psi_eps interpolates between zero and the chi product") {
  const int n_qubits = 2;
  const double eps = 0.7;
  const DenseState direct = make_psi_eps(n_qubits, eps);
  const DenseState chi = make_chi();
  const DenseState chi2 = tensor_product(chi, chi);
  // The chi branch enters with per-site phase e^{-i pi/4} on |0>, so the
  // product branch equals e^{-i N pi/4} times the make_chi() product.
  const cplx branch_phase = std::polar(1.0, -n_qubits * M_PI / 4.0);
  std::vector<cplx> amps(4);
  for (std::size_t i = 0; i < 4; ++i) {
    amps[i] = (i == 0 ? cplx(1.0, 0.0) : cplx(0.0, 0.0)) +
              eps * branch_phase * chi2.amp(i);
  }
  const DenseState reference =
      DenseState::from_amplitudes_normalized(n_qubits, std::move(amps));
  CHECK(state_distance(direct, reference) < 1e-12);
}

TEST_CASE("haar sampling is seeded and normalized") {
  auto rng_a = make_stream(21, 0);
  auto rng_b = make_stream(21, 0);
  const DenseState a = haar_random_state(3, rng_a);
  const DenseState b = haar_random_state(3, rng_b);
  CHECK(state_distance(a, b) == 0.0);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
  auto rng_c = make_stream(22, 0);
  const DenseState c = haar_random_state(3, rng_c);
  CHECK(fidelity(a, c) < 1.0 - 1e-3);
}

TEST_CASE("json round trip") {
  auto rng = make_stream(23, 0);
  const DenseState state = haar_random_state(2, rng);
  const DenseState back = state_from_json(state_to_json(state));
  CHECK(back.n_qubits() == 2);
  CHECK(state_distance(state, back) < 1e-15);
  CHECK_THROWS_AS(state_from_json("{\"n_qubits\": 1, \"amplitudes\": []}"),
                  std::invalid_argument);
}
