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
#include <sstream>
#include <string>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"
#include "magiclab/pauli.hpp"

using namespace magiclab;

TEST_CASE("enumeration order and round trip") {
  const PauliRange range = enumerate_paulis(2);
  CHECK(range.size() == 16);
  std::uint64_t index = 0;
  for (const PauliString& p : range) {
    CHECK(p.index() == index);
    CHECK(PauliString::from_string(p.to_string()) == p);
    ++index;
  }
  CHECK(index == 16);

  // Site 1 is the most significant base-4 digit.
  CHECK(PauliString(2, 0).to_string() == "II");
  CHECK(PauliString(2, 1).to_string() == "IX");
  CHECK(PauliString(2, 4).to_string() == "XI");
  CHECK(PauliString(2, 15).to_string() == "ZZ");
  CHECK(PauliString::from_string("XZ").index() == 4 * 1 + 3);
}

TEST_CASE("codes, weight, and masks") {
  const PauliString p = PauliString::from_string("XIZY");
  CHECK(p.n_qubits() == 4);
  CHECK(p.code_at(1) == kPauliX);
  CHECK(p.code_at(2) == kPauliI);
  CHECK(p.code_at(3) == kPauliZ);
  CHECK(p.code_at(4) == kPauliY);
  CHECK(p.weight() == 3);
  // Site k maps to bit n_qubits - k: X/Y sites {1, 4} -> bits {3, 0}.
  CHECK(p.x_mask() == 0b1001);
  // Z/Y sites {3, 4} -> bits {1, 0}.
  CHECK(p.z_mask() == 0b0011);
  CHECK(p.y_count() == 1);
}

TEST_CASE("pauli_count bounds") {
  CHECK(pauli_count(1) == 4);
  CHECK(pauli_count(14) == (std::uint64_t{1} << 28));
  CHECK_THROWS_AS(pauli_count(0), std::length_error);
  CHECK_THROWS_AS(pauli_count(15), std::length_error);
}

TEST_CASE("apply is an involution") {
  auto rng = make_stream(7, 0);
  const DenseState state = haar_random_state(3, rng);
  for (const PauliString& p : enumerate_paulis(3)) {
    DenseState twice = state;
    p.apply(twice);
    p.apply(twice);
    CHECK(fidelity(state, twice) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expectation matches the apply-and-project reference") {
  auto rng = make_stream(11, 0);
  const DenseState state = haar_random_state(3, rng);
  for (const PauliString& p : enumerate_paulis(3)) {
    DenseState mapped = state;
    p.apply(mapped);
    const cplx reference = inner_product(state, mapped);
    CHECK(std::abs(reference.imag()) < 1e-12);
    CHECK(expectation(state, p) ==
          doctest::Approx(reference.real()).epsilon(1e-12));
    const cplx raw = expectation_complex(state, p);
    CHECK(std::abs(raw - reference) < 1e-12);
  }
}

TEST_CASE("expectation accepts raw amplitude vectors") {
  auto rng = make_stream(13, 0);
  const DenseState state = haar_random_state(2, rng);
  const PauliString p = PauliString::from_string("XY");
  CHECK(expectation(state.amplitudes(), p) ==
        doctest::Approx(expectation(state, p)).epsilon(1e-14));
}

TEST_CASE("xi_distribution is a probability distribution") {
  for (int n_qubits = 1; n_qubits <= 4; ++n_qubits) {
    auto rng = make_stream(17, static_cast<std::uint64_t>(n_qubits));
    const DenseState state = haar_random_state(n_qubits, rng);
    const XiDistribution dist = xi_distribution(state);
    CHECK(dist.n_qubits == n_qubits);
    CHECK(dist.values.size() == pauli_count(n_qubits));
    KahanSum total;
    for (const double value : dist.values) {
      CHECK(value >= 0.0);
      total.add(value);
    }
    CHECK(total.value() == doctest::Approx(1.0).epsilon(1e-12));
    // The identity string always contributes 2^{-N}.
    CHECK(dist.values[0] ==
          doctest::Approx(std::pow(2.0, -n_qubits)).epsilon(1e-12));
  }
}

TEST_CASE("xi of a computational basis state is uniform on {I,Z} words") {
  const int n_qubits = 3;
  const DenseState zero(n_qubits);
  const XiDistribution dist = xi_distribution(zero);
  const double uniform = std::pow(2.0, -n_qubits);
  for (const PauliString& p : enumerate_paulis(n_qubits)) {
    const bool diagonal = p.x_mask() == 0;
    const double expected = diagonal ? uniform : 0.0;
    CHECK(dist.xi_value(p) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("xi csv export shape") {
  const XiDistribution dist = xi_distribution(make_chi());
  std::ostringstream os;
  write_xi_csv(dist, os);
  std::istringstream is(os.str());
  std::string line;
  REQUIRE(std::getline(is, line));
  CHECK(line == "pauli_word,xi_value");
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    CHECK(line.find(',') != std::string::npos);
  }
  CHECK(rows == 4);
  // Row order follows the enumeration index, I first.
  CHECK(os.str().rfind("pauli_word,xi_value\nI,0.5", 0) == 0);
}
