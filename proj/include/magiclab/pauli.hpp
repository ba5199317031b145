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

#ifndef MAGICLAB_PAULI_HPP_
#define MAGICLAB_PAULI_HPP_

#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <string>
#include <vector>

#include "magiclab/common.hpp"
#include "magiclab/dense_state.hpp"

namespace magiclab {

// Per-site Pauli codes, fixed repo-wide.
enum PauliCode : int { kPauliI = 0, kPauliX = 1, kPauliY = 2, kPauliZ = 3 };

// A phase-free Pauli string P = P_1 x ... x P_N (phase +1 only).
//
// The string is packed 2 bits per site into its enumeration index: the code
// of site 1 is the most significant base-4 digit, so numeric index order is
// lexicographic order of the words with I < X < Y < Z.
class PauliString {
 public:
  PauliString(int n_qubits, std::uint64_t index);

  // Parses a word like "XIZY" (site 1 first).
  static PauliString from_string(const std::string& word);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t index() const { return index_; }

  // Code of 1-based `site`.
  PauliCode code_at(int site) const;

  // Number of non-identity sites.
  int weight() const;

  // Word representation, site 1 first.
  std::string to_string() const;

  // Amplitude-index bit masks (site k maps to bit n_qubits - k).
  std::uint64_t x_mask() const { return x_mask_; }  // sites with X or Y
  std::uint64_t z_mask() const { return z_mask_; }  // sites with Z or Y
  int y_count() const { return y_count_; }

  // Applies P to the state in place (used by involution tests and the
  // expectation kernel's reference path).
  void apply(DenseState& state) const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_qubits_ == b.n_qubits_ && a.index_ == b.index_;
  }

 private:
  int n_qubits_;
  std::uint64_t index_;
  std::uint64_t x_mask_;
  std::uint64_t z_mask_;
  int y_count_;
};

// Number of phase-free Pauli strings, 4^N.  Throws the size-cap error for
// n_qubits outside [1, 14].
std::uint64_t pauli_count(int n_qubits);

// Lazily yields all 4^N strings in index order.
class PauliRange {
 public:
  class iterator {
   public:
    using value_type = PauliString;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator(int n_qubits, std::uint64_t index)
        : n_qubits_(n_qubits), index_(index) {}
    PauliString operator*() const { return PauliString(n_qubits_, index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }
    friend bool operator!=(const iterator& a, const iterator& b) {
      return !(a == b);
    }

   private:
    int n_qubits_;
    std::uint64_t index_;
  };

  explicit PauliRange(int n_qubits);
  iterator begin() const { return iterator(n_qubits_, 0); }
  iterator end() const { return iterator(n_qubits_, count_); }
  std::uint64_t size() const { return count_; }

 private:
  int n_qubits_;
  std::uint64_t count_;
};

PauliRange enumerate_paulis(int n_qubits);

// <psi|P|psi> for a normalized state.  The result of the exact inner product
// is real for Hermitian P; this returns its real part.
double expectation(const DenseState& state, const PauliString& p);

// Same kernel on a raw amplitude vector of length 2^{p.n_qubits()}.
double expectation(const std::vector<cplx>& amps, const PauliString& p);

// The raw complex inner product <psi|P|psi>, for residue checks.
cplx expectation_complex(const DenseState& state, const PauliString& p);

// The distribution Xi_P = <psi|P|psi>^2 / 2^N over all 4^N strings,
// stored by enumeration index.
struct XiDistribution {
  int n_qubits = 0;
  std::vector<double> values;  // values[p.index()] = Xi_P

  double xi_value(const PauliString& p) const { return values[p.index()]; }
};

// Materializes the full distribution (n_qubits <= 14).
XiDistribution xi_distribution(const DenseState& state);

// CSV export: header "pauli_word,xi_value", one row per string in index
// order, values printed with 17 significant digits.
void write_xi_csv(const XiDistribution& dist, std::ostream& os);

}  // namespace magiclab

#endif  // MAGICLAB_PAULI_HPP_
