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

#include "magiclab/pauli.hpp"

#include <bit>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace magiclab {

namespace {

constexpr int kMaxPauliQubits = 14;

void check_pauli_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxPauliQubits) {
    throw std::length_error("pauli enumeration supports 1 to " +
                            std::to_string(kMaxPauliQubits) +
                            " qubits, got " + std::to_string(n_qubits));
  }
}

constexpr char kCodeChars[4] = {'I', 'X', 'Y', 'Z'};

}  // namespace

PauliString::PauliString(int n_qubits, std::uint64_t index)
    : n_qubits_(n_qubits), index_(index), x_mask_(0), z_mask_(0), y_count_(0) {
  if (n_qubits < 1 || n_qubits > 32) {
    throw std::invalid_argument("PauliString: n_qubits out of range");
  }
  if (n_qubits < 32 && index >= (std::uint64_t{1} << (2 * n_qubits))) {
    throw std::invalid_argument("PauliString: index out of range");
  }
  for (int site = 1; site <= n_qubits_; ++site) {
    const int code =
        static_cast<int>((index_ >> (2 * (n_qubits_ - site))) & 3u);
    const std::uint64_t bit = std::uint64_t{1} << (n_qubits_ - site);
    switch (code) {
      case kPauliI: break;
      case kPauliX: x_mask_ |= bit; break;
      case kPauliY:
        x_mask_ |= bit;
        z_mask_ |= bit;
        ++y_count_;
        break;
      case kPauliZ: z_mask_ |= bit; break;
    }
  }
}

PauliString PauliString::from_string(const std::string& word) {
  if (word.empty()) {
    throw std::invalid_argument("PauliString::from_string: empty word");
  }
  std::uint64_t index = 0;
  for (char c : word) {
    int code = -1;
    for (int k = 0; k < 4; ++k) {
      if (kCodeChars[k] == c) code = k;
    }
    if (code < 0) {
      throw std::invalid_argument(
          std::string("PauliString::from_string: invalid character '") + c +
          "'");
    }
    index = (index << 2) | static_cast<std::uint64_t>(code);
  }
  return PauliString(static_cast<int>(word.size()), index);
}

PauliCode PauliString::code_at(int site) const {
  if (site < 1 || site > n_qubits_) {
    throw std::invalid_argument("PauliString::code_at: site out of range");
  }
  return static_cast<PauliCode>((index_ >> (2 * (n_qubits_ - site))) & 3u);
}

int PauliString::weight() const {
  return std::popcount(x_mask_ | z_mask_);
}

std::string PauliString::to_string() const {
  std::string word(static_cast<std::size_t>(n_qubits_), 'I');
  for (int site = 1; site <= n_qubits_; ++site) {
    word[static_cast<std::size_t>(site - 1)] = kCodeChars[code_at(site)];
  }
  return word;
}

void PauliString::apply(DenseState& state) const {
  if (state.n_qubits() != n_qubits_) {
    throw std::invalid_argument("PauliString::apply: qubit counts differ");
  }
  std::vector<cplx>& amps = state.amplitudes();
  const std::size_t dim = amps.size();
  std::vector<cplx> out(dim);
  // i^{y_count} from Y = i X Z per Y site.
  cplx phase(1.0, 0.0);
  for (int k = 0; k < (y_count_ & 3); ++k) phase *= cplx(0.0, 1.0);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t j = i ^ x_mask_;
    const int sign = std::popcount(j & z_mask_) & 1 ? -1 : 1;
    out[i] = phase * static_cast<double>(sign) * amps[j];
  }
  amps = std::move(out);
}

std::uint64_t pauli_count(int n_qubits) {
  check_pauli_qubits(n_qubits);
  return std::uint64_t{1} << (2 * n_qubits);
}

PauliRange::PauliRange(int n_qubits)
    : n_qubits_(n_qubits), count_(pauli_count(n_qubits)) {}

PauliRange enumerate_paulis(int n_qubits) { return PauliRange(n_qubits); }

namespace {

cplx expectation_complex_impl(const std::vector<cplx>& amps,
                              const PauliString& p) {
  if (amps.size() != (std::size_t{1} << p.n_qubits())) {
    throw std::invalid_argument("expectation: qubit counts differ");
  }
  const std::uint64_t xm = p.x_mask();
  const std::uint64_t zm = p.z_mask();
  KahanSum re, im;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const int sign = std::popcount(i & zm) & 1 ? -1 : 1;
    const cplx term =
        static_cast<double>(sign) * std::conj(amps[i ^ xm]) * amps[i];
    re.add(term.real());
    im.add(term.imag());
  }
  cplx value(re.value(), im.value());
  for (int k = 0; k < (p.y_count() & 3); ++k) value *= cplx(0.0, 1.0);
  return value;
}

}  // namespace

cplx expectation_complex(const DenseState& state, const PauliString& p) {
  return expectation_complex_impl(state.amplitudes(), p);
}

double expectation(const DenseState& state, const PauliString& p) {
  return expectation_complex_impl(state.amplitudes(), p).real();
}

double expectation(const std::vector<cplx>& amps, const PauliString& p) {
  return expectation_complex_impl(amps, p).real();
}

XiDistribution xi_distribution(const DenseState& state) {
  check_pauli_qubits(state.n_qubits());
  const std::uint64_t count = pauli_count(state.n_qubits());
  XiDistribution dist;
  dist.n_qubits = state.n_qubits();
  dist.values.assign(count, 0.0);
  const double scale = std::ldexp(1.0, -state.n_qubits());  // 2^{-N}
  parallel_for_chunks(count, [&](std::size_t, std::uint64_t begin,
                                 std::uint64_t end) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const double e = expectation(state, PauliString(dist.n_qubits, idx));
      dist.values[idx] = e * e * scale;
    }
  });
  return dist;
}

void write_xi_csv(const XiDistribution& dist, std::ostream& os) {
  os << "pauli_word,xi_value\n";
  for (std::uint64_t idx = 0; idx < dist.values.size(); ++idx) {
    os << PauliString(dist.n_qubits, idx).to_string() << ','
       << format_g17(dist.values[idx]) << '\n';
  }
}

}  // namespace magiclab
