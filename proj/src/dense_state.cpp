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

#include "magiclab/dense_state.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

namespace magiclab {

namespace {

constexpr int kMaxDenseQubits = 24;

void check_n_qubits(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("DenseState: n_qubits must be in [1, " +
                                std::to_string(kMaxDenseQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

void check_unitary(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  const double defect =
      (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (!(defect <= kNormTolerance)) {
    throw std::invalid_argument(
        "apply_unitary: matrix is not unitary (defect " +
        std::to_string(defect) + ")");
  }
}

}  // namespace

DenseState::DenseState(int n_qubits) : n_qubits_(n_qubits) {
  check_n_qubits(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
  amps_[0] = cplx(1.0, 0.0);
}

DenseState DenseState::from_amplitudes(int n_qubits, std::vector<cplx> amps) {
  check_n_qubits(n_qubits);
  if (amps.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("from_amplitudes: expected " +
                                std::to_string(std::size_t{1} << n_qubits) +
                                " amplitudes, got " +
                                std::to_string(amps.size()));
  }
  DenseState state(n_qubits);
  state.amps_ = std::move(amps);
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw std::invalid_argument("from_amplitudes: norm " +
                                std::to_string(norm) + " is not 1");
  }
  return state;
}

DenseState DenseState::from_amplitudes_normalized(int n_qubits,
                                                  std::vector<cplx> amps) {
  check_n_qubits(n_qubits);
  if (amps.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("from_amplitudes_normalized: expected " +
                                std::to_string(std::size_t{1} << n_qubits) +
                                " amplitudes, got " +
                                std::to_string(amps.size()));
  }
  DenseState state(n_qubits);
  state.amps_ = std::move(amps);
  const double norm = state.norm();
  if (norm <= 0.0 || !std::isfinite(norm)) {
    throw std::invalid_argument(
        "from_amplitudes_normalized: vector has zero or non-finite norm");
  }
  for (cplx& a : state.amps_) a /= norm;
  return state;
}

double DenseState::norm() const {
  KahanSum sum;
  for (const cplx& a : amps_) sum.add(std::norm(a));
  return std::sqrt(sum.value());
}

void DenseState::renormalize() {
  const double n = norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    throw std::runtime_error("renormalize: state has zero or non-finite norm");
  }
  for (cplx& a : amps_) a /= n;
}

std::size_t DenseState::site_bit(int site) const {
  return std::size_t{1} << (n_qubits_ - site);
}

void DenseState::check_site(int site) const {
  if (site < 1 || site > n_qubits_) {
    throw std::invalid_argument("site " + std::to_string(site) +
                                " out of range [1, " +
                                std::to_string(n_qubits_) + "]");
  }
}

void DenseState::apply_h(int site) {
  check_site(site);
  const std::size_t bit = site_bit(site);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = amps_[i];
    const cplx a1 = amps_[i | bit];
    amps_[i] = (a0 + a1) * inv_sqrt2;
    amps_[i | bit] = (a0 - a1) * inv_sqrt2;
  }
}

void DenseState::apply_s(int site) {
  check_site(site);
  const std::size_t bit = site_bit(site);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) amps_[i] *= cplx(0.0, 1.0);
  }
}

void DenseState::apply_x(int site) {
  check_site(site);
  const std::size_t bit = site_bit(site);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    std::swap(amps_[i], amps_[i | bit]);
  }
}

void DenseState::apply_y(int site) {
  check_site(site);
  const std::size_t bit = site_bit(site);
  const cplx im(0.0, 1.0);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = amps_[i];
    const cplx a1 = amps_[i | bit];
    amps_[i] = -im * a1;
    amps_[i | bit] = im * a0;
  }
}

void DenseState::apply_z(int site) {
  check_site(site);
  const std::size_t bit = site_bit(site);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) amps_[i] = -amps_[i];
  }
}

void DenseState::apply_cz(int site_a, int site_b) {
  check_site(site_a);
  check_site(site_b);
  if (site_a == site_b) {
    throw std::invalid_argument("apply_cz: sites must be distinct");
  }
  const std::size_t mask = site_bit(site_a) | site_bit(site_b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void DenseState::apply_unitary1(const Eigen::Matrix2cd& u, int site) {
  check_site(site);
  check_unitary(u);
  const std::size_t bit = site_bit(site);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const cplx a0 = amps_[i];
    const cplx a1 = amps_[i | bit];
    amps_[i] = u(0, 0) * a0 + u(0, 1) * a1;
    amps_[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void DenseState::apply_unitary2(const Eigen::Matrix4cd& u, int site_a,
                                int site_b) {
  check_site(site_a);
  check_site(site_b);
  if (site_a == site_b) {
    throw std::invalid_argument("apply_unitary2: sites must be distinct");
  }
  check_unitary(u);
  const std::size_t bit_a = site_bit(site_a);
  const std::size_t bit_b = site_bit(site_b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & (bit_a | bit_b)) continue;
    const std::array<std::size_t, 4> idx = {i, i | bit_b, i | bit_a,
                                            i | bit_a | bit_b};
    std::array<cplx, 4> in;
    for (int k = 0; k < 4; ++k) in[static_cast<std::size_t>(k)] = amps_[idx[static_cast<std::size_t>(k)]];
    for (int r = 0; r < 4; ++r) {
      cplx acc(0.0, 0.0);
      for (int c = 0; c < 4; ++c) acc += u(r, c) * in[static_cast<std::size_t>(c)];
      amps_[idx[static_cast<std::size_t>(r)]] = acc;
    }
  }
}

GateOp GateOp::named(NamedGate g, int site) {
  GateOp op;
  op.kind = Kind::kNamed;
  op.gate = g;
  op.site_a = site;
  return op;
}

GateOp GateOp::cz(int site_a, int site_b) {
  GateOp op;
  op.kind = Kind::kCZ;
  op.site_a = site_a;
  op.site_b = site_b;
  return op;
}

GateOp GateOp::custom1(const Eigen::Matrix2cd& u, int site) {
  GateOp op;
  op.kind = Kind::kCustom1;
  op.site_a = site;
  op.u1 = u;
  return op;
}

GateOp GateOp::custom2(const Eigen::Matrix4cd& u, int site_a, int site_b) {
  GateOp op;
  op.kind = Kind::kCustom2;
  op.site_a = site_a;
  op.site_b = site_b;
  op.u2 = u;
  return op;
}

void apply_circuit(DenseState& state, const Circuit& circuit) {
  for (const GateOp& op : circuit) {
    switch (op.kind) {
      case GateOp::Kind::kNamed:
        switch (op.gate) {
          case NamedGate::kH: state.apply_h(op.site_a); break;
          case NamedGate::kS: state.apply_s(op.site_a); break;
          case NamedGate::kX: state.apply_x(op.site_a); break;
          case NamedGate::kY: state.apply_y(op.site_a); break;
          case NamedGate::kZ: state.apply_z(op.site_a); break;
        }
        break;
      case GateOp::Kind::kCZ:
        state.apply_cz(op.site_a, op.site_b);
        break;
      case GateOp::Kind::kCustom1:
        state.apply_unitary1(op.u1, op.site_a);
        break;
      case GateOp::Kind::kCustom2:
        state.apply_unitary2(op.u2, op.site_a, op.site_b);
        break;
    }
  }
}

DenseState apply_gate(const DenseState& state, const GateOp& op) {
  DenseState out = state;
  apply_circuit(out, Circuit{op});
  return out;
}

std::vector<MeasurementOutcome> enumerate_branches(
    const DenseState& state, const std::vector<int>& sites) {
  if (sites.empty()) {
    throw std::invalid_argument("enumerate_branches: no sites given");
  }
  std::size_t mask = 0;
  for (int site : sites) {
    if (site < 1 || site > state.n_qubits()) {
      throw std::invalid_argument("enumerate_branches: site out of range");
    }
    const std::size_t bit = std::size_t{1} << (state.n_qubits() - site);
    if (mask & bit) {
      throw std::invalid_argument("enumerate_branches: duplicate site");
    }
    mask |= bit;
  }
  const std::size_t n_sites = sites.size();
  const std::size_t n_branches = std::size_t{1} << n_sites;

  // Outcome word of an amplitude index: bit j (MSB-first over the given
  // site list) is the value of sites[j].
  const auto outcome_of = [&](std::size_t i) {
    std::size_t word = 0;
    for (std::size_t j = 0; j < n_sites; ++j) {
      const std::size_t bit = std::size_t{1}
                              << (state.n_qubits() - sites[j]);
      word = (word << 1) | ((i & bit) ? 1u : 0u);
    }
    return word;
  };

  std::vector<KahanSum> prob_sums(n_branches);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    prob_sums[outcome_of(i)].add(std::norm(state.amp(i)));
  }

  std::vector<MeasurementOutcome> branches(n_branches);
  for (std::size_t word = 0; word < n_branches; ++word) {
    MeasurementOutcome& branch = branches[word];
    branch.outcome_bits.resize(n_sites);
    for (std::size_t j = 0; j < n_sites; ++j) {
      branch.outcome_bits[j] =
          static_cast<int>((word >> (n_sites - 1 - j)) & 1u);
    }
    branch.probability = prob_sums[word].value();
    if (branch.probability < kBranchProbFloor) {
      branch.present = false;
      continue;
    }
    branch.present = true;
    std::vector<cplx> amps(state.dim(), cplx(0.0, 0.0));
    const double scale = 1.0 / std::sqrt(branch.probability);
    for (std::size_t i = 0; i < state.dim(); ++i) {
      if (outcome_of(i) == word) amps[i] = state.amp(i) * scale;
    }
    branch.post_state = DenseState::from_amplitudes_normalized(
        state.n_qubits(), std::move(amps));
  }
  return branches;
}

std::vector<MeasurementOutcome> enumerate_branches(const DenseState& state,
                                                   int site) {
  return enumerate_branches(state, std::vector<int>{site});
}

MeasurementOutcome measure_computational(const DenseState& state,
                                         const std::vector<int>& sites,
                                         std::mt19937_64& rng) {
  auto branches = enumerate_branches(state, sites);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double r = unif(rng);
  const MeasurementOutcome* fallback = nullptr;
  for (const MeasurementOutcome& branch : branches) {
    if (!branch.present) continue;
    fallback = &branch;
    if (r < branch.probability) return branch;
    r -= branch.probability;
  }
  if (fallback == nullptr) {
    throw std::runtime_error(
        "measure_computational: no branch has nonzero probability");
  }
  return *fallback;
}

cplx inner_product(const DenseState& a, const DenseState& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("inner_product: qubit counts differ");
  }
  KahanSum re, im;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const cplx term = std::conj(a.amp(i)) * b.amp(i);
    re.add(term.real());
    im.add(term.imag());
  }
  return cplx(re.value(), im.value());
}

double fidelity(const DenseState& a, const DenseState& b) {
  return std::norm(inner_product(a, b));
}

DenseState tensor_product(const DenseState& a, const DenseState& b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_n_qubits(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      amps[(i << b.n_qubits()) | j] = a.amp(i) * b.amp(j);
    }
  }
  return DenseState::from_amplitudes_normalized(n, std::move(amps));
}

DenseState make_chi() {
  // +1 eigenvector of (X+Y+Z)/sqrt(3); amplitudes chosen real-positive on
  // |0>: cos(beta)|0> + e^{i pi/4} sin(beta)|1> with cos(2 beta) = 1/sqrt(3).
  const double beta = 0.5 * std::acos(1.0 / std::sqrt(3.0));
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const cplx phase = std::polar(1.0, M_PI / 4.0);
  return DenseState::from_amplitudes_normalized(1, {c, phase * s});
}

DenseState make_chi_star() {
  const double inv = 1.0 / std::sqrt(6.0);
  std::vector<cplx> amps(8, cplx(0.0, 0.0));
  amps[0] = cplx(inv, 0.0);        // |000>
  amps[1] = cplx(0.0, inv);        // |001>
  amps[2] = cplx(-inv, 0.0);       // |010>
  amps[3] = cplx(-inv, 0.0);       // |011>
  amps[7] = cplx(inv, inv);        // |111>
  return DenseState::from_amplitudes_normalized(3, std::move(amps));
}

DenseState make_psi_star() {
  DenseState one(1);
  one.apply_x(1);
  return tensor_product(one, make_chi_star());
}

DenseState make_phi_star() {
  const double r = 1.0 / (2.0 * std::sqrt(6.0));
  const double q = std::sqrt(2.0) * r;
  std::vector<cplx> amps(16, cplx(0.0, 0.0));
  amps[3] = cplx(0.0, 2.0 * r);    // |0011>
  amps[4] = cplx(r, -r);           // |0100>
  amps[5] = cplx(-r, -r);          // |0101>
  amps[6] = cplx(-r, r);           // |0110>
  amps[7] = cplx(-r, r);           // |0111>
  amps[8] = cplx(q, 0.0);          // |1000>
  amps[9] = cplx(0.0, q);          // |1001>
  amps[10] = cplx(-q, 0.0);        // |1010>
  amps[11] = cplx(-q, 0.0);        // |1011>
  amps[15] = cplx(q, q);           // |1111>
  return DenseState::from_amplitudes_normalized(4, std::move(amps));
}

DenseState make_omega(double s) {
  return DenseState::from_amplitudes_normalized(
      1, {cplx(std::cos(s), 0.0), cplx(std::sin(s), 0.0)});
}

DenseState make_lambda_n(double s0, int n_qubits) {
  check_n_qubits(n_qubits);
  DenseState state = make_omega(s0 / std::sqrt(static_cast<double>(n_qubits)));
  DenseState out = state;
  for (int k = 1; k < n_qubits; ++k) out = tensor_product(out, state);
  return out;
}

DenseState make_psi_eps(int n_qubits, double eps) {
  check_n_qubits(n_qubits);
  // Per-site factor e^{-i pi/4} cos(beta)|0> + sin(beta)|1>. This equals
  // make_chi() only up to a global phase, which is physical here: it sets the
  // relative phase between the two branches of the superposition, and the
  // closed forms in symmetric.cpp assume exactly this convention.
  const double beta = 0.5 * std::acos(1.0 / std::sqrt(3.0));
  const cplx a0 = std::polar(std::cos(beta), -M_PI / 4.0);
  const cplx a1(std::sin(beta), 0.0);
  std::vector<cplx> chi_prod = {cplx(1.0, 0.0)};
  for (int k = 0; k < n_qubits; ++k) {
    std::vector<cplx> next(chi_prod.size() * 2);
    for (std::size_t i = 0; i < chi_prod.size(); ++i) {
      next[2 * i] = chi_prod[i] * a0;
      next[2 * i + 1] = chi_prod[i] * a1;
    }
    chi_prod = std::move(next);
  }
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = eps * chi_prod[i];
  amps[0] += cplx(1.0, 0.0);
  return DenseState::from_amplitudes_normalized(n_qubits, std::move(amps));
}

DenseState haar_random_state(int n_qubits, std::mt19937_64& rng) {
  check_n_qubits(n_qubits);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (cplx& a : amps) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = cplx(re, im);
  }
  return DenseState::from_amplitudes_normalized(n_qubits, std::move(amps));
}

std::string state_to_json(const DenseState& state) {
  nlohmann::json j;
  j["n_qubits"] = state.n_qubits();
  nlohmann::json amps = nlohmann::json::array();
  for (std::size_t i = 0; i < state.dim(); ++i) {
    amps.push_back({state.amp(i).real(), state.amp(i).imag()});
  }
  j["amplitudes"] = std::move(amps);
  return j.dump();
}

DenseState state_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("state_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("amplitudes")) {
    throw std::invalid_argument(
        "state_from_json: expected object with n_qubits and amplitudes");
  }
  const int n = j["n_qubits"].get<int>();
  check_n_qubits(n);
  const auto& arr = j["amplitudes"];
  if (!arr.is_array() || arr.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument(
        "state_from_json: amplitudes length does not match n_qubits");
  }
  std::vector<cplx> amps;
  amps.reserve(arr.size());
  for (const auto& entry : arr) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::invalid_argument(
          "state_from_json: each amplitude must be [re, im]");
    }
    amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
  }
  return DenseState::from_amplitudes(n, std::move(amps));
}

void write_state_json(const DenseState& state, std::ostream& os) {
  os << state_to_json(state) << '\n';
}

DenseState read_state_json(std::istream& is) {
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return state_from_json(buffer.str());
}

}  // namespace magiclab
