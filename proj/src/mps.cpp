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

#include "magiclab/mps.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <Eigen/QR>
#include <Eigen/SVD>

#include <json.hpp>

namespace magiclab {

static_assert(std::endian::native == std::endian::little,
              "MPS file i/o assumes a little-endian host");

namespace {

constexpr int kMaxDenseConversionQubits = 14;

// Multiplies phases into Q's columns and R's rows so that R's diagonal is
// real and non-negative.  This makes QR-based canonicalization idempotent.
void fix_qr_phases(Eigen::MatrixXcd& q, Eigen::MatrixXcd& r) {
  const Eigen::Index rank = std::min(r.rows(), r.cols());
  for (Eigen::Index i = 0; i < rank; ++i) {
    const cplx d = r(i, i);
    const double mag = std::abs(d);
    if (mag <= 0.0) continue;
    const cplx phase = d / mag;
    r.row(i) *= std::conj(phase);
    q.col(i) *= phase;
  }
}

// Thin QR with non-negative real diagonal on R.
void thin_qr(const Eigen::MatrixXcd& m, Eigen::MatrixXcd& q,
             Eigen::MatrixXcd& r) {
  const Eigen::Index rank = std::min(m.rows(), m.cols());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  q = qr.householderQ() * Eigen::MatrixXcd::Identity(m.rows(), rank);
  r = qr.matrixQR()
          .topRows(rank)
          .template triangularView<Eigen::Upper>()
          .toDenseMatrix();
  fix_qr_phases(q, r);
}

// Number of singular values to keep: at most chi_max, dropping trailing
// values whose squared magnitude is below svd_cutoff relative to the total
// squared weight.  Always keeps at least one.
int truncation_rank(const Eigen::VectorXd& sigma, int chi_max,
                    double svd_cutoff, double total_weight) {
  int keep = std::min<int>(chi_max, static_cast<int>(sigma.size()));
  while (keep > 1) {
    const double w = sigma(keep - 1) * sigma(keep - 1);
    if (w > svd_cutoff * total_weight) break;
    --keep;
  }
  return keep;
}

std::string canonical_form_name(CanonicalForm form) {
  switch (form) {
    case CanonicalForm::kNone:
      return "none";
    case CanonicalForm::kLeft:
      return "left";
    case CanonicalForm::kRight:
      return "right";
    case CanonicalForm::kMixed:
      return "mixed";
  }
  throw std::runtime_error("mps: unknown canonical form");
}

CanonicalForm canonical_form_from_name(const std::string& name) {
  if (name == "none") return CanonicalForm::kNone;
  if (name == "left") return CanonicalForm::kLeft;
  if (name == "right") return CanonicalForm::kRight;
  if (name == "mixed") return CanonicalForm::kMixed;
  throw std::runtime_error("mps: unknown canonical_flag \"" + name + "\"");
}

}  // namespace

MPS MPS::product_zero(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("MPS::product_zero: n_qubits must be >= 1");
  }
  MPS mps;
  mps.tensors_.resize(static_cast<std::size_t>(n_qubits));
  for (auto& site : mps.tensors_) {
    site[0] = Eigen::MatrixXcd::Ones(1, 1);
    site[1] = Eigen::MatrixXcd::Zero(1, 1);
  }
  mps.form_ = CanonicalForm::kRight;
  mps.center_ = 1;
  return mps;
}

MPS MPS::random_mps(int n_qubits, int chi, std::mt19937_64& rng) {
  if (n_qubits < 1) {
    throw std::invalid_argument("MPS::random_mps: n_qubits must be >= 1");
  }
  if (chi < 1) {
    throw std::invalid_argument("MPS::random_mps: chi must be >= 1");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto bond_at = [&](int k) {
    // chi_k for k in [0, N], capped by the exact Schmidt rank on both sides.
    double full = std::pow(2.0, std::min(k, n_qubits - k));
    return static_cast<int>(std::min<double>(chi, full));
  };
  MPS mps;
  mps.tensors_.resize(static_cast<std::size_t>(n_qubits));
  for (int k = 1; k <= n_qubits; ++k) {
    const int chi_l = bond_at(k - 1);
    const int chi_r = bond_at(k);
    for (int s = 0; s < 2; ++s) {
      Eigen::MatrixXcd m(chi_l, chi_r);
      for (Eigen::Index a = 0; a < chi_l; ++a) {
        for (Eigen::Index b = 0; b < chi_r; ++b) {
          m(a, b) = cplx(gauss(rng), gauss(rng));
        }
      }
      mps.tensors_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(
          s)] = std::move(m);
    }
  }
  mps.canonicalize_right();
  mps.normalize();
  return mps;
}

std::vector<int> MPS::bond_dims() const {
  std::vector<int> dims;
  dims.reserve(tensors_.size() + 1);
  dims.push_back(tensors_.empty() ? 1
                                  : static_cast<int>(tensors_[0][0].rows()));
  for (const auto& site : tensors_) {
    dims.push_back(static_cast<int>(site[0].cols()));
  }
  return dims;
}

int MPS::max_bond_dim() const {
  int chi = 1;
  for (const auto& site : tensors_) {
    chi = std::max(chi, static_cast<int>(site[0].cols()));
  }
  return chi;
}

const MPS::SiteTensor& MPS::site(int k) const {
  if (k < 1 || k > n_qubits()) {
    throw std::invalid_argument("MPS::site: index out of range");
  }
  return tensors_[static_cast<std::size_t>(k - 1)];
}

MPS::SiteTensor& MPS::site(int k) {
  if (k < 1 || k > n_qubits()) {
    throw std::invalid_argument("MPS::site: index out of range");
  }
  form_ = CanonicalForm::kNone;
  center_ = 0;
  return tensors_[static_cast<std::size_t>(k - 1)];
}

double MPS::norm() const {
  if (tensors_.empty()) return 0.0;
  const double n2 = std::real(overlap(*this, *this));
  return std::sqrt(std::max(0.0, n2));
}

void MPS::normalize() {
  if (tensors_.empty()) {
    throw std::runtime_error("MPS::normalize: empty state");
  }
  const double nrm = norm();
  if (!(nrm > 0.0)) {
    throw std::runtime_error("MPS::normalize: state has zero norm");
  }
  int target = 1;
  if (form_ == CanonicalForm::kLeft) {
    target = n_qubits();
  } else if (form_ == CanonicalForm::kMixed) {
    target = center_;
  }
  auto& site = tensors_[static_cast<std::size_t>(target - 1)];
  site[0] /= nrm;
  site[1] /= nrm;
}

void MPS::canonicalize_left() {
  const int n = n_qubits();
  if (n == 0) throw std::runtime_error("MPS::canonicalize_left: empty state");
  for (int k = 1; k < n; ++k) {
    auto& site = tensors_[static_cast<std::size_t>(k - 1)];
    const Eigen::Index chi_l = site[0].rows();
    const Eigen::Index chi_r = site[0].cols();
    Eigen::MatrixXcd m(chi_l * 2, chi_r);
    for (Eigen::Index a = 0; a < chi_l; ++a) {
      for (int s = 0; s < 2; ++s) {
        m.row(a * 2 + s) = site[static_cast<std::size_t>(s)].row(a);
      }
    }
    Eigen::MatrixXcd q, r;
    thin_qr(m, q, r);
    const Eigen::Index rank = q.cols();
    for (int s = 0; s < 2; ++s) {
      Eigen::MatrixXcd a_new(chi_l, rank);
      for (Eigen::Index a = 0; a < chi_l; ++a) {
        a_new.row(a) = q.row(a * 2 + s);
      }
      site[static_cast<std::size_t>(s)] = std::move(a_new);
    }
    auto& next = tensors_[static_cast<std::size_t>(k)];
    next[0] = r * next[0];
    next[1] = r * next[1];
  }
  form_ = CanonicalForm::kLeft;
  center_ = n;
}

void MPS::canonicalize_right() {
  const int n = n_qubits();
  if (n == 0) throw std::runtime_error("MPS::canonicalize_right: empty state");
  for (int k = n; k > 1; --k) {
    auto& site = tensors_[static_cast<std::size_t>(k - 1)];
    const Eigen::Index chi_l = site[0].rows();
    const Eigen::Index chi_r = site[0].cols();
    Eigen::MatrixXcd m(chi_l, 2 * chi_r);
    m.block(0, 0, chi_l, chi_r) = site[0];
    m.block(0, chi_r, chi_l, chi_r) = site[1];
    Eigen::MatrixXcd q, r;
    thin_qr(m.adjoint(), q, r);
    const Eigen::Index rank = q.cols();
    // m == r^dagger q^dagger, with the rows of q^dagger orthonormal.
    Eigen::MatrixXcd qd = q.adjoint();
    for (int s = 0; s < 2; ++s) {
      site[static_cast<std::size_t>(s)] =
          qd.block(0, s * chi_r, rank, chi_r).eval();
    }
    auto& prev = tensors_[static_cast<std::size_t>(k - 2)];
    const Eigen::MatrixXcd rd = r.adjoint();
    prev[0] = prev[0] * rd;
    prev[1] = prev[1] * rd;
  }
  form_ = CanonicalForm::kRight;
  center_ = 1;
}

MPS from_dense(const DenseState& state, int chi_max, double svd_cutoff,
               TruncationReport* report) {
  const int n = state.n_qubits();
  if (n > kMaxDenseConversionQubits) {
    throw std::length_error("from_dense: supports at most 14 qubits");
  }
  if (chi_max < 1) {
    throw std::invalid_argument("from_dense: chi_max must be >= 1");
  }
  if (svd_cutoff < 0.0) {
    throw std::invalid_argument("from_dense: svd_cutoff must be >= 0");
  }
  TruncationReport local;
  MPS mps;
  mps.tensors_.resize(static_cast<std::size_t>(n));

  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd current(1, static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    current(0, static_cast<Eigen::Index>(i)) = state.amp(i);
  }

  for (int k = 1; k < n; ++k) {
    const Eigen::Index chi_l = current.rows();
    const Eigen::Index rem2 = current.cols() / 2;
    Eigen::MatrixXcd m(chi_l * 2, rem2);
    for (Eigen::Index a = 0; a < chi_l; ++a) {
      for (int s = 0; s < 2; ++s) {
        m.row(a * 2 + s) = current.block(a, s * rem2, 1, rem2);
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double total = sigma.squaredNorm();
    if (!(total > 0.0)) {
      throw std::runtime_error("from_dense: zero-norm block");
    }
    const int keep = truncation_rank(sigma, chi_max, svd_cutoff, total);
    double kept_weight = 0.0;
    for (int i = 0; i < keep; ++i) kept_weight += sigma(i) * sigma(i);
    local.fidelity_lower_bound *= kept_weight / total;
    local.discarded_weight += 1.0 - kept_weight / total;

    auto& site = mps.tensors_[static_cast<std::size_t>(k - 1)];
    const Eigen::MatrixXcd u = svd.matrixU().leftCols(keep);
    for (int s = 0; s < 2; ++s) {
      Eigen::MatrixXcd a_new(chi_l, keep);
      for (Eigen::Index a = 0; a < chi_l; ++a) {
        a_new.row(a) = u.row(a * 2 + s);
      }
      site[static_cast<std::size_t>(s)] = std::move(a_new);
    }
    current = sigma.head(keep).asDiagonal() *
              svd.matrixV().leftCols(keep).adjoint();
  }

  auto& last = mps.tensors_[static_cast<std::size_t>(n - 1)];
  last[0] = current.col(0);
  last[1] = current.col(1);

  mps.form_ = CanonicalForm::kLeft;
  mps.center_ = n;
  mps.normalize();
  if (report != nullptr) *report = local;
  return mps;
}

DenseState to_dense(const MPS& mps) {
  const int n = mps.n_qubits();
  if (n == 0) throw std::invalid_argument("to_dense: empty state");
  if (n > kMaxDenseConversionQubits) {
    throw std::length_error("to_dense: supports at most 14 qubits");
  }
  Eigen::MatrixXcd cur = Eigen::MatrixXcd::Ones(1, 1);
  for (int k = 1; k <= n; ++k) {
    const auto& site = mps.site(k);
    const Eigen::Index rows = cur.rows();
    Eigen::MatrixXcd next(rows * 2, site[0].cols());
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (int s = 0; s < 2; ++s) {
        next.row(i * 2 + s) = cur.row(i) * site[static_cast<std::size_t>(s)];
      }
    }
    cur = std::move(next);
  }
  std::vector<cplx> amps(static_cast<std::size_t>(cur.rows()));
  for (Eigen::Index i = 0; i < cur.rows(); ++i) {
    amps[static_cast<std::size_t>(i)] = cur(i, 0);
  }
  return DenseState::from_amplitudes(n, amps);
}

MPS compress(const MPS& mps, int chi_max, double svd_cutoff,
             TruncationReport* report) {
  if (chi_max < 1) {
    throw std::invalid_argument("compress: chi_max must be >= 1");
  }
  if (svd_cutoff < 0.0) {
    throw std::invalid_argument("compress: svd_cutoff must be >= 0");
  }
  TruncationReport local;
  MPS out = mps;
  out.canonicalize_left();
  const int n = out.n_qubits();
  for (int k = n; k > 1; --k) {
    auto& site = out.tensors_[static_cast<std::size_t>(k - 1)];
    const Eigen::Index chi_l = site[0].rows();
    const Eigen::Index chi_r = site[0].cols();
    Eigen::MatrixXcd m(chi_l, 2 * chi_r);
    m.block(0, 0, chi_l, chi_r) = site[0];
    m.block(0, chi_r, chi_l, chi_r) = site[1];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sigma = svd.singularValues();
    const double total = sigma.squaredNorm();
    if (!(total > 0.0)) {
      throw std::runtime_error("compress: zero-norm block");
    }
    const int keep = truncation_rank(sigma, chi_max, svd_cutoff, total);
    double kept_weight = 0.0;
    for (int i = 0; i < keep; ++i) kept_weight += sigma(i) * sigma(i);
    local.fidelity_lower_bound *= kept_weight / total;
    local.discarded_weight += 1.0 - kept_weight / total;

    const Eigen::MatrixXcd vd = svd.matrixV().leftCols(keep).adjoint();
    for (int s = 0; s < 2; ++s) {
      site[static_cast<std::size_t>(s)] =
          vd.block(0, s * chi_r, keep, chi_r).eval();
    }
    const Eigen::MatrixXcd carry =
        svd.matrixU().leftCols(keep) * sigma.head(keep).asDiagonal();
    auto& prev = out.tensors_[static_cast<std::size_t>(k - 2)];
    prev[0] = prev[0] * carry;
    prev[1] = prev[1] * carry;
  }
  out.form_ = CanonicalForm::kRight;
  out.center_ = 1;
  out.normalize();
  if (report != nullptr) *report = local;
  return out;
}

cplx overlap(const MPS& a, const MPS& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("overlap: qubit counts differ");
  }
  if (a.n_qubits() == 0) {
    throw std::invalid_argument("overlap: empty state");
  }
  Eigen::MatrixXcd env = Eigen::MatrixXcd::Ones(1, 1);
  for (int k = 1; k <= a.n_qubits(); ++k) {
    const auto& sa = a.site(k);
    const auto& sb = b.site(k);
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(sa[0].cols(), sb[0].cols());
    for (int s = 0; s < 2; ++s) {
      next.noalias() += sa[static_cast<std::size_t>(s)].adjoint() * env *
                        sb[static_cast<std::size_t>(s)];
    }
    env = std::move(next);
  }
  return env(0, 0);
}

double fidelity(const MPS& a, const MPS& b) {
  const cplx v = overlap(a, b);
  return std::norm(v);
}

void save_mps(const MPS& mps, const std::string& path) {
  if (mps.n_qubits() == 0) {
    throw std::invalid_argument("save_mps: empty state");
  }
  nlohmann::json header;
  header["version"] = 1;
  header["n_qubits"] = mps.n_qubits();
  header["bond_dims"] = mps.bond_dims();
  header["canonical_flag"] = canonical_form_name(mps.canonical_form());
  header["canonical_center"] = mps.canonical_center();

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("save_mps: cannot open \"" + path +
                             "\" for writing");
  }
  out << header.dump() << '\n';
  for (int k = 1; k <= mps.n_qubits(); ++k) {
    const auto& site = mps.site(k);
    const Eigen::Index chi_l = site[0].rows();
    const Eigen::Index chi_r = site[0].cols();
    for (Eigen::Index a = 0; a < chi_l; ++a) {
      for (int s = 0; s < 2; ++s) {
        for (Eigen::Index b = 0; b < chi_r; ++b) {
          const cplx v = site[static_cast<std::size_t>(s)](a, b);
          const double re = v.real();
          const double im = v.imag();
          out.write(reinterpret_cast<const char*>(&re), sizeof(double));
          out.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
      }
    }
  }
  if (!out) {
    throw std::runtime_error("save_mps: write to \"" + path + "\" failed");
  }
}

MPS load_mps(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("load_mps: cannot open \"" + path + "\"");
  }
  std::string header_line;
  if (!std::getline(in, header_line)) {
    throw std::runtime_error("load_mps: missing header line");
  }
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("load_mps: bad header: ") + e.what());
  }
  if (!header.is_object() || header.value("version", 0) != 1) {
    throw std::runtime_error("load_mps: unsupported container version");
  }
  const int n = header.value("n_qubits", 0);
  if (n < 1 || n > 64) {
    throw std::runtime_error("load_mps: invalid n_qubits");
  }
  if (!header.contains("bond_dims") || !header["bond_dims"].is_array() ||
      header["bond_dims"].size() != static_cast<std::size_t>(n + 1)) {
    throw std::runtime_error("load_mps: invalid bond_dims");
  }
  std::vector<int> dims;
  for (const auto& d : header["bond_dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 1) {
      throw std::runtime_error("load_mps: invalid bond dimension entry");
    }
    dims.push_back(d.get<int>());
  }
  if (dims.front() != 1 || dims.back() != 1) {
    throw std::runtime_error("load_mps: boundary bond dimensions must be 1");
  }
  const CanonicalForm form =
      canonical_form_from_name(header.value("canonical_flag", "none"));
  const int center = header.value("canonical_center", 0);

  MPS mps;
  mps.tensors_.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const int chi_l = dims[static_cast<std::size_t>(k - 1)];
    const int chi_r = dims[static_cast<std::size_t>(k)];
    auto& site = mps.tensors_[static_cast<std::size_t>(k - 1)];
    site[0] = Eigen::MatrixXcd::Zero(chi_l, chi_r);
    site[1] = Eigen::MatrixXcd::Zero(chi_l, chi_r);
    for (int a = 0; a < chi_l; ++a) {
      for (int s = 0; s < 2; ++s) {
        for (int b = 0; b < chi_r; ++b) {
          double re = 0.0;
          double im = 0.0;
          in.read(reinterpret_cast<char*>(&re), sizeof(double));
          in.read(reinterpret_cast<char*>(&im), sizeof(double));
          if (!in) {
            throw std::runtime_error("load_mps: truncated tensor payload");
          }
          site[static_cast<std::size_t>(s)](a, b) = cplx(re, im);
        }
      }
    }
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw std::runtime_error("load_mps: trailing bytes after tensor payload");
  }
  mps.form_ = form;
  mps.center_ = center;
  return mps;
}

}  // namespace magiclab
