// Copyright 2026 The iontrap-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "iontrap/operators.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace iontrap {
namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::MatrixXcd single_mode_annihilator(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd eye(std::size_t dim) {
  return Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

// Field-major ordering: field (x) vibration (x) qubit.
OperatorMatrix embed(const FockCutoffs& c, const Eigen::MatrixXcd& field,
                     const Eigen::MatrixXcd& vib, const Eigen::MatrixXcd& qubit) {
  return OperatorMatrix(c, kron(field, kron(vib, qubit)));
}

// (sigma+ + sigma-)(b' + b) (x) motional factor, assembled without forming
// the full products of embedded operators.
OperatorMatrix dipole_coupling(const FockCutoffs& c, const Eigen::MatrixXcd& vib_factor) {
  const Eigen::MatrixXcd b = single_mode_annihilator(c.field_dim());
  Eigen::MatrixXcd sx(2, 2);
  sx << 0, 1, 1, 0;
  return embed(c, b + b.adjoint(), vib_factor, sx);
}

Eigen::MatrixXcd spectral_sine(const Eigen::MatrixXcd& hermitian) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("operator_sine: eigendecomposition failed");
  }
  const Eigen::VectorXd s = solver.eigenvalues().array().sin();
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  Eigen::MatrixXcd result = v * s.cast<Complex>().asDiagonal() * v.adjoint();
  // Symmetrize away rounding so downstream Hermiticity checks see an exact match.
  return 0.5 * (result + result.adjoint());
}

void check_finite_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "SystemParams: " << name << " must be positive and finite, got " << value;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void SystemParams::validate() const {
  check_finite_positive(nu, "nu");
  check_finite_positive(omega, "omega");
  check_finite_positive(omega0, "omega0");
  check_finite_positive(eta, "eta");
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw std::invalid_argument("SystemParams: g must be non-negative and finite");
  }
}

OperatorMatrix::OperatorMatrix(FockCutoffs cutoffs, Eigen::MatrixXcd entries)
    : cutoffs_(cutoffs), entries_(std::move(entries)) {
  const auto dim = static_cast<Eigen::Index>(cutoffs_.total_dim());
  if (entries_.rows() != dim || entries_.cols() != dim) {
    throw std::invalid_argument("OperatorMatrix: matrix size does not match cutoffs");
  }
}

OperatorMatrix OperatorMatrix::zero(const FockCutoffs& cutoffs) {
  const auto dim = static_cast<Eigen::Index>(cutoffs.total_dim());
  return OperatorMatrix(cutoffs, Eigen::MatrixXcd::Zero(dim, dim));
}

OperatorMatrix OperatorMatrix::identity(const FockCutoffs& cutoffs) {
  return OperatorMatrix(cutoffs, eye(cutoffs.total_dim()));
}

Eigen::VectorXcd OperatorMatrix::apply(const PureState& state) const {
  if (!(state.cutoffs() == cutoffs_)) {
    throw std::invalid_argument("OperatorMatrix::apply: mismatched cutoffs");
  }
  return entries_ * state.amplitudes();
}

double OperatorMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

bool OperatorMatrix::is_hermitian(double tol) const {
  const double scale = std::max(max_abs(), std::numeric_limits<double>::min());
  return hermiticity_defect() <= tol * scale;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(cutoffs_, entries_.adjoint());
}

namespace {
void require_same(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (!(a.cutoffs() == b.cutoffs())) {
    throw std::invalid_argument("OperatorMatrix: mismatched cutoffs");
  }
}
}  // namespace

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.cutoffs_, a.entries_ + b.entries_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.cutoffs_, a.entries_ - b.entries_);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same(a, b);
  return OperatorMatrix(a.cutoffs_, a.entries_ * b.entries_);
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) {
  return OperatorMatrix(a.cutoffs_, s * a.entries_);
}

OperatorMatrix vib_annihilator(const FockCutoffs& c) {
  return embed(c, eye(c.field_dim()), single_mode_annihilator(c.vib_dim()), eye(2));
}

OperatorMatrix field_annihilator(const FockCutoffs& c) {
  return embed(c, single_mode_annihilator(c.field_dim()), eye(c.vib_dim()), eye(2));
}

OperatorMatrix vib_number(const FockCutoffs& c) {
  const Eigen::MatrixXcd a = single_mode_annihilator(c.vib_dim());
  return embed(c, eye(c.field_dim()), a.adjoint() * a, eye(2));
}

OperatorMatrix field_number(const FockCutoffs& c) {
  const Eigen::MatrixXcd b = single_mode_annihilator(c.field_dim());
  return embed(c, b.adjoint() * b, eye(c.vib_dim()), eye(2));
}

OperatorMatrix pauli(const FockCutoffs& c, PauliKind which) {
  // Basis order within the qubit factor is (g, e).
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
  switch (which) {
    case PauliKind::plus:
      s(1, 0) = 1.0;  // |e><g|
      break;
    case PauliKind::minus:
      s(0, 1) = 1.0;  // |g><e|
      break;
    case PauliKind::z:
      s(0, 0) = -1.0;
      s(1, 1) = 1.0;
      break;
  }
  return embed(c, eye(c.field_dim()), eye(c.vib_dim()), s);
}

OperatorMatrix excited_projector(const FockCutoffs& c) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  p(1, 1) = 1.0;
  return embed(c, eye(c.field_dim()), eye(c.vib_dim()), p);
}

OperatorMatrix operator_sine(const OperatorMatrix& x) {
  if (!x.is_hermitian()) {
    throw std::invalid_argument("operator_sine: argument is not Hermitian");
  }
  return OperatorMatrix(x.cutoffs(), spectral_sine(x.entries()));
}

double free_energy(const SystemParams& p, const FockCutoffs::Labels& l) {
  const double sz = l.q == Qubit::e ? 1.0 : -1.0;
  return p.nu * static_cast<double>(l.m_v) + p.omega * static_cast<double>(l.n_f) +
         0.5 * p.omega0 * sz;
}

OperatorMatrix free_hamiltonian(const SystemParams& p, const FockCutoffs& c) {
  const auto dim = static_cast<Eigen::Index>(c.total_dim());
  Eigen::VectorXcd diag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) diag[i] = free_energy(p, c.labels(static_cast<std::size_t>(i)));
  return OperatorMatrix(c, diag.asDiagonal());
}

OperatorMatrix full_hamiltonian(const SystemParams& p, const FockCutoffs& c) {
  p.validate();
  const Eigen::MatrixXcd a = single_mode_annihilator(c.vib_dim());
  // The sine acts on the vibrational factor alone.
  const Eigen::MatrixXcd sine = spectral_sine(p.eta * (a + a.adjoint()));
  return free_hamiltonian(p, c) + Complex(p.g) * dipole_coupling(c, sine);
}

OperatorMatrix lamb_dicke_hamiltonian(const SystemParams& p, const FockCutoffs& c) {
  p.validate();
  const Eigen::MatrixXcd a = single_mode_annihilator(c.vib_dim());
  return free_hamiltonian(p, c) + Complex(p.eta_g()) * dipole_coupling(c, a + a.adjoint());
}

OperatorMatrix red_rwa_hamiltonian(const SystemParams& p, const FockCutoffs& c) {
  p.validate();
  const OperatorMatrix a = vib_annihilator(c);
  const OperatorMatrix b = field_annihilator(c);
  const OperatorMatrix raising = pauli(c, PauliKind::plus) * a * b;
  return Complex(p.eta_g()) * (raising + raising.adjoint());
}

OperatorMatrix blue_rwa_hamiltonian(const SystemParams& p, const FockCutoffs& c) {
  p.validate();
  const OperatorMatrix a = vib_annihilator(c);
  const OperatorMatrix b = field_annihilator(c);
  const OperatorMatrix raising = pauli(c, PauliKind::plus) * a.adjoint() * b;
  return Complex(p.eta_g()) * (raising + raising.adjoint());
}

}  // namespace iontrap
