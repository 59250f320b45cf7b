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

#pragma once

// Operators on field (x) vibration (x) qubit, in units with hbar = 1.
//
// Naming follows the physical mode rather than the letter: the vibrational
// ladder operator is `vib_annihilator` (a in the usual ion-trap notation) and
// the cavity-field one is `field_annihilator` (b).

#include "iontrap/hilbert.hpp"

namespace iontrap {

struct SystemParams {
  double nu = 0.0;      // vibrational trap frequency
  double omega = 0.0;   // cavity field frequency
  double omega0 = 0.0;  // electronic transition frequency
  double g = 0.0;       // ion-field coupling
  double eta = 0.0;     // Lamb-Dicke parameter

  /// omega0 - omega. Red sideband resonance is +nu, blue is -nu.
  double detuning() const { return omega0 - omega; }
  /// The sideband Rabi unit eta * g.
  double eta_g() const { return eta * g; }

  /// Frequencies and eta must be positive and finite; g must be >= 0
  /// (g = 0 is the free system).
  void validate() const;
};

class OperatorMatrix {
 public:
  OperatorMatrix(FockCutoffs cutoffs, Eigen::MatrixXcd entries);

  static OperatorMatrix zero(const FockCutoffs& cutoffs);
  static OperatorMatrix identity(const FockCutoffs& cutoffs);

  const FockCutoffs& cutoffs() const { return cutoffs_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  Complex element(std::size_t row, std::size_t col) const {
    return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  /// Matrix-vector product. The result is in general not normalized.
  Eigen::VectorXcd apply(const PureState& state) const;

  /// max |H - H^dagger|.
  double hermiticity_defect() const;
  /// max |H_ij|.
  double max_abs() const;
  /// True when max|H - H^dagger| <= tol * max(max|H|, 1e-300).
  bool is_hermitian(double tol = 1e-12) const;

  OperatorMatrix adjoint() const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

 private:
  FockCutoffs cutoffs_;
  Eigen::MatrixXcd entries_;
};

enum class PauliKind { plus, minus, z };

// Ladder and two-level operators, each embedded as identity on the other two
// factors. Ladder operators are truncated hard at the cutoff.
OperatorMatrix vib_annihilator(const FockCutoffs& cutoffs);
OperatorMatrix field_annihilator(const FockCutoffs& cutoffs);
OperatorMatrix vib_number(const FockCutoffs& cutoffs);
OperatorMatrix field_number(const FockCutoffs& cutoffs);
OperatorMatrix pauli(const FockCutoffs& cutoffs, PauliKind which);
/// |e><e| = (sigma_z + 1) / 2.
OperatorMatrix excited_projector(const FockCutoffs& cutoffs);

/// sin(x) by spectral calculus on a Hermitian argument.
OperatorMatrix operator_sine(const OperatorMatrix& x);

/// Eigenvalue of the free Hamiltonian on a Fock basis state.
double free_energy(const SystemParams& params, const FockCutoffs::Labels& state);

/// nu a'a + omega b'b + (omega0/2) sigma_z, diagonal in the Fock basis.
OperatorMatrix free_hamiltonian(const SystemParams& params, const FockCutoffs& cutoffs);

/// free + g (sigma+ + sigma-)(b' + b) sin(eta (a' + a)).
OperatorMatrix full_hamiltonian(const SystemParams& params, const FockCutoffs& cutoffs);

/// free + eta g (sigma+ + sigma-)(b' + b)(a' + a).
OperatorMatrix lamb_dicke_hamiltonian(const SystemParams& params, const FockCutoffs& cutoffs);

/// Interaction-picture red sideband: eta g (sigma- a' b' + sigma+ a b).
OperatorMatrix red_rwa_hamiltonian(const SystemParams& params, const FockCutoffs& cutoffs);

/// Interaction-picture blue sideband: eta g (sigma- a b' + sigma+ a' b).
OperatorMatrix blue_rwa_hamiltonian(const SystemParams& params, const FockCutoffs& cutoffs);

}  // namespace iontrap
