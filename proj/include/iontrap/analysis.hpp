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

#include "iontrap/hilbert.hpp"
#include "iontrap/operators.hpp"

namespace iontrap {

enum class Subsystem { field, vibration };

/// Reduced density matrix of one mode. Hermitian, unit trace, and with no
/// eigenvalue below -1e-10; construction enforces all three.
class ReducedDensity {
 public:
  explicit ReducedDensity(Eigen::MatrixXcd entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  /// Ascending, with rounding negatives clipped to zero.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::MatrixXcd entries_;
  Eigen::VectorXd eigenvalues_;
};

/// |<a|b>|^2.
double fidelity(const BipartiteState& a, const BipartiteState& b);

ReducedDensity partial_trace(const BipartiteState& state, Subsystem keep);

/// -sum(lambda ln lambda), in nats.
double von_neumann_entropy(const ReducedDensity& rho);

/// (||rho^{T_field}||_1 - 1) / 2 of the pure state's density matrix.
double negativity(const BipartiteState& state);

/// <psi|O|psi> for Hermitian O (real part).
double expectation(const OperatorMatrix& op, const PureState& state);

struct Occupations {
  double field = 0.0;      // <b'b>
  double vibration = 0.0;  // <a'a>
  double excited = 0.0;    // <|e><e|>
};

Occupations mean_occupations(const PureState& state);

}  // namespace iontrap
