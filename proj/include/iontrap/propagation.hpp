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

// Time evolution: closed-form red/blue sideband propagators, an exact
// eigendecomposition propagator for arbitrary Hermitian generators, and the
// free-Hamiltonian interaction-picture transform that connects the two.

#include <optional>

#include "iontrap/hilbert.hpp"
#include "iontrap/operators.hpp"

namespace iontrap {

/// Top-level occupation above which a truncated run is untrusted.
inline constexpr double kLeakageThreshold = 1e-6;

/// Probability held in the highest retained Fock level of each mode.
struct LeakageReport {
  double field_top = 0.0;
  double vib_top = 0.0;

  double worst() const { return field_top > vib_top ? field_top : vib_top; }
  bool trusted() const { return worst() <= kLeakageThreshold; }
};

LeakageReport measure_leakage(const PureState& state);

/// exp(-i H t) from one eigendecomposition of H; reuse for many times.
/// Immutable after construction, so one instance may serve many threads.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const OperatorMatrix& hamiltonian);

  const FockCutoffs& cutoffs() const { return cutoffs_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  PureState evolve(const PureState& state, double t) const;
  Eigen::MatrixXcd unitary(double t) const;

 private:
  FockCutoffs cutoffs_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
};

struct NumericPropagation {
  PureState state;
  LeakageReport leakage;
};

/// exp(-i H t)|psi> on the truncated space. H must be Hermitian, t >= 0.
NumericPropagation numeric_propagate(const OperatorMatrix& hamiltonian, const PureState& state,
                                     double t);

/// Red sideband closed form, applied block-wise on the invariant pairs
/// {|n,m,e>, |n+1,m+1,g>} with Rabi frequency eta g sqrt((n+1)(m+1)).
/// Throws LeakageError if a populated state would couple past a cutoff.
PureState analytic_red_propagate(const SystemParams& params, const PureState& state, double t);

/// Blue sideband closed form on the pairs {|n,m,e>, |n+1,m-1,g>} with Rabi
/// frequency eta g sqrt((n+1) m).
PureState analytic_blue_propagate(const SystemParams& params, const PureState& state, double t);

/// exp(+i H0 t)|psi> with H0 = free_hamiltonian(params). Any real t.
PureState to_interaction_picture(const SystemParams& params, const PureState& state, double t);

enum class PropagatorKind { analytic_red, analytic_blue, numeric };

struct PropagatorSpec {
  PropagatorKind kind = PropagatorKind::numeric;
  std::optional<OperatorMatrix> hamiltonian;  // numeric kind only
  SystemParams params;
  double time = 0.0;
};

PureState propagate(const PropagatorSpec& spec, const PureState& state);

}  // namespace iontrap
