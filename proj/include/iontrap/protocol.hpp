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

// Bell-state generation: prepare |n>_f |m>_v (cos th |e> + e^{i phi} sin th |g>),
// evolve on a motional sideband, measure the ion, and compare the collapsed
// field (x) vibration state with the Bell basis.

#include <array>
#include <string>

#include "iontrap/hilbert.hpp"
#include "iontrap/operators.hpp"

namespace iontrap {

enum class Sideband { red, blue };

std::string to_string(Sideband s);
Sideband parse_sideband(const std::string& text);

struct ProtocolConfig {
  Sideband sideband = Sideband::red;
  long n = 0;  // initial photon number
  long m = 0;  // initial phonon number
  double theta = 0.0;
  double phi = 0.0;
  long k = 0;  // interaction-time index
  FockCutoffs cutoffs{8, 8};
  SystemParams params;

  /// theta in [0, pi/2], phi in (-pi, pi], k >= 0, detuning on the chosen
  /// sideband, and every level the sideband can reach at least one below the
  /// top of its cutoff.
  void validate() const;
};

/// Parameters on the chosen sideband: eta g = 1, nu = 500, omega0 = 1e4,
/// omega = omega0 -/+ nu.
SystemParams default_params(Sideband sideband);

PureState prepare_initial(const ProtocolConfig& config);

/// pi (4k + 1) / (2 eta g sqrt(m_eff + 1)). m_eff = 0 gives the vacuum t_k.
double bell_time(const SystemParams& params, long k, long m_eff);

/// Excitation label whose sqrt(m_eff + 1) equals the Rabi factor of the
/// excited-state branch: (n+1)(m+1) - 1 on red, (n+1) m - 1 on blue
/// (0 when that branch is uncoupled).
long effective_excitation(const ProtocolConfig& config);

/// bell_time(params, k, effective_excitation(config)).
double protocol_time(const ProtocolConfig& config);

enum class Route { analytic, numeric };

/// Initial state evolved for protocol_time(config).
PureState evolve_protocol(const ProtocolConfig& config, Route route = Route::analytic);

/// Initial state evolved for an explicit time t >= 0.
PureState evolve_protocol_for(const ProtocolConfig& config, double t,
                              Route route = Route::analytic);

struct MeasurementRecord {
  Qubit outcome;
  double probability;
  BipartiteState post_state;
};

/// Projects the ion onto `outcome`. Throws PostSelectionError when the
/// outcome probability is below 1e-12.
MeasurementRecord measure_qubit(const PureState& state, Qubit outcome);

/// Probability of `outcome` without collapsing.
double outcome_probability(const PureState& state, Qubit outcome);

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };
inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::phi_plus, BellState::phi_minus, BellState::psi_plus, BellState::psi_minus};

std::string to_string(BellState b);

/// (|00> +- |11>)/sqrt2 and (|01> +- |10>)/sqrt2 embedded in `cutoffs`
/// (each mode needs at least two levels).
BipartiteState bell_target(BellState which, const FockCutoffs& cutoffs);

struct BellMatch {
  BellState best;
  double best_fidelity;
  std::array<double, 4> fidelities;  // in kBellStates order
};

BellMatch match_bell_basis(const BipartiteState& state);

struct BellRun {
  double time;
  MeasurementRecord record;
  BellMatch match;
};

/// prepare -> evolve for protocol_time -> measure |g> -> match Bell basis.
BellRun run_bell_protocol(const ProtocolConfig& config, Route route = Route::analytic);

}  // namespace iontrap
