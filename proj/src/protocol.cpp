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

#include "iontrap/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "iontrap/analysis.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/propagation.hpp"

namespace iontrap {
namespace {

constexpr double kImpossibleOutcome = 1e-12;

void fail(const std::string& what) { throw std::invalid_argument("ProtocolConfig: " + what); }

}  // namespace

std::string to_string(Sideband s) { return s == Sideband::red ? "red" : "blue"; }

Sideband parse_sideband(const std::string& text) {
  if (text == "red") return Sideband::red;
  if (text == "blue") return Sideband::blue;
  throw std::invalid_argument("sideband must be 'red' or 'blue', got '" + text + "'");
}

std::string to_string(BellState b) {
  switch (b) {
    case BellState::phi_plus:
      return "phi_plus";
    case BellState::phi_minus:
      return "phi_minus";
    case BellState::psi_plus:
      return "psi_plus";
    case BellState::psi_minus:
      return "psi_minus";
  }
  return "unknown";
}

void ProtocolConfig::validate() const {
  params.validate();
  constexpr double pi = std::numbers::pi;
  if (!(theta >= 0.0 && theta <= pi / 2)) fail("theta must lie in [0, pi/2]");
  if (!(phi > -pi && phi <= pi)) fail("phi must lie in (-pi, pi]");
  if (k < 0) fail("k must be non-negative");
  if (n < 0 || m < 0) fail("occupations must be non-negative");

  const double resonance = sideband == Sideband::red ? params.nu : -params.nu;
  const double scale = std::max({params.nu, params.omega, params.omega0});
  if (std::abs(params.detuning() - resonance) > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "detuning omega0 - omega = " << params.detuning() << " is not on the "
        << to_string(sideband) << " sideband (expected " << resonance << ")";
    fail(msg.str());
  }

  // Both sidebands reach field level n+1 and vibrational level m+1; keep
  // those below the top retained level so leakage stays exactly zero.
  const auto need_f = static_cast<std::size_t>(n) + 3;
  const auto need_v = static_cast<std::size_t>(m) + 3;
  if (cutoffs.field_dim() < need_f || cutoffs.vib_dim() < need_v) {
    std::ostringstream msg;
    msg << "cutoffs (" << cutoffs.field_dim() << ", " << cutoffs.vib_dim()
        << ") too small for n=" << n << ", m=" << m << "; need at least (" << need_f << ", "
        << need_v << ")";
    fail(msg.str());
  }
}

SystemParams default_params(Sideband sideband) {
  SystemParams p;
  p.eta = 0.1;
  p.g = 10.0;
  p.nu = 500.0;
  p.omega0 = 1e4;
  p.omega = sideband == Sideband::red ? p.omega0 - p.nu : p.omega0 + p.nu;
  return p;
}

PureState prepare_initial(const ProtocolConfig& config) {
  config.validate();
  const FockCutoffs& c = config.cutoffs;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(c.total_dim()));
  const auto n = static_cast<std::size_t>(config.n);
  const auto m = static_cast<std::size_t>(config.m);
  amps[static_cast<Eigen::Index>(c.index(n, m, Qubit::e))] = std::cos(config.theta);
  amps[static_cast<Eigen::Index>(c.index(n, m, Qubit::g))] =
      std::polar(std::sin(config.theta), config.phi);
  return PureState(c, std::move(amps));
}

double bell_time(const SystemParams& params, long k, long m_eff) {
  if (k < 0 || m_eff < 0) {
    throw std::invalid_argument("bell_time: k and m_eff must be non-negative");
  }
  const double eta_g = params.eta_g();
  if (!(eta_g > 0.0) || !std::isfinite(eta_g)) {
    throw std::invalid_argument("bell_time: eta * g must be positive");
  }
  return std::numbers::pi * static_cast<double>(4 * k + 1) /
         (2.0 * eta_g * std::sqrt(static_cast<double>(m_eff + 1)));
}

long effective_excitation(const ProtocolConfig& config) {
  const long rabi_sq = config.sideband == Sideband::red ? (config.n + 1) * (config.m + 1)
                                                        : (config.n + 1) * config.m;
  return rabi_sq > 0 ? rabi_sq - 1 : 0;
}

double protocol_time(const ProtocolConfig& config) {
  return bell_time(config.params, config.k, effective_excitation(config));
}

PureState evolve_protocol_for(const ProtocolConfig& config, double t, Route route) {
  const PureState initial = prepare_initial(config);
  if (route == Route::analytic) {
    return config.sideband == Sideband::red
               ? analytic_red_propagate(config.params, initial, t)
               : analytic_blue_propagate(config.params, initial, t);
  }
  const OperatorMatrix h = config.sideband == Sideband::red
                               ? red_rwa_hamiltonian(config.params, config.cutoffs)
                               : blue_rwa_hamiltonian(config.params, config.cutoffs);
  return numeric_propagate(h, initial, t).state;
}

PureState evolve_protocol(const ProtocolConfig& config, Route route) {
  return evolve_protocol_for(config, protocol_time(config), route);
}

double outcome_probability(const PureState& state, Qubit outcome) {
  double p = 0.0;
  const FockCutoffs& c = state.cutoffs();
  for (std::size_t i = static_cast<std::size_t>(outcome); i < c.total_dim(); i += 2) {
    p += std::norm(state.amplitudes()[static_cast<Eigen::Index>(i)]);
  }
  return p;
}

MeasurementRecord measure_qubit(const PureState& state, Qubit outcome) {
  const FockCutoffs& c = state.cutoffs();
  const double p = outcome_probability(state, outcome);
  if (p < kImpossibleOutcome) {
    std::ostringstream msg;
    msg << "post-selection on |" << to_string(outcome) << "> failed: probability " << p;
    throw PostSelectionError(msg.str());
  }
  Eigen::VectorXcd branch(static_cast<Eigen::Index>(c.pair_dim()));
  for (std::size_t pair = 0; pair < c.pair_dim(); ++pair) {
    branch[static_cast<Eigen::Index>(pair)] =
        state.amplitudes()[static_cast<Eigen::Index>(2 * pair + static_cast<std::size_t>(outcome))];
  }
  return {outcome, p, BipartiteState::normalized(c, std::move(branch))};
}

BipartiteState bell_target(BellState which, const FockCutoffs& cutoffs) {
  if (cutoffs.field_dim() < 2 || cutoffs.vib_dim() < 2) {
    throw std::invalid_argument("bell_target: both modes need at least two Fock levels");
  }
  const double h = std::numbers::sqrt2 / 2.0;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoffs.pair_dim()));
  auto at = [&](std::size_t n, std::size_t m) -> Complex& {
    return amps[static_cast<Eigen::Index>(cutoffs.pair_index(n, m))];
  };
  switch (which) {
    case BellState::phi_plus:
      at(0, 0) = h;
      at(1, 1) = h;
      break;
    case BellState::phi_minus:
      at(0, 0) = h;
      at(1, 1) = -h;
      break;
    case BellState::psi_plus:
      at(0, 1) = h;
      at(1, 0) = h;
      break;
    case BellState::psi_minus:
      at(0, 1) = h;
      at(1, 0) = -h;
      break;
  }
  return BipartiteState(cutoffs, std::move(amps));
}

BellMatch match_bell_basis(const BipartiteState& state) {
  BellMatch match{BellState::phi_plus, -1.0, {}};
  for (std::size_t i = 0; i < kBellStates.size(); ++i) {
    const double f = fidelity(bell_target(kBellStates[i], state.cutoffs()), state);
    match.fidelities[i] = f;
    if (f > match.best_fidelity) {
      match.best_fidelity = f;
      match.best = kBellStates[i];
    }
  }
  return match;
}

BellRun run_bell_protocol(const ProtocolConfig& config, Route route) {
  const double t = protocol_time(config);
  const PureState evolved = evolve_protocol_for(config, t, route);
  MeasurementRecord record = measure_qubit(evolved, Qubit::g);
  const BellMatch match = match_bell_basis(record.post_state);
  return {t, std::move(record), match};
}

}  // namespace iontrap
