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

// Subcommands of the `iontrap` CLI. Each `cmd_*` writes its report to the
// configured output (file or `out`) and returns the process exit status:
// 0 success, 1 physics failure (post-selection or leakage), 2 usage/config.

#include <ostream>
#include <string>
#include <vector>

#include "iontrap/propagation.hpp"
#include "iontrap/run_config.hpp"

namespace iontrap {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPhysics = 1;
inline constexpr int kExitUsage = 2;

struct BellReport {
  Sideband sideband;
  double time;
  double p_g;
  BellState best;
  double fidelity;
  double entropy_nats;
  double negativity;
  double leakage;
};

BellReport run_bell_report(const RunConfig& cfg);

/// One evaluated sweep point. Metrics other than p_g are NaN when the |g>
/// outcome is impossible.
struct SweepRow {
  double value;
  double p_g;
  double best_fidelity;
  double entropy_nats;
  double negativity;
  double leakage;
};

/// Evaluates every sweep point (concurrently), returned in sweep order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);

struct RwaRow {
  double ratio;  // nu / (eta g)
  double nu;
  double final_fidelity;
  double min_fidelity;
  double leakage;
  bool trusted;
};

struct RwaReport {
  double horizon;
  std::vector<RwaRow> rows;  // ascending ratio
  bool monotone;
};

/// Full sine-Hamiltonian dynamics, moved to the interaction picture, against
/// the closed-form sideband propagator over [0, horizon].
RwaReport run_rwa_validation(const RunConfig& cfg);

/// exp(+i H0 t) exp(-i H_full t)|psi0>, plus leakage of the Schrodinger state.
struct FullEvolution {
  PureState interaction_state;
  LeakageReport leakage;
};
FullEvolution evolve_full_interaction_picture(const SystemParams& params, const PureState& initial,
                                              double t);

int cmd_bell(const RunConfig& cfg, std::ostream& out);
int cmd_evolve(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_validate_rwa(const RunConfig& cfg, std::ostream& out);

/// Full command line, args[0] being the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iontrap
