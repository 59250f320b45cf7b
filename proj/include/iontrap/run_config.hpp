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

// Flat `key = value` run configuration shared by all CLI subcommands.
//
//   # red-sideband Bell state with phi = -pi/2
//   sideband = red
//   theta    = pi/4
//   phi      = -pi/2
//   sweep.param = t
//   sweep.start = 0
//   sweep.stop  = 2*t0
//   sweep.steps = 9
//
// Real-valued entries accept plain numbers or the forms `[-][c*]sym[/d]`
// with sym in {pi, t0}; t0 is the protocol interaction time of the config.

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "iontrap/protocol.hpp"

namespace iontrap {

/// Malformed or inconsistent configuration (exit status 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { text, json, csv };

OutputFormat parse_output_format(const std::string& text);

enum class SweepParam { theta, phi, t, eta, nu_over_etag };

std::string to_string(SweepParam p);

struct SweepStanza {
  SweepParam param = SweepParam::theta;
  double start = 0.0;
  double stop = 0.0;
  long steps = 1;

  /// start, then evenly spaced up to stop; exactly `steps` values.
  std::vector<double> values() const;
};

struct RunConfig {
  ProtocolConfig protocol;
  std::optional<double> time;  // explicit evolution time (evolve, validate-rwa)
  std::optional<std::string> output_path;
  std::optional<OutputFormat> format;
  std::optional<SweepStanza> sweep;
  std::vector<double> rwa_ratios{50.0, 200.0, 500.0};
  long rwa_samples = 16;
};

/// Evaluates a real literal; `t0` is only legal when `t0` is provided.
double evaluate_real(const std::string& text, std::optional<double> t0 = std::nullopt);

RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::string& path);

}  // namespace iontrap
