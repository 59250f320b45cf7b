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

#include "iontrap/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace iontrap {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != s.size() || !std::isfinite(value)) {
    throw ConfigError("not a finite number: '" + text + "'");
  }
  return value;
}

long parse_integer(const std::string& key, const std::string& text) {
  const std::string s = trim(text);
  long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "sideband", "n",          "m",           "theta",       "phi",         "k",
      "t",        "field_dim",  "vib_dim",     "nu",          "omega",       "omega0",
      "g",        "eta",        "output",      "format",      "sweep.param", "sweep.start",
      "sweep.stop", "sweep.steps", "rwa.ratios", "rwa.samples"};
  return keys;
}

SweepParam parse_sweep_param(const std::string& text) {
  if (text == "theta") return SweepParam::theta;
  if (text == "phi") return SweepParam::phi;
  if (text == "t") return SweepParam::t;
  if (text == "eta") return SweepParam::eta;
  if (text == "nu_over_etag") return SweepParam::nu_over_etag;
  throw ConfigError("sweep.param must be one of theta, phi, t, eta, nu_over_etag; got '" +
                    text + "'");
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "text") return OutputFormat::text;
  throw ConfigError("format must be json or csv, got '" + text + "'");
}

std::string to_string(SweepParam p) {
  switch (p) {
    case SweepParam::theta:
      return "theta";
    case SweepParam::phi:
      return "phi";
    case SweepParam::t:
      return "t";
    case SweepParam::eta:
      return "eta";
    case SweepParam::nu_over_etag:
      return "nu_over_etag";
  }
  return "unknown";
}

std::vector<double> SweepStanza::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (long i = 0; i < steps; ++i) {
    out.push_back(steps == 1 ? start
                             : start + (stop - start) * static_cast<double>(i) /
                                           static_cast<double>(steps - 1));
  }
  if (steps > 1) out.back() = stop;
  return out;
}

double evaluate_real(const std::string& text, std::optional<double> t0) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty value");
  if (s.find("pi") == std::string::npos && s.find("t0") == std::string::npos) {
    return parse_number(s);
  }

  // [-][c*]sym[/d]
  std::string body = s;
  double sign = 1.0;
  if (body.front() == '-' || body.front() == '+') {
    sign = body.front() == '-' ? -1.0 : 1.0;
    body = trim(body.substr(1));
  }
  double coefficient = 1.0;
  if (const auto star = body.find('*'); star != std::string::npos) {
    coefficient = parse_number(body.substr(0, star));
    body = trim(body.substr(star + 1));
  }
  double symbol = 0.0;
  if (body.starts_with("pi")) {
    symbol = std::numbers::pi;
  } else if (body.starts_with("t0")) {
    if (!t0) throw ConfigError("'t0' is not available in this context: '" + text + "'");
    symbol = *t0;
  } else {
    throw ConfigError("cannot parse value '" + text + "'");
  }
  double value = sign * coefficient * symbol;
  const std::string tail = trim(body.substr(2));
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError("cannot parse value '" + text + "'");
    const double denominator = parse_number(tail.substr(1));
    if (denominator == 0.0) throw ConfigError("division by zero in '" + text + "'");
    value /= denominator;
  }
  return value;
}

RunConfig parse_run_config(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" + key + "'");
    }
    if (!entries.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  };

  RunConfig cfg;
  ProtocolConfig& p = cfg.protocol;
  try {
    if (auto v = get("sideband")) p.sideband = parse_sideband(*v);
    if (auto v = get("n")) p.n = parse_integer("n", *v);
    if (auto v = get("m")) p.m = parse_integer("m", *v);
    if (auto v = get("k")) p.k = parse_integer("k", *v);
    if (auto v = get("theta")) p.theta = evaluate_real(*v);
    if (auto v = get("phi")) p.phi = evaluate_real(*v);

    const long field_dim = get("field_dim") ? parse_integer("field_dim", *get("field_dim")) : 8;
    const long vib_dim = get("vib_dim") ? parse_integer("vib_dim", *get("vib_dim")) : 8;
    if (field_dim < 1 || vib_dim < 1) throw ConfigError("field_dim and vib_dim must be >= 1");
    p.cutoffs = FockCutoffs(static_cast<std::size_t>(field_dim), static_cast<std::size_t>(vib_dim));

    SystemParams params = default_params(p.sideband);
    if (auto v = get("nu")) params.nu = evaluate_real(*v);
    if (auto v = get("omega0")) params.omega0 = evaluate_real(*v);
    if (auto v = get("g")) params.g = evaluate_real(*v);
    if (auto v = get("eta")) params.eta = evaluate_real(*v);
    // Unless given, the field sits on the requested sideband.
    params.omega = p.sideband == Sideband::red ? params.omega0 - params.nu
                                               : params.omega0 + params.nu;
    if (auto v = get("omega")) params.omega = evaluate_real(*v);
    p.params = params;
    p.validate();

    std::optional<double> t0;
    if (p.params.eta_g() > 0.0) t0 = protocol_time(p);

    if (auto v = get("t")) {
      cfg.time = evaluate_real(*v, t0);
      if (!(*cfg.time >= 0.0)) throw ConfigError("t must be non-negative");
    }
    if (auto v = get("output")) cfg.output_path = *v;
    if (auto v = get("format")) cfg.format = parse_output_format(*v);

    const bool any_sweep = get("sweep.param") || get("sweep.start") || get("sweep.stop") ||
                           get("sweep.steps");
    if (any_sweep) {
      if (!get("sweep.param") || !get("sweep.start") || !get("sweep.stop") ||
          !get("sweep.steps")) {
        throw ConfigError("sweep stanza needs sweep.param, sweep.start, sweep.stop, sweep.steps");
      }
      SweepStanza sweep;
      sweep.param = parse_sweep_param(*get("sweep.param"));
      sweep.start = evaluate_real(*get("sweep.start"), t0);
      sweep.stop = evaluate_real(*get("sweep.stop"), t0);
      sweep.steps = parse_integer("sweep.steps", *get("sweep.steps"));
      if (sweep.steps < 1) throw ConfigError("sweep.steps must be >= 1");
      if (sweep.start > sweep.stop) throw ConfigError("sweep.start must not exceed sweep.stop");
      cfg.sweep = sweep;
    }

    if (auto v = get("rwa.ratios")) {
      cfg.rwa_ratios.clear();
      std::stringstream list(*v);
      std::string item;
      while (std::getline(list, item, ',')) {
        const double r = evaluate_real(item);
        if (!(r > 0.0)) throw ConfigError("rwa.ratios entries must be positive");
        cfg.rwa_ratios.push_back(r);
      }
      if (cfg.rwa_ratios.empty()) throw ConfigError("rwa.ratios is empty");
    }
    if (auto v = get("rwa.samples")) {
      cfg.rwa_samples = parse_integer("rwa.samples", *v);
      if (cfg.rwa_samples < 1) throw ConfigError("rwa.samples must be >= 1");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_run_config(in);
}

}  // namespace iontrap
