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

#include "iontrap/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "iontrap/analysis.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/propagation.hpp"

namespace iontrap {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string fixed6(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

// Runs body(i) for i in [0, count) on up to hardware_concurrency threads.
// The first exception (by index) is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Writes to the configured file when one is set, otherwise to `fallback`.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback) : stream_(&fallback) {
    if (path) {
      file_.open(*path);
      if (!file_) throw ConfigError("cannot open output file '" + *path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct BranchMetrics {
  double p_g = 0.0;
  double best_fidelity = kNaN;
  double entropy = kNaN;
  double negativity = kNaN;
};

BranchMetrics g_branch_metrics(const PureState& state) {
  BranchMetrics m;
  m.p_g = outcome_probability(state, Qubit::g);
  if (m.p_g < 1e-12) return m;
  const MeasurementRecord record = measure_qubit(state, Qubit::g);
  m.best_fidelity = match_bell_basis(record.post_state).best_fidelity;
  m.entropy = von_neumann_entropy(partial_trace(record.post_state, Subsystem::field));
  m.negativity = negativity(record.post_state);
  return m;
}

SystemParams on_sideband(SystemParams p, Sideband s) {
  p.omega = s == Sideband::red ? p.omega0 - p.nu : p.omega0 + p.nu;
  return p;
}

PureState analytic_sideband(const ProtocolConfig& cfg, const PureState& state, double t) {
  return cfg.sideband == Sideband::red ? analytic_red_propagate(cfg.params, state, t)
                                       : analytic_blue_propagate(cfg.params, state, t);
}

}  // namespace

FullEvolution evolve_full_interaction_picture(const SystemParams& params, const PureState& initial,
                                              double t) {
  const NumericPropagation run =
      numeric_propagate(full_hamiltonian(params, initial.cutoffs()), initial, t);
  return {to_interaction_picture(params, run.state, t), run.leakage};
}

BellReport run_bell_report(const RunConfig& cfg) {
  const ProtocolConfig& p = cfg.protocol;
  const double t = protocol_time(p);
  const PureState evolved = evolve_protocol_for(p, t);
  const MeasurementRecord record = measure_qubit(evolved, Qubit::g);
  const BellMatch match = match_bell_basis(record.post_state);
  return {p.sideband,
          t,
          record.probability,
          match.best,
          match.best_fidelity,
          von_neumann_entropy(partial_trace(record.post_state, Subsystem::field)),
          negativity(record.post_state),
          measure_leakage(evolved).worst()};
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  if (!cfg.sweep) throw ConfigError("sweep: config has no sweep stanza");
  const SweepStanza& sweep = *cfg.sweep;
  const std::vector<double> values = sweep.values();
  const double eta_g = cfg.protocol.params.eta_g();

  // Build and validate every point before doing any work.
  std::vector<ProtocolConfig> points(values.size(), cfg.protocol);
  for (std::size_t i = 0; i < values.size(); ++i) {
    ProtocolConfig& p = points[i];
    const double v = values[i];
    switch (sweep.param) {
      case SweepParam::theta:
        p.theta = v;
        break;
      case SweepParam::phi:
        p.phi = v;
        break;
      case SweepParam::t:
        if (v < 0.0) throw ConfigError("sweep: t must be non-negative");
        break;
      case SweepParam::eta:
        // eta g is held fixed so the time unit does not move.
        if (!(v > 0.0)) throw ConfigError("sweep: eta must be positive");
        p.params.eta = v;
        p.params.g = eta_g / v;
        break;
      case SweepParam::nu_over_etag:
        if (!(v > 0.0)) throw ConfigError("sweep: nu_over_etag must be positive");
        p.params.nu = v * eta_g;
        p.params = on_sideband(p.params, p.sideband);
        break;
    }
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("sweep point ") + fmt12(v) + ": " + e.what());
    }
  }

  std::vector<SweepRow> rows(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const ProtocolConfig& p = points[i];
    PureState state = prepare_initial(p);
    double leakage = 0.0;
    switch (sweep.param) {
      case SweepParam::theta:
      case SweepParam::phi:
        state = analytic_sideband(p, state, cfg.time.value_or(protocol_time(p)));
        break;
      case SweepParam::t:
        state = analytic_sideband(p, state, values[i]);
        break;
      case SweepParam::eta:
      case SweepParam::nu_over_etag: {
        FullEvolution full =
            evolve_full_interaction_picture(p.params, state, cfg.time.value_or(protocol_time(p)));
        state = std::move(full.interaction_state);
        leakage = full.leakage.worst();
        break;
      }
    }
    if (leakage == 0.0) leakage = measure_leakage(state).worst();
    const BranchMetrics m = g_branch_metrics(state);
    rows[i] = {values[i], m.p_g, m.best_fidelity, m.entropy, m.negativity, leakage};
  });
  return rows;
}

RwaReport run_rwa_validation(const RunConfig& cfg) {
  const ProtocolConfig& base = cfg.protocol;
  const double eta_g = base.params.eta_g();
  // Ratios are in units of eta g; with g = 0 the unit falls back to 1 rad/s.
  const double unit = eta_g > 0.0 ? eta_g : 1.0;
  RwaReport report;
  if (cfg.time) {
    report.horizon = *cfg.time;
  } else if (eta_g > 0.0) {
    report.horizon = protocol_time(base);
  } else {
    report.horizon = std::numbers::pi / 2.0;
  }

  std::vector<double> ratios = cfg.rwa_ratios;
  std::sort(ratios.begin(), ratios.end());
  report.rows.resize(ratios.size());
  const auto samples = static_cast<std::size_t>(cfg.rwa_samples);

  parallel_for(ratios.size(), [&](std::size_t i) {
    ProtocolConfig p = base;
    p.params.nu = ratios[i] * unit;
    p.params = on_sideband(p.params, p.sideband);
    p.validate();
    const PureState initial = prepare_initial(p);
    const SpectralPropagator full(full_hamiltonian(p.params, p.cutoffs));

    RwaRow row{ratios[i], p.params.nu, 1.0, 1.0, 0.0, true};
    for (std::size_t s = 1; s <= samples; ++s) {
      const double t = report.horizon * static_cast<double>(s) / static_cast<double>(samples);
      const PureState schrodinger = full.evolve(initial, t);
      row.leakage = std::max(row.leakage, measure_leakage(schrodinger).worst());
      const PureState rotated = to_interaction_picture(p.params, schrodinger, t);
      const double f = std::norm(inner_product(analytic_sideband(p, initial, t), rotated));
      row.min_fidelity = std::min(row.min_fidelity, f);
      if (s == samples) row.final_fidelity = f;
    }
    row.trusted = row.leakage <= kLeakageThreshold;
    report.rows[i] = row;
  });

  report.monotone = true;
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].final_fidelity < report.rows[i - 1].final_fidelity) report.monotone = false;
  }
  return report;
}

int cmd_bell(const RunConfig& cfg, std::ostream& out) {
  const BellReport r = run_bell_report(cfg);
  Sink sink(cfg.output_path, out);
  std::ostream& os = sink.get();
  const double bits = r.entropy_nats / std::numbers::ln2;
  switch (cfg.format.value_or(OutputFormat::text)) {
    case OutputFormat::json: {
      const nlohmann::json doc = {{"sideband", to_string(r.sideband)},
                                  {"time", r.time},
                                  {"p_g", r.p_g},
                                  {"best_bell", to_string(r.best)},
                                  {"fidelity", r.fidelity},
                                  {"entropy_nats", r.entropy_nats},
                                  {"entropy_bits", bits},
                                  {"negativity", r.negativity},
                                  {"leakage", r.leakage},
                                  {"trusted", r.leakage <= kLeakageThreshold}};
      os << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      os << "sideband,time,p_g,best_bell,fidelity,entropy_nats,entropy_bits,negativity,leakage\n"
         << to_string(r.sideband) << ',' << fmt12(r.time) << ',' << fmt12(r.p_g) << ','
         << to_string(r.best) << ',' << fmt12(r.fidelity) << ',' << fmt12(r.entropy_nats) << ','
         << fmt12(bits) << ',' << fmt12(r.negativity) << ',' << fmt12(r.leakage) << "\n";
      break;
    case OutputFormat::text:
      os << "sideband      " << to_string(r.sideband) << "\n"
         << "time          " << fmt12(r.time) << "\n"
         << "p_g           " << fmt12(r.p_g) << "\n"
         << "best_bell     " << to_string(r.best) << "\n"
         << "fidelity      " << fixed6(r.fidelity) << "\n"
         << "entropy_nats  " << fmt12(r.entropy_nats) << "\n"
         << "entropy_bits  " << fmt12(bits) << "\n"
         << "negativity    " << fmt12(r.negativity) << "\n"
         << "leakage       " << fmt12(r.leakage) << "\n";
      break;
  }
  if (r.leakage > kLeakageThreshold) {
    throw LeakageError("bell: top Fock level occupation " + fmt12(r.leakage) +
                       " exceeds threshold");
  }
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.time) throw ConfigError("evolve: config must set t");
  const PureState state = evolve_protocol_for(cfg.protocol, *cfg.time);
  Sink sink(cfg.output_path, out);
  std::ostream& os = sink.get();
  if (cfg.format == OutputFormat::csv) {
    const FockCutoffs& c = state.cutoffs();
    os << "n_f,m_v,q,re,im\n";
    for (std::size_t i = 0; i < c.total_dim(); ++i) {
      const auto l = c.labels(i);
      const Complex a = state.amplitudes()[static_cast<Eigen::Index>(i)];
      os << l.n_f << ',' << l.m_v << ',' << to_string(l.q) << ',' << fmt12(a.real()) << ','
         << fmt12(a.imag()) << "\n";
    }
  } else {
    os << to_json(state) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const std::vector<SweepRow> rows = run_sweep(cfg);
  Sink sink(cfg.output_path, out);
  std::ostream& os = sink.get();
  const std::string name = to_string(cfg.sweep->param);
  double worst_leakage = 0.0;
  if (cfg.format == OutputFormat::json) {
    auto arr = nlohmann::json::array();
    for (const SweepRow& r : rows) {
      arr.push_back({{name, r.value},
                     {"p_g", r.p_g},
                     {"best_fidelity", json_number(r.best_fidelity)},
                     {"entropy_nats", json_number(r.entropy_nats)},
                     {"negativity", json_number(r.negativity)}});
      worst_leakage = std::max(worst_leakage, r.leakage);
    }
    os << arr.dump(2) << "\n";
  } else {
    os << name << ",p_g,best_fidelity,entropy_nats,negativity\n";
    for (const SweepRow& r : rows) {
      os << fmt12(r.value) << ',' << fmt12(r.p_g) << ',' << fmt12(r.best_fidelity) << ','
         << fmt12(r.entropy_nats) << ',' << fmt12(r.negativity) << "\n";
      worst_leakage = std::max(worst_leakage, r.leakage);
    }
  }
  if (worst_leakage > kLeakageThreshold) {
    throw LeakageError("sweep: top Fock level occupation " + fmt12(worst_leakage) +
                       " exceeds threshold");
  }
  return kExitOk;
}

int cmd_validate_rwa(const RunConfig& cfg, std::ostream& out) {
  const RwaReport report = run_rwa_validation(cfg);
  Sink sink(cfg.output_path, out);
  std::ostream& os = sink.get();
  switch (cfg.format.value_or(OutputFormat::text)) {
    case OutputFormat::json: {
      auto rows = nlohmann::json::array();
      for (const RwaRow& r : report.rows) {
        rows.push_back({{"nu_over_etag", r.ratio},
                        {"nu", r.nu},
                        {"final_fidelity", r.final_fidelity},
                        {"min_fidelity", r.min_fidelity},
                        {"leakage", r.leakage},
                        {"trusted", r.trusted}});
      }
      const nlohmann::json doc = {
          {"horizon", report.horizon}, {"rows", rows}, {"monotone", report.monotone}};
      os << doc.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      os << "nu_over_etag,nu,final_fidelity,min_fidelity,leakage,trusted\n";
      for (const RwaRow& r : report.rows) {
        os << fmt12(r.ratio) << ',' << fmt12(r.nu) << ',' << fmt12(r.final_fidelity) << ','
           << fmt12(r.min_fidelity) << ',' << fmt12(r.leakage) << ',' << (r.trusted ? 1 : 0)
           << "\n";
      }
      break;
    case OutputFormat::text:
      os << "horizon " << fmt12(report.horizon) << "\n"
         << "nu_over_etag  final_fidelity  min_fidelity  leakage  status\n";
      for (const RwaRow& r : report.rows) {
        os << fmt12(r.ratio) << "  " << fmt12(r.final_fidelity) << "  " << fmt12(r.min_fidelity)
           << "  " << fmt12(r.leakage) << "  " << (r.trusted ? "ok" : "untrusted") << "\n";
      }
      os << "monotone " << (report.monotone ? "yes" : "no") << "\n";
      break;
  }
  const bool all_trusted = std::all_of(report.rows.begin(), report.rows.end(),
                                       [](const RwaRow& r) { return r.trusted; });
  if (!all_trusted) throw LeakageError("validate-rwa: leakage above threshold");
  return report.monotone ? kExitOk : kExitPhysics;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell states of light and ion motion in a cavity-trapped ion", "iontrap"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_path;
  std::string format;
  struct Entry {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&, std::ostream&);
  };
  const Entry entries[] = {
      {"bell", "Run the Bell-state protocol and report the collapsed state", cmd_bell},
      {"evolve", "Evolve the initial state for time t and dump it as JSON", cmd_evolve},
      {"sweep", "Sweep one parameter and tabulate entanglement metrics", cmd_sweep},
      {"validate-rwa", "Compare full dynamics with the sideband approximation",
       cmd_validate_rwa},
  };
  std::vector<CLI::App*> subs;
  for (const Entry& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    sub->add_option("--config", config_path, "Run configuration file")->required();
    sub->add_option("--output", output_path, "Write results here instead of stdout");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg = load_run_config(config_path);
    if (!output_path.empty()) cfg.output_path = output_path;
    if (!format.empty()) cfg.format = parse_output_format(format);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return entries[i].run(cfg, out);
    }
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << "\n";
    return kExitPhysics;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPhysics;
  }
  return kExitUsage;
}

}  // namespace iontrap
