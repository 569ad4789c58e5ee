// Copyright 2026 The msgate Authors
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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "msgate/calibration_dag.hpp"
#include "msgate/csv.hpp"
#include "msgate/filter.hpp"
#include "msgate/gate_sim.hpp"
#include "msgate/mtms.hpp"
#include "msgate/phase_space.hpp"
#include "msgate/synthesis.hpp"

namespace msgate::cli {

namespace fs = std::filesystem;

std::string config_hash(const std::string& command, const json& config) {
  return fnv1a_hex(command + "\n" + config.dump());
}

namespace {

std::string output_path(const RunContext& ctx, const std::string& name) {
  fs::create_directories(ctx.out_dir);
  return (fs::path(ctx.out_dir) / name).string();
}

CsvMeta meta(const RunContext& ctx, std::vector<std::string> notes = {}) { return {ctx.config_hash, ctx.seed, std::move(notes)}; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

/// Root reader; checks the optional "command" tag against the subcommand.
Reader root(const json& config, const std::string& command) {
  Reader r(config, "");
  const std::string tag = r.text("command", command);
  if (tag != command) throw ConfigError("/command: config is for '" + tag + "', not '" + command + "'");
  return r;
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateSpec {
  SimulationScenario scenario;
};

SimulateSpec parse_simulate(const json& config, const RunContext& ctx) {
  Reader r = root(config, "simulate");
  SimulateSpec spec;
  spec.scenario = scenario_from_json(r.object("scenario"));
  spec.scenario.seed = ctx.seed;
  spec.scenario.jobs = ctx.jobs;
  r.finish();
  return spec;
}

// ---------------------------------------------------------------------------
// scan

struct ScanSpec {
  std::string kind;
  // static
  SimulationScenario scenario;
  StaticScanConfig static_cfg;
  // heating
  ModulationBase base;
  double eta = 0.01;
  double heating_rate = 40.0;
  int fock_cutoff = 12;
  std::vector<double> r_heat;
  std::vector<std::string> modulations;
  OptimizerConfig optimizer;
  // thermal
  ThermalConfig thermal;
  // cat
  std::string sequence = "primitive";
  std::vector<double> offsets;  // rad/s
  double n_bar = 0.0;
};

StaticVariant parse_variant(const std::string& s, const std::string& path) {
  if (s == "none") return StaticVariant::None;
  if (s == "b-field") return StaticVariant::BField;
  if (s == "control-field") return StaticVariant::ControlField;
  throw ConfigError(path + ": expected none, b-field or control-field");
}

ScanSpec parse_scan(const json& config, const RunContext& ctx) {
  Reader r = root(config, "scan");
  ScanSpec s;
  s.kind = r.text("kind", "static");
  if (s.kind == "static") {
    s.scenario = scenario_from_json(r.object("scenario"));
    s.scenario.seed = ctx.seed;
    s.scenario.jobs = ctx.jobs;
    s.static_cfg.n_values = r.numbers("n_values", {});
    s.static_cfg.shift_values = r.numbers("shift_values", {});
    s.static_cfg.levels = r.numbers("levels", s.static_cfg.levels);
    s.static_cfg.variant = parse_variant(r.text("variant", "none"), r.path_of("variant"));
    if (s.static_cfg.n_values.empty()) throw ConfigError(r.path_of("n_values") + ": required non-empty array");
    if (s.static_cfg.shift_values.size() < 2) throw ConfigError(r.path_of("shift_values") + ": need at least two shifts");
  } else if (s.kind == "heating") {
    s.eta = r.number("eta", 0.01);
    s.base = base_from_json(r, 40e3, s.eta);
    s.heating_rate = r.number("heating_rate", 40.0);
    s.fock_cutoff = r.integer("fock_cutoff", 12);
    s.r_heat = r.numbers("r_heat", {0.4, 0.2, 0.06});
    if (r.has("optimizer")) s.optimizer = optimizer_from_json(r.object("optimizer"));
    s.optimizer.seed = ctx.seed;
    if (r.has("modulations")) {
      const json& m = r.raw("modulations");
      if (!m.is_array()) throw ConfigError(r.path_of("modulations") + ": expected an array of paths");
      for (const auto& p : m) {
        if (!p.is_string()) throw ConfigError(r.path_of("modulations") + ": expected an array of paths");
        s.modulations.push_back(p.get<std::string>());
      }
    }
    if (s.heating_rate < 0.0) throw ConfigError(r.path_of("heating_rate") + ": must be >= 0");
    if (s.fock_cutoff < 4) throw ConfigError(r.path_of("fock_cutoff") + ": must be >= 4");
    for (double x : s.r_heat)
      if (!(x > 0.0 && x <= 1.0)) throw ConfigError(r.path_of("r_heat") + ": values must lie in (0, 1]");
  } else if (s.kind == "thermal") {
    ThermalConfig& t = s.thermal;
    t.jobs = ctx.jobs;
    t.omega0 = kTwoPi * r.number("omega0_hz", t.omega0 / kTwoPi);
    t.eta = r.number("eta", t.eta);
    t.rotations = r.number("rotations", t.rotations);
    t.qubit_shifts = r.numbers("qubit_shifts", {-1.0, -0.5, 0.0, 0.5, 1.0});
    t.motion_shifts = r.numbers("motion_shifts", {-1.0, -0.5, 0.0, 0.5, 1.0});
    t.n_bars = r.numbers("n_bars", t.n_bars);
    t.population_floor = r.number("population_floor", t.population_floor);
    if (!(t.omega0 > 0.0 && t.eta > 0.0 && t.rotations > 0.0)) throw ConfigError("/: omega0_hz, eta and rotations must be > 0");
    for (double n : t.n_bars)
      if (n < 0.0) throw ConfigError(r.path_of("n_bars") + ": must be >= 0");
  } else if (s.kind == "cat") {
    const double omega0_hz = r.number("omega0_hz", 30e3);
    const double delta0_hz = r.number("delta0_hz", 321.0);
    s.eta = r.number("eta", delta0_hz / (2.0 * omega0_hz));
    s.base = {kTwoPi * omega0_hz, kTwoPi * delta0_hz, 0.0};
    s.sequence = r.text("sequence", "primitive");
    std::vector<double> hz = r.numbers("offsets_hz", {});
    if (hz.empty())
      for (int i = -100; i <= 100; ++i) hz.push_back(0.5 * i);
    for (double h : hz) s.offsets.push_back(kTwoPi * h);
    s.n_bar = r.number("n_bar", 0.0);
    if (!(omega0_hz > 0.0 && delta0_hz > 0.0 && s.eta > 0.0))
      throw ConfigError("/: omega0_hz, delta0_hz and eta must be > 0");
    if (s.n_bar < 0.0) throw ConfigError(r.path_of("n_bar") + ": must be >= 0");
  } else {
    throw ConfigError(r.path_of("kind") + ": expected static, heating, thermal or cat");
  }
  r.finish();
  return s;
}

// ---------------------------------------------------------------------------
// synthesize

struct SynthSpec {
  std::string mode = "optimize";
  SynthesisTarget target;
  int tones = 2;
  OptimizerConfig optimizer;
};

SynthSpec parse_synthesize(const json& config, const RunContext& ctx) {
  Reader r = root(config, "synthesize");
  SynthSpec s;
  s.mode = r.text("mode", "optimize");
  s.target.eta = r.number("eta", 0.01);
  s.target.base = base_from_json(r, 30e3, s.target.eta);
  s.target.t_chunk = r.number("t_chunk", 0.0);
  if (s.mode == "match") {
    s.target.kind = wrap(r.path_of("kind"), [&] { return parse_modulation_kind(r.text("kind", "pm")); });
    s.tones = r.integer("tones", 2);
    if (s.tones < 1 || s.tones > 16) throw ConfigError(r.path_of("tones") + ": must lie in 1..16");
  } else if (s.mode == "optimize") {
    s.target.r_heat = r.number("r_heat", 0.4);
    s.target.segment_count = r.integer("segments", 0);
    if (r.has("optimizer")) s.optimizer = optimizer_from_json(r.object("optimizer"));
    s.optimizer.seed = ctx.seed;
  } else {
    throw ConfigError(r.path_of("mode") + ": expected match or optimize");
  }
  r.finish();
  if (s.mode == "match") {
    ModeSpec mode;
    mode.eta = s.target.eta;
    s.target.target_trajectory =
        tone_pst(solve_coefficients(s.tones), mode, s.target.base, {0.0, s.target.tau0(), 4000});
  }
  wrap("/", [&] {
    s.target.validate();
    return 0;
  });
  return s;
}

// ---------------------------------------------------------------------------
// filter

struct FilterSpec {
  std::string scheme = "fid";
  double tau = 1e-3;
  int num_pulses = 4;
  double omega_c = kTwoPi * 30e3;
  std::vector<double> omega;
  bool numeric = false;
};

FilterSpec parse_filter(const json& config) {
  Reader r = root(config, "filter");
  FilterSpec f;
  f.scheme = r.text("scheme", "fid");
  f.tau = r.number("tau", f.tau);
  f.num_pulses = r.integer("num_pulses", f.num_pulses);
  f.omega_c = kTwoPi * r.number("omega_c_hz", f.omega_c / kTwoPi);
  f.numeric = r.flag("numeric", false);
  double start = 0.0, stop = 2.0 * f.omega_c / kTwoPi;
  int count = 201;
  if (r.has("omega_hz")) {
    Reader g = r.object("omega_hz");
    start = g.number("start", start);
    stop = g.number("stop", stop);
    count = g.integer("count", count);
    g.finish();
    if (!(stop > start) || count < 2) throw ConfigError(r.path_of("omega_hz") + ": need stop > start and count >= 2");
  }
  r.finish();
  if (f.scheme != "fid" && f.scheme != "pdd" && f.scheme != "cpmg" && f.scheme != "cdd" && f.scheme != "mlcdd")
    throw ConfigError("/scheme: expected fid, pdd, cpmg, cdd or mlcdd");
  if (!(f.tau > 0.0)) throw ConfigError("/tau: must be > 0");
  if ((f.scheme == "pdd" || f.scheme == "cpmg") && f.num_pulses < 1) throw ConfigError("/num_pulses: must be >= 1");
  if (f.numeric && f.scheme != "cdd" && f.scheme != "mlcdd")
    throw ConfigError("/numeric: numeric extraction applies to cdd and mlcdd only");
  for (int i = 0; i < count; ++i) f.omega.push_back(kTwoPi * (start + (stop - start) * i / (count - 1)));
  return f;
}

FilterFunction compute_filter(const FilterSpec& f) {
  if (f.numeric) return numeric_filter_function(parse_scheme(f.scheme), f.omega_c, f.tau, f.omega);
  if (f.scheme == "fid") return sample(fid_filter(f.tau), f.omega);
  if (f.scheme == "pdd") return pdd_filter(PulseSequence::periodic(f.num_pulses + 1), f.tau, f.omega);
  if (f.scheme == "cpmg") return pdd_filter(PulseSequence::cpmg(f.num_pulses), f.tau, f.omega);
  if (f.scheme == "cdd") return sample(continuous_drive_filter(f.omega_c, f.tau), f.omega);
  return sample(continuous_drive_filter(f.omega_c / std::sqrt(2.0), f.tau), f.omega);
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << "\n";
}

std::vector<ModulationSequence> heating_sequences(const ScanSpec& s, std::vector<std::string>& labels) {
  const double tau0 = kTwoPi / s.base.delta0;
  std::vector<ModulationSequence> seqs{ModulationSequence::primitive(s.base, tau0)};
  labels = {"primitive"};
  for (double r : s.r_heat) {
    const OptimizeResult o = optimize_pst(r, s.base, s.eta, s.optimizer);
    if (!o.feasible) throw ConvergenceError("optimizer infeasible at r_heat " + std::to_string(r) + ": " + o.message);
    seqs.push_back(o.sequence);
    char label[32];
    std::snprintf(label, sizeof label, "r_heat=%g", r);
    labels.push_back(label);
  }
  for (const auto& p : s.modulations) {
    seqs.push_back(load_modulation(p));
    labels.push_back(p);
  }
  return seqs;
}

}  // namespace

std::vector<std::string> validate_config(const std::string& command, const json& config) {
  const RunContext ctx;
  if (command == "simulate") return parse_simulate(config, ctx).scenario.warnings();
  if (command == "scan") {
    const ScanSpec s = parse_scan(config, ctx);
    std::vector<std::string> w;
    if (s.kind == "static") w = s.scenario.warnings();
    if (s.kind == "thermal")
      for (double n : s.thermal.n_bars)
        if (n > 0.0 && std::pow(n / (n + 1.0), default_fock_cutoff(n, s.thermal.population_floor)) > 1e-4)
          w.push_back("fock-truncation: thermal leakage above 1e-4 at n_bar " + std::to_string(n));
    return w;
  }
  if (command == "synthesize") {
    parse_synthesize(config, ctx);
    return {};
  }
  if (command == "filter") {
    parse_filter(config);
    return {};
  }
  throw ConfigError("/command: unknown command '" + command + "'");
}

int cmd_simulate(const json& config, const RunContext& ctx) {
  const SimulateSpec spec = parse_simulate(config, ctx);
  const GateRunResult r = run_gate(spec.scenario);
  const double analytic = spec.scenario.noisy() ? analytic_infidelity(spec.scenario) : 0.0;
  print_warnings(r.warnings);
  write_csv(output_path(ctx, "simulate.csv"), meta(ctx, r.warnings),
            {"mean_infidelity", "stderr", "n_traj", "duration", "analytic"},
            {{r.mean_infidelity, r.stderr_infidelity, static_cast<double>(r.n_traj), r.duration, analytic}});
  std::printf("infidelity %.6e +- %.1e (%d trajectories, duration %.6e s, analytic %.6e)\n", r.mean_infidelity,
              r.stderr_infidelity, r.n_traj, r.duration, analytic);
  return 0;
}

int cmd_scan(const json& config, const RunContext& ctx) {
  const ScanSpec s = parse_scan(config, ctx);
  if (s.kind == "static") {
    const StaticScanResult r = scan_static_shift(s.scenario, s.static_cfg);
    print_warnings(r.surface.warnings);
    write_scan_csv(output_path(ctx, "scan_static.csv"), meta(ctx, r.surface.warnings), r.surface);
    std::vector<std::vector<double>> rows;
    for (const auto& f : r.fits) {
      for (std::size_t i = 0; i < f.n_values.size(); ++i)
        rows.push_back({f.level, f.n_values[i], f.thresholds[i], f.model(f.n_values[i]), f.intercept, f.slope});
      std::printf("level %.0e: %s %.4f%s\n", f.level, f.sqrt_model ? "sqrt(N) coefficient" : "slope", f.slope,
                  f.sqrt_model ? "" : (", intercept " + std::to_string(f.intercept)).c_str());
    }
    write_csv(output_path(ctx, "scan_static_contours.csv"),
              meta(ctx, {"threshold in units of 2 pi / gate duration"}),
              {"level", "n", "threshold", "fit", "intercept", "slope"}, rows);
  } else if (s.kind == "heating") {
    std::vector<std::string> labels;
    const auto seqs = heating_sequences(s, labels);
    const auto entries = run_heating_scan(seqs, labels, s.heating_rate, s.eta, kTwoPi / s.base.delta0, s.fock_cutoff);
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      rows.push_back({e.r_heat, e.r_time, e.simulated, e.predicted});
      notes.push_back("row " + std::to_string(i) + ": " + e.label);
      std::printf("%-12s R_heat %.4f R_time %.4f simulated %.5f predicted %.5f\n", e.label.c_str(), e.r_heat, e.r_time,
                  e.simulated, e.predicted);
    }
    write_csv(output_path(ctx, "scan_heating.csv"), meta(ctx, notes), {"r_heat", "r_time", "simulated", "predicted"},
              rows);
  } else if (s.kind == "thermal") {
    for (const auto& t : run_thermal_comparison(s.thermal)) {
      char name[96];
      std::snprintf(name, sizeof name, "scan_thermal_%s_nbar%g.csv", t.label.c_str(), t.n_bar);
      write_scan_csv(output_path(ctx, name), meta(ctx, {"shifts in units of delta0"}), t.surface);
      std::printf("wrote %s\n", name);
    }
  } else {
    ModulationSequence seq;
    if (s.sequence == "primitive") seq = ModulationSequence::primitive(s.base, kTwoPi / s.base.delta0);
    else if (s.sequence == "robust") seq = robust_pm_sequence(s.base.omega0, s.eta);
    else seq = load_modulation(s.sequence);
    const auto pts = run_cat_scan(seq, s.eta, s.offsets, s.n_bar);
    std::vector<std::vector<double>> rows;
    for (const auto& p : pts) rows.push_back({p.detuning, p.probability});
    write_csv(output_path(ctx, "scan_cat.csv"), meta(ctx, {"detuning in rad/s"}), {"detuning", "p_up"}, rows);
    std::printf("gate duration %.6e s, nominal detuning %.3f Hz\n", seq.duration(), 1.0 / seq.duration());
  }
  return 0;
}

int cmd_synthesize(const json& config, const RunContext& ctx) {
  const SynthSpec s = parse_synthesize(config, ctx);
  ModulationSequence seq;
  std::vector<std::string> columns;
  std::vector<double> row;
  if (s.mode == "match") {
    const MatchResult m = match_target_pst(s.target);
    seq = m.sequence;
    columns = {"r_time", "max_residual", "closure"};
    row = {m.r_time, m.max_residual, m.closure};
    if (s.target.kind == ModulationKind::Amplitude) {
      columns.push_back("envelope_residual");
      row.push_back(am_envelope_residual(m));
    }
  } else {
    const OptimizeResult o = optimize_pst(s.target, s.optimizer);
    if (!o.feasible) throw ConvergenceError("optimizer: " + o.message);
    seq = o.sequence;
    columns = {"r_heat", "r_time", "closure", "phase"};
    row = {o.report.r_heat, o.r_time, o.report.closure, o.phase};
  }
  save_modulation(seq, output_path(ctx, "synthesized.json"));
  ModeSpec mode;
  mode.eta = s.target.eta;
  const Trajectory traj = compute_pst(seq, mode, {0.0, seq.duration(), 2000});
  write_trajectory_csv(traj, output_path(ctx, "synthesized_trajectory.csv"),
                       {"config_hash: " + ctx.config_hash, "seed: " + std::to_string(ctx.seed)});
  write_csv(output_path(ctx, "synthesized_metrics.csv"), meta(ctx), columns, {row});
  for (std::size_t i = 0; i < columns.size(); ++i) std::printf("%s %.6g\n", columns[i].c_str(), row[i]);
  return 0;
}

int cmd_filter(const json& config, const RunContext& ctx) {
  const FilterSpec f = parse_filter(config);
  const FilterFunction ff = compute_filter(f);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < ff.omega.size(); ++i) rows.push_back({ff.omega[i], ff.values[i]});
  write_csv(output_path(ctx, "filter.csv"), meta(ctx, {"scheme " + f.scheme, "omega in rad/s"}), {"omega", "filter"},
            rows);
  std::printf("wrote %zu samples\n", rows.size());
  return 0;
}

int cmd_mtms(int n, bool all, const RunContext& ctx) {
  if (n < 1 || n > 16) throw ConfigError("--n: must lie in 1..16");
  std::vector<std::string> columns{"n", "r_heat", "r_time", "r_heat_scaled"};
  for (int j = 1; j <= n; ++j) columns.push_back("c" + std::to_string(j));
  std::vector<std::vector<double>> rows;
  for (int k = all ? 1 : n; k <= n; ++k) {
    const ToneSet t = solve_coefficients(k);
    const ToneMetrics m = tone_metrics(t);
    std::vector<double> row{static_cast<double>(k), m.r_heat, m.r_time, m.r_heat_scaled};
    for (int j = 0; j < n; ++j) row.push_back(j < k ? t.c[j] : 0.0);
    rows.push_back(row);
    std::printf("N=%d R_heat %.4f R_time %.4f scaled %.4f c =", k, m.r_heat, m.r_time, m.r_heat_scaled);
    for (double c : t.c) std::printf(" %.4f", c);
    std::printf("\n");
  }
  write_csv(output_path(ctx, "mtms.csv"), meta(ctx), columns, rows);
  return 0;
}

int cmd_dag(const std::string& preset, const RunContext& ctx) {
  const CalPreset p = wrap("--preset", [&] { return parse_cal_preset(preset); });
  const CalGraph g = build_preset(p);
  const CalMetrics m = metrics(g);
  const std::string stem = "dag_" + to_string(p);
  write_text(output_path(ctx, stem + ".json"), graph_to_json(g) + "\n");
  write_text(output_path(ctx, stem + ".dot"), graph_to_dot(g));
  write_csv(output_path(ctx, stem + "_metrics.csv"), meta(ctx, {"preset " + to_string(p)}), {"nodes", "strong", "weak"},
            {{double(m.nodes), double(m.strong), double(m.weak)}});
  std::printf("%s: %d nodes, %d strong edges, %d weak edges, acyclic %s\n", to_string(p).c_str(), m.nodes, m.strong,
              m.weak, g.is_acyclic() ? "yes" : "no");
  return 0;
}

}  // namespace msgate::cli
