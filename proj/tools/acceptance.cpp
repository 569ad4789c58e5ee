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

#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "msgate/calibration_dag.hpp"
#include "msgate/csv.hpp"
#include "msgate/filter.hpp"
#include "msgate/gate_sim.hpp"
#include "msgate/mtms.hpp"
#include "msgate/noise.hpp"
#include "msgate/phase_space.hpp"
#include "msgate/quantum_core.hpp"
#include "msgate/synthesis.hpp"

namespace msgate::cli {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

/// Collects per-check outcomes and a short human-readable detail line.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!failed_.empty()) failed_ += "; ";
      failed_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  bool pass() const { return pass_; }
  std::string detail() const {
    if (pass_) return notes_;
    return "failed: " + failed_ + (notes_.empty() ? "" : " | " + notes_);
  }

 private:
  bool pass_ = true;
  std::string failed_;
  std::string notes_;
};

struct Context {
  const AcceptanceOptions& opt;
  std::map<double, OptimizeResult> optimized;  // keyed by R_heat target

  void emit(const std::string& name, const std::vector<std::string>& columns,
            const std::vector<std::vector<double>>& rows, std::vector<std::string> notes = {}) const {
    if (opt.out_dir.empty()) return;
    std::filesystem::create_directories(opt.out_dir);
    write_csv((std::filesystem::path(opt.out_dir) / name).string(), {opt.config_hash, opt.seed, std::move(notes)},
              columns, rows);
  }
  void emit_scan(const std::string& name, const ScanResult& scan) const {
    if (opt.out_dir.empty()) return;
    std::filesystem::create_directories(opt.out_dir);
    write_scan_csv((std::filesystem::path(opt.out_dir) / name).string(), {opt.config_hash, opt.seed, {}}, scan);
  }
};

// Heating and optimizer settings shared by criteria 6, 7 and 13.
ModulationBase heating_base() {
  ModulationBase b{kTwoPi * 40e3, 0.0, 0.0};
  b.delta0 = 2.0 * 0.01 * b.omega0;
  return b;
}
constexpr double kHeatingEta = 0.01;
constexpr double kHeatingRate = 40.0;
const std::vector<double> kRHeatSweep{0.4, 0.3, 0.2, 0.1, 0.06};

const OptimizeResult& optimized(Context& ctx, double r_heat) {
  auto it = ctx.optimized.find(r_heat);
  if (it != ctx.optimized.end()) return it->second;
  OptimizerConfig cfg;
  cfg.starts = ctx.opt.optimizer_starts;
  cfg.seed = ctx.opt.seed;
  return ctx.optimized.emplace(r_heat, optimize_pst(r_heat, heating_base(), kHeatingEta, cfg)).first->second;
}

// ---------------------------------------------------------------------------

struct ExpectedRow {
  int n;
  std::vector<double> c;
  double r_heat, r_time, r_scaled;
};

void criterion_tone_table(Context& ctx, Checks& ck) {
  const double s3 = std::sqrt(3.0);
  const std::vector<ExpectedRow> expected_rows{
      {1, {1.0}, 1.0, 1.0, 1.0},
      {2, {-1.0 / s3, 2.0 / s3}, 0.33, 1.73, 0.57},
      {3, {-0.132, -0.719, 1.474}, 0.19, 2.06, 0.40},
      {4, {-0.06, -0.204, -0.804, 1.74}, 0.14, 2.4, 0.33},
      {5, {-0.036, -0.104, -0.256, -0.872, 1.972}, 0.11, 2.66, 0.28},
  };
  const auto rows = tone_table(5);
  std::vector<std::vector<double>> out;
  for (const auto& p : expected_rows) {
    const auto& r = rows.at(p.n - 1);
    double worst = 0.0;
    for (int j = 0; j < p.n; ++j) worst = std::max(worst, std::abs(r.tones.c[j] - p.c[j]));
    const std::string tag = "N=" + std::to_string(p.n);
    ck.expect(worst <= 1e-3, tag + " coefficients off by " + fmt("%.1e", worst));
    ck.expect(std::abs(r.metrics.r_heat - p.r_heat) <= 0.01, tag + " R_heat " + fmt("%.4f", r.metrics.r_heat));
    ck.expect(std::abs(r.metrics.r_time - p.r_time) <= 0.05, tag + " R_time " + fmt("%.4f", r.metrics.r_time));
    ck.expect(std::abs(r.metrics.r_heat_scaled - p.r_scaled) <= 0.01,
              tag + " scaled R_heat " + fmt("%.4f", r.metrics.r_heat_scaled));
    std::vector<double> row{static_cast<double>(p.n), r.metrics.r_heat, r.metrics.r_time, r.metrics.r_heat_scaled};
    for (int j = 0; j < 5; ++j) row.push_back(j < p.n ? r.tones.c[j] : 0.0);
    out.push_back(row);
  }
  ctx.emit("tone_table.csv", {"n", "r_heat", "r_time", "r_heat_scaled", "c1", "c2", "c3", "c4", "c5"}, out);
}

void criterion_two_tone(Context& ctx, Checks& ck) {
  const ToneSet t = solve_coefficients(2);
  double worst = 0.0;
  std::vector<std::vector<double>> out;
  for (int i = 0; i <= 2000; ++i) {
    const double x = kTwoPi * i / 2000.0;
    const double got = std::norm(tone_signal(t, x));
    worst = std::max(worst, std::abs(got - (5.0 - 4.0 * std::cos(x)) / 3.0));
    if (i % 10 == 0) out.push_back({x, got});
  }
  const double peak = tone_peak(t);
  ck.expect(worst <= 1e-9, "pointwise error " + fmt("%.1e", worst));
  ck.expect(std::abs(peak - std::sqrt(3.0)) <= 1e-9, "peak " + fmt("%.12f", peak));
  ck.note("max error " + fmt("%.1e", worst) + ", peak " + fmt("%.10f", peak));
  ctx.emit("two_tone_interference.csv", {"x", "abs_f2_squared"}, out);
}

void criterion_static(Context& ctx, Checks& ck) {
  auto run = [&](Scheme scheme, StaticVariant variant, std::vector<double> n, std::vector<double> shifts,
                 const std::string& name) {
    SimulationScenario s;
    s.scheme = scheme;
    s.jobs = ctx.opt.jobs;
    StaticScanConfig cfg;
    cfg.n_values = std::move(n);
    cfg.shift_values = std::move(shifts);
    cfg.variant = variant;
    StaticScanResult r = scan_static_shift(s, cfg);
    ctx.emit_scan("static_" + name + ".csv", r.surface);
    std::vector<std::vector<double>> rows;
    for (const auto& f : r.fits)
      for (std::size_t i = 0; i < f.n_values.size(); ++i)
        rows.push_back({f.level, f.n_values[i], f.thresholds[i], f.model(f.n_values[i])});
    ctx.emit("static_" + name + "_contours.csv", {"level", "n", "threshold", "fit"}, rows);
    return r;
  };

  // Pulsed: slope and the fitted line over N >= 10 against the linear model.
  const auto pdd = run(Scheme::Pdd, StaticVariant::None, {5, 10, 20, 50, 100},
                       {0, 0.003, 0.01, 0.03, 0.1, 0.3, 1, 2, 4}, "pdd");
  for (const auto& f : pdd.fits) {
    const std::string tag = "pdd " + fmt("%.0e", f.level);
    const double ref_slope = static_threshold(Scheme::Pdd, StaticVariant::None, 1.0, f.level) -
                             static_threshold(Scheme::Pdd, StaticVariant::None, 0.0, f.level);
    ck.expect(rel_err(f.slope, ref_slope) <= 0.25, tag + " slope " + fmt("%.4f", f.slope));
    for (double n : {10.0, 20.0, 50.0, 100.0}) {
      const double ref = static_threshold(Scheme::Pdd, StaticVariant::None, n, f.level);
      ck.expect(rel_err(f.model(n), ref) <= 0.25, tag + " line at N=" + fmt("%g", n) + " " + fmt("%.4f", f.model(n)));
    }
    if (f.level == 1e-3) {
      for (std::size_t i = 0; i < f.n_values.size(); ++i) {
        if (f.n_values[i] == 10.0) {
          ck.expect(rel_err(f.thresholds[i], 0.108) <= 0.2, "pdd spot N=10 " + fmt("%.4f", f.thresholds[i]));
          ck.note("pdd N=10 " + fmt("%.4f", f.thresholds[i]));
        }
        if (f.n_values[i] == 100.0) {
          ck.expect(rel_err(f.thresholds[i], 1.008) <= 0.2, "pdd spot N=100 " + fmt("%.4f", f.thresholds[i]));
          ck.note("pdd N=100 " + fmt("%.4f", f.thresholds[i]));
        }
      }
    }
  }

  const auto cdd = run(Scheme::Cdd, StaticVariant::None, {10, 20, 50, 100}, {0, 0.03, 0.1, 0.3, 1, 2, 4}, "cdd");
  for (const auto& f : cdd.fits) {
    const double ref = static_threshold(Scheme::Cdd, StaticVariant::None, 1.0, f.level);
    ck.expect(rel_err(f.slope, ref) <= 0.25, "cdd " + fmt("%.0e", f.level) + " sqrt coefficient " + fmt("%.4f", f.slope));
    ck.note("cdd " + fmt("%.0e", f.level) + " " + fmt("%.3f", f.slope));
  }

  const auto mlb = run(Scheme::Mlcdd, StaticVariant::BField, {10, 20, 50, 100}, {0, 0.3, 1, 3, 10, 30}, "mlcdd_bfield");
  for (const auto& f : mlb.fits) {
    const double ref = static_threshold(Scheme::Mlcdd, StaticVariant::BField, 100.0, f.level) -
                       static_threshold(Scheme::Mlcdd, StaticVariant::BField, 99.0, f.level);
    ck.expect(rel_err(f.slope, ref) <= 0.25, "mlcdd b-field " + fmt("%.0e", f.level) + " slope " + fmt("%.4f", f.slope));
  }

  const auto mlc = run(Scheme::Mlcdd, StaticVariant::ControlField, {10, 20, 50, 100},
                       {0, 0.001, 0.003, 0.01, 0.03, 0.1}, "mlcdd_control");
  for (const auto& f : mlc.fits) {
    const double ref = static_threshold(Scheme::Mlcdd, StaticVariant::ControlField, 0.0, f.level);
    ck.expect(rel_err(f.intercept, ref) <= 0.25,
              "mlcdd control-field " + fmt("%.0e", f.level) + " level " + fmt("%.4f", f.intercept));
  }
}

void criterion_monte_carlo(Context& ctx, Checks& ck) {
  struct Case {
    Scheme scheme;
    std::vector<double> n;
  };
  const std::vector<Case> cases{{Scheme::Pdd, {2, 5, 10, 20}}, {Scheme::Cdd, {2, 5, 10, 20}}, {Scheme::Mlcdd, {5, 10, 20, 40}}};
  std::vector<std::vector<double>> rows;
  for (double t2 : {2e-3, 12e-3}) {
    for (const auto& c : cases) {
      for (double n : c.n) {
        SimulationScenario s;
        s.scheme = c.scheme;
        if (c.scheme == Scheme::Pdd) s.num_pulses = static_cast<int>(n);
        else s.rotations = n;
        s.ensemble = ctx.opt.ensemble;
        s.seed = ctx.opt.seed;
        s.jobs = ctx.opt.jobs;
        SimulationScenario quiet = s;
        s.dephasing.t2 = t2;
        // The noise-free residual of the scheme is not part of the dephasing model.
        const double baseline = run_gate(quiet).mean_infidelity;
        const GateRunResult mc = run_gate(s);
        const double analytic = analytic_infidelity(s);
        const double excess = mc.mean_infidelity - baseline;
        const double band = 3.0 * mc.stderr_infidelity;
        const bool ok = excess >= 0.5 * analytic - band && excess <= 2.0 * analytic + band;
        ck.expect(ok, to_string(c.scheme) + " N=" + fmt("%g", n) + " T2=" + fmt("%g", t2 * 1e3) + "ms ratio " +
                          fmt("%.2f", excess / analytic));
        rows.push_back({static_cast<double>(static_cast<int>(c.scheme)), n, t2, mc.mean_infidelity, mc.stderr_infidelity,
                        baseline, analytic});
      }
    }
  }
  ctx.emit("monte_carlo_vs_analytic.csv",
           {"scheme", "n", "t2", "mean_infidelity", "stderr", "noise_free", "analytic"}, rows,
           {"scheme: 1 pdd, 2 cdd, 3 mlcdd"});
}

void criterion_rotary_echo(Context& ctx, Checks& ck) {
  double value[2];
  double err[2];
  const int flips[2] = {0, 32};
  for (int k = 0; k < 2; ++k) {
    SimulationScenario s;
    s.scheme = Scheme::Cdd;
    s.rotations = 10.0;
    s.carrier_flips = flips[k];
    s.amplitude.params = {1.0, 1e-2};  // quasi-static: correlation time far beyond the gate
    s.ensemble = ctx.opt.ensemble;
    s.seed = ctx.opt.seed;
    s.jobs = ctx.opt.jobs;
    const auto r = run_gate(s);
    value[k] = r.mean_infidelity;
    err[k] = r.stderr_infidelity;
  }
  const double ratio = value[0] / value[1];
  ck.expect(ratio >= 10.0, "reduction " + fmt("%.1f", ratio));
  ck.note("no flips " + fmt("%.2e", value[0]) + ", 32 flips " + fmt("%.2e", value[1]) + ", reduction " +
          fmt("%.3g", ratio));
  ctx.emit("rotary_echo.csv", {"flips", "mean_infidelity", "stderr"},
           {{0.0, value[0], err[0]}, {32.0, value[1], err[1]}});
}

void criterion_heating(Context& ctx, Checks& ck) {
  const ModulationBase base = heating_base();
  const double tau0 = kTwoPi / base.delta0;
  std::vector<ModulationSequence> seqs{ModulationSequence::primitive(base, tau0)};
  std::vector<std::string> labels{"primitive"};
  for (double r : {0.4, 0.2, 0.06}) {
    const auto& o = optimized(ctx, r);
    ck.expect(o.feasible, "optimizer infeasible at R_heat " + fmt("%g", r));
    seqs.push_back(o.sequence);
    labels.push_back("optimized " + fmt("%g", r));
  }
  const auto entries = run_heating_scan(seqs, labels, kHeatingRate, kHeatingEta, tau0);
  std::vector<std::vector<double>> rows;
  for (const auto& e : entries) {
    ck.expect(rel_err(e.simulated, e.predicted) <= 0.1,
              e.label + " simulated " + fmt("%.4f", e.simulated) + " vs " + fmt("%.4f", e.predicted));
    rows.push_back({e.r_heat, e.r_time, e.simulated, e.predicted});
  }
  ck.expect(rel_err(entries[0].simulated, 0.024) <= 0.1, "primitive " + fmt("%.4f", entries[0].simulated));
  ck.note("primitive " + fmt("%.4f", entries[0].simulated));
  ctx.emit("heating.csv", {"r_heat", "r_time", "simulated", "predicted"}, rows);
}

void criterion_frontier(Context& ctx, Checks& ck) {
  std::vector<std::vector<double>> rows;
  double previous = 0.0;
  for (double r : kRHeatSweep) {
    const auto& o = optimized(ctx, r);
    const double model = r_time_model(r);
    ck.expect(o.feasible, "infeasible at R_heat " + fmt("%g", r));
    ck.expect(o.r_time >= model * (1.0 - 1e-6) && o.r_time <= 1.25 * model,
              "R_heat " + fmt("%g", r) + " R_time " + fmt("%.4f", o.r_time) + " vs model " + fmt("%.4f", model));
    ck.expect(o.r_time > previous, "frontier not monotone at R_heat " + fmt("%g", r));
    previous = o.r_time;
    rows.push_back({r, o.report.r_heat, o.r_time, model});
  }
  const double t04 = optimized(ctx, 0.4).r_time, t006 = optimized(ctx, 0.06).r_time;
  ck.expect(t04 <= 1.25, "R_time(0.4) " + fmt("%.4f", t04));
  ck.expect(t006 <= 3.5, "R_time(0.06) " + fmt("%.4f", t006));
  ck.note("R_time(0.4) " + fmt("%.3f", t04) + ", R_time(0.06) " + fmt("%.3f", t006));
  ctx.emit("optimizer_frontier.csv", {"r_heat_target", "r_heat", "r_time", "r_time_model"}, rows);
}

void criterion_matching(Context& ctx, Checks& ck) {
  ModulationBase base{kTwoPi * 30e3, 0.0, 0.0};
  const double eta = 0.01;
  base.delta0 = 2.0 * eta * base.omega0;
  const double tau0 = kTwoPi / base.delta0;
  ModeSpec mode;
  mode.eta = eta;
  std::vector<std::vector<double>> rows;
  for (int n = 2; n <= 5; ++n) {
    SynthesisTarget t;
    t.target_trajectory = tone_pst(solve_coefficients(n), mode, base, {0.0, tau0, 4000});
    t.base = base;
    t.eta = eta;
    t.kind = ModulationKind::Phase;
    const MatchResult pm = match_target_pst(t);
    t.kind = ModulationKind::Amplitude;
    const MatchResult am = match_target_pst(t);
    double fm_time = 0.0;
    const std::string tag = "N=" + std::to_string(n);
    if (n == 2) {
      t.kind = ModulationKind::Frequency;
      const MatchResult fm = match_target_pst(t);
      fm_time = fm.r_time;
      const double env = am_envelope_residual(am);
      ck.expect(std::abs(pm.r_time - 1.23) <= 0.03, "PM R_time " + fmt("%.4f", pm.r_time));
      ck.expect(std::abs(fm.r_time - 1.23) <= 0.03, "FM R_time " + fmt("%.4f", fm.r_time));
      ck.expect(env < 0.05, "AM envelope residual " + fmt("%.3f", env));
      ck.note("PM " + fmt("%.4f", pm.r_time) + ", FM " + fmt("%.4f", fm.r_time) + ", AM envelope residual " +
              fmt("%.3f", env));
    }
    ck.expect(am.r_time > pm.r_time, tag + " AM " + fmt("%.3f", am.r_time) + " <= PM " + fmt("%.3f", pm.r_time));
    rows.push_back({static_cast<double>(n), pm.r_time, fm_time, am.r_time});
  }
  ctx.emit("chunk_matching.csv", {"n", "r_time_pm", "r_time_fm", "r_time_am"}, rows, {"r_time_fm is 0 where not run"});
}

void criterion_filter_peaks(Context& ctx, Checks& ck) {
  const double wc = kTwoPi * 30e3;
  const double step = 0.01;
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(wc * (0.4 + step * i));
  std::vector<std::vector<double>> rows(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows[i] = {grid[i]};
  for (const auto& [scheme, expected] : {std::pair{Scheme::Cdd, 1.0}, std::pair{Scheme::Mlcdd, 1.0 / std::sqrt(2.0)}}) {
    const FilterFunction f = numeric_filter_function(scheme, wc, 1e-3, grid);
    const auto k = std::max_element(f.values.begin(), f.values.end()) - f.values.begin();
    const double peak = grid[k] / wc;
    ck.expect(std::abs(peak - expected) <= step * (1.0 + 1e-9),
              to_string(scheme) + " peak at " + fmt("%.3f", peak) + " omega_c");
    ck.note(to_string(scheme) + " peak " + fmt("%.2f", peak) + " omega_c");
    for (std::size_t i = 0; i < grid.size(); ++i) rows[i].push_back(f.values[i]);
  }
  ctx.emit("numeric_filter.csv", {"omega", "cdd", "mlcdd"}, rows);
}

void criterion_cat(Context& ctx, Checks& ck) {
  const double omega0 = kTwoPi * 30e3;
  const ModulationBase base{omega0, kTwoPi * 321.0, 0.0};
  const double eta = base.delta0 / (2.0 * omega0);
  const ModulationSequence prim = ModulationSequence::primitive(base, kTwoPi / base.delta0);
  const ModulationSequence robust = robust_pm_sequence(omega0, eta);
  std::vector<double> offsets;
  for (int i = -200; i <= 200; ++i) offsets.push_back(kTwoPi * 0.25 * i);

  struct Expect {
    const char* label;
    const ModulationSequence* seq;
    double hz, tau;
  };
  double curvature[2];
  std::vector<std::vector<double>> rows(offsets.size());
  int k = 0;
  for (const Expect& e : {Expect{"primitive", &prim, 321.0, 3.12e-3}, Expect{"robust", &robust, 264.0, 3.79e-3}}) {
    const auto scan = run_cat_scan(*e.seq, eta, offsets, 0.0);
    const auto best = std::min_element(scan.begin(), scan.end(),
                                       [](const CatPoint& a, const CatPoint& b) { return a.probability < b.probability; });
    const double hz = best->detuning / kTwoPi;
    ck.expect(rel_err(hz, e.hz) <= 0.02, std::string(e.label) + " minimum at " + fmt("%.1f", hz) + " Hz");
    ck.expect(rel_err(e.seq->duration(), e.tau) <= 0.02,
              std::string(e.label) + " duration " + fmt("%.3f", e.seq->duration() * 1e3) + " ms");
    ck.expect(best->probability < 1e-3, std::string(e.label) + " P " + fmt("%.1e", best->probability));
    curvature[k] = cat_curvature(*e.seq, eta, 0.0, kTwoPi * 2.0);
    ck.note(std::string(e.label) + " minimum " + fmt("%.1f", hz) + " Hz");
    for (std::size_t i = 0; i < scan.size(); ++i) {
      if (k == 0) rows[i] = {offsets[i]};
      rows[i].push_back(scan[i].detuning);
      rows[i].push_back(scan[i].probability);
    }
    ++k;
  }
  ck.expect(curvature[1] < curvature[0],
            "curvature robust " + fmt("%.2e", curvature[1]) + " vs primitive " + fmt("%.2e", curvature[0]));
  ctx.emit("cat_scan.csv", {"offset", "detuning_primitive", "p_up_primitive", "detuning_robust", "p_up_robust"}, rows);
}

void criterion_thermal(Context& ctx, Checks& ck) {
  ThermalConfig cfg;
  cfg.jobs = ctx.opt.jobs;
  const double level = 1e-3;
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double angle = kTwoPi * k / 8.0;
    const double r = thermal_contour_radius(false, cfg, 0.0, angle, level, 2.0);
    const double qa = r * std::cos(angle), qs = r * std::sin(angle);
    const double hot = thermal_gate_infidelity(true, cfg, 5.0, qa, qs);
    worst = std::max(worst, hot);
    ck.expect(hot < level, "hot robust " + fmt("%.2e", hot) + " on ray " + std::to_string(k));
    rows.push_back({angle, r, hot});
  }
  ck.note("worst hot robust infidelity on the cold primitive contour " + fmt("%.2e", worst));
  ctx.emit("thermal_contours.csv", {"angle", "primitive_cold_radius", "robust_hot_infidelity"}, rows,
           {"radius in units of delta0 in the (qubit shift, motional shift) plane"});
}

void criterion_dag(Context& ctx, Checks& ck) {
  const std::vector<std::pair<CalPreset, CalMetrics>> expected{{CalPreset::Pdd, {12, 12, 10}},
                                                               {CalPreset::Cdd, {12, 10, 8}},
                                                               {CalPreset::CddTable, {12, 12, 10}},
                                                               {CalPreset::Mlcdd, {22, 20, 14}}};
  std::vector<std::vector<double>> rows;
  for (const auto& [preset, want] : expected) {
    const CalGraph g = build_preset(preset);
    const CalMetrics m = metrics(g);
    ck.expect(m == want, to_string(preset) + " metrics (" + std::to_string(m.nodes) + "," + std::to_string(m.strong) +
                             "," + std::to_string(m.weak) + ")");
    ck.expect(g.is_acyclic(), to_string(preset) + " has a cycle");
    rows.push_back({static_cast<double>(static_cast<int>(preset)), double(m.nodes), double(m.strong), double(m.weak)});
  }
  ctx.emit("dag_metrics.csv", {"preset", "nodes", "strong", "weak"}, rows, {"preset: 0 pdd, 1 cdd, 2 cdd-table, 3 mlcdd"});
}

void criterion_properties(Context& ctx, Checks& ck) {
  // Norm and trace conservation on the dense Hamiltonian.
  {
    HamiltonianParams p;
    p.omega0 = kTwoPi * 30e3;
    p.delta = 2.0 * p.eta * p.omega0;
    p.omega_c = 10.0 * p.delta;
    p.fock_cutoff = 10;
    const SpaceSpec space = space_for(Scheme::Cdd, p);
    const double tau = kTwoPi / p.delta;
    Vec psi = Vec::Zero(space.dim());
    psi(3 * space.fock_cutoff) = 1.0;
    const HamiltonianFn h = [&](double t) { return build_hamiltonian(Scheme::Cdd, p, t); };
    const TimeGrid grid{0.0, tau, 4000};
    const auto ev = evolve_unitary(h, QuantumState::ket(psi), grid);
    double worst = 0.0;
    for (const auto& s : ev.states) worst = std::max(worst, std::abs(s.data.norm() - 1.0));
    ck.expect(worst <= 1e-8, "ket norm drift " + fmt("%.1e", worst));

    const Mat a = ops::kron(ops::identity(space.spin_dim()), ops::annihilation(space.fock_cutoff));
    const std::vector<CollapseOp> heat{{a, 200.0}, {a.adjoint(), 200.0}};
    const auto lv = evolve_lindblad(h, heat, QuantumState::ket(psi), {0.0, tau, 2000});
    double trace = 0.0;
    for (const auto& s : lv.states) trace = std::max(trace, std::abs(s.data.trace() - cplx(1.0)));
    ck.expect(trace <= 1e-10, "density trace drift " + fmt("%.1e", trace));
    ck.note("norm drift " + fmt("%.1e", worst) + ", trace drift " + fmt("%.1e", trace));
  }
  // Seed determinism independent of the worker count.
  {
    SimulationScenario s;
    s.scheme = Scheme::Pdd;
    s.num_pulses = 4;
    s.dephasing.t2 = 2e-3;
    s.ensemble = 16;
    s.seed = ctx.opt.seed;
    s.jobs = 1;
    const double a = run_gate(s).mean_infidelity;
    s.jobs = 4;
    const double b = run_gate(s).mean_infidelity;
    const double c = run_gate(s).mean_infidelity;
    ck.expect(a == b && b == c, "Monte-Carlo result depends on jobs or run");
    const TimeGrid g{0.0, 1e-3, 100};
    ck.expect(sample_ou({1e-3, 1.0}, g, 7).samples == sample_ou({1e-3, 1.0}, g, 7).samples, "OU sampling not reproducible");
  }
  // Mirror symmetry of the optimizer output closes the path.
  {
    const auto& o = optimized(ctx, 0.4);
    ck.expect(o.report.closure < 1e-10, "optimizer closure " + fmt("%.1e", o.report.closure));
  }
  // Quadratic detuning sensitivity against a second difference of alpha(tau).
  {
    const ModulationBase base = heating_base();
    ModeSpec mode;
    mode.eta = kHeatingEta;
    for (const ModulationSequence& seq :
         {ModulationSequence::primitive(base, kTwoPi / base.delta0), robust_pm_sequence(base.omega0, kHeatingEta)}) {
      const cplx q = quadratic_sensitivity(seq, mode).total();
      const double h = base.delta0 * 1e-3;
      auto end = [&](double d) {
        ModeSpec m = mode;
        m.detuning_offset = d;
        return pst_integrals(seq, m).alpha_end;
      };
      const cplx fd = (end(h) - 2.0 * end(0.0) + end(-h)) / (h * h);
      const double err = std::abs(q - fd) / std::abs(fd);
      ck.expect(err <= 0.01, "quadratic sensitivity error " + fmt("%.1e", err));
    }
  }
  // Multi-tone constraints and monotone trade-off.
  {
    double worst = 0.0, prev_heat = 2.0, prev_time = 0.0;
    bool monotone = true;
    for (int n = 2; n <= 16; ++n) {
      const ToneSet t = solve_coefficients(n);
      worst = std::max({worst, t.norm_residual(), t.mean_residual()});
      const ToneMetrics m = tone_metrics(t);
      monotone = monotone && m.r_heat < prev_heat && m.r_time > prev_time;
      prev_heat = m.r_heat;
      prev_time = m.r_time;
    }
    ck.expect(worst < 1e-9, "tone constraint residual " + fmt("%.1e", worst));
    ck.expect(monotone, "R_heat / R_time not monotone in N");
  }
  // Invalidation follows strong edges transitively.
  {
    for (CalPreset p : {CalPreset::Pdd, CalPreset::Cdd, CalPreset::Mlcdd}) {
      const CalGraph g = build_preset(p);
      const auto order = g.topological_order();
      auto pos = [&](const std::string& n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
      for (const auto& e : g.edges()) {
        ck.expect(pos(e.parent) < pos(e.child), "topological order violates " + e.parent + " -> " + e.child);
        if (e.strength != Dependency::Strong) continue;
        const auto parent = invalidate(g, e.parent), child = invalidate(g, e.child);
        ck.expect(std::includes(parent.begin(), parent.end(), child.begin(), child.end()),
                  "invalidation not monotone along " + e.parent + " -> " + e.child);
      }
    }
  }
}

void criterion_spectator(Context& ctx, Checks& ck) {
  struct Case {
    double gradient;
    bool com;
    double expected;
  };
  std::vector<std::vector<double>> rows;
  for (const Case& c : {Case{25.0, true, 2e-7}, Case{25.0, false, 2e-5}, Case{150.0, true, 7e-6}, Case{150.0, false, 7e-4}}) {
    SpectatorConfig cfg;
    cfg.gradient = c.gradient;
    cfg.gate_on_com = c.com;
    const SpectatorResult r = spectator_mode_bound(cfg);
    const double decades = std::abs(std::log10(r.bound / c.expected));
    const std::string tag = fmt("%g", c.gradient) + " T/m " + (c.com ? "com" : "str");
    ck.expect(decades <= 1.0, tag + " bound " + fmt("%.1e", r.bound) + " vs " + fmt("%.0e", c.expected));
    rows.push_back({c.gradient, c.com ? 1.0 : 0.0, r.eta_gate, r.eta_spectator, r.alpha_max, r.n_bar, r.bound});
  }
  ctx.emit("spectator_bound.csv", {"gradient", "gate_on_com", "eta_gate", "eta_spectator", "alpha_max", "n_bar", "bound"},
           rows);
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Context&, Checks&);
};

const Criterion kCriteria[] = {
    {1, "multi-tone coefficient table", criterion_tone_table},
    {2, "two-tone interference", criterion_two_tone},
    {3, "static shift models", criterion_static},
    {4, "analytic vs Monte-Carlo dephasing", criterion_monte_carlo},
    {5, "rotary echoes", criterion_rotary_echo},
    {6, "heating cross-check", criterion_heating},
    {7, "optimizer frontier", criterion_frontier},
    {8, "chunk matching", criterion_matching},
    {9, "numeric filter peaks", criterion_filter_peaks},
    {10, "cat scans", criterion_cat},
    {11, "thermal comparison", criterion_thermal},
    {12, "calibration graph metrics", criterion_dag},
    {13, "property suite", criterion_properties},
    {14, "spectator mode bound", criterion_spectator},
};

}  // namespace

bool is_known_deviation(int id) { return id == 1 || id == 3 || id == 4 || id == 8 || id == 14; }

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, void (*report)(const CriterionResult&)) {
  Context ctx{opt, {}};
  std::vector<CriterionResult> out;
  for (const Criterion& c : kCriteria) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.known_deviation = is_known_deviation(c.id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Checks ck;
      c.run(ctx, ck);
      r.pass = ck.pass();
      r.detail = ck.detail();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (report) report(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << " " << r.title;
  if (!r.pass && r.known_deviation) os << " [known deviation]";
  os << " (" << fmt("%.1f", r.seconds) << " s)";
  if (!r.detail.empty()) os << " - " << r.detail;
  return os.str();
}

}  // namespace msgate::cli
