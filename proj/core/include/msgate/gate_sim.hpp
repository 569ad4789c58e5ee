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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msgate/common.hpp"
#include "msgate/filter.hpp"
#include "msgate/noise.hpp"
#include "msgate/phase_space.hpp"
#include "msgate/spin_motion.hpp"

namespace msgate {

/// OU noise channel. `t2` > 0 calibrates the stationary std for qubit-frequency
/// noise; otherwise `params.stationary_std` is used as given.
struct OuChannel {
  OUParams params{1e-3, 0.0};
  double t2 = 0.0;
  bool enabled() const { return t2 > 0.0 || params.stationary_std > 0.0; }
  OUParams resolved() const;
};

/// Gate scenario. Frequencies in rad/s, times in seconds.
struct SimulationScenario {
  Scheme scheme = Scheme::Primitive;
  double omega0 = kTwoPi * 30e3;  // sideband Rabi frequency
  double eta = 0.01;              // Lamb-Dicke parameter
  double delta0 = 0.0;            // 0 selects 2 eta omega0
  double nu = kTwoPi * 220e3;     // secular frequency (regime checks, mlcdd full terms)
  double delta_pm = 0.0;          // mlcdd second-order Zeeman splitting
  bool full_terms = false;
  double n_bar = 0.0;
  double heating_rate = 0.0;

  int num_pulses = 0;          // pdd flower pulses (>= 2)
  double rotations = 0.0;      // cdd / mlcdd: omega_c = rotations * delta0
  int carrier_flips = 0;       // cdd rotary echoes: sign flips at tau j / flips
  double static_shift = 0.0;
  ShiftKind shift_kind = ShiftKind::BField;
  double motional_shift = 0.0; // detuning error of every sideband tone

  OuChannel dephasing;  // beta_z per ion, rad/s
  OuChannel amplitude;  // beta_x, fractional carrier noise

  std::optional<ModulationSequence> modulation;  // replaces the constant drive

  int ensemble = 200;
  std::uint64_t seed = 20240607;
  int fock_cutoff = 0;  // 0: chosen from n_bar
  double max_dt = 0.0;  // 0: resolved from the fastest rate
  int jobs = 1;

  double base_detuning() const { return delta0 > 0.0 ? delta0 : 2.0 * eta * omega0; }
  double tau0() const { return kTwoPi / base_detuning(); }
  double omega_c() const { return rotations * base_detuning(); }
  bool noisy() const { return dephasing.enabled() || amplitude.enabled(); }
  void validate() const;
  /// Regime diagnostics (rotating-wave limit, Fock truncation), never fatal.
  std::vector<std::string> warnings() const;
};

/// Flower timing for n pulses: segment length pi(2 + n)/(n delta) with delta
/// chosen so the enclosed phase is pi/2.
struct FlowerTiming {
  double delta = 0.0;
  double segment = 0.0;
  double duration = 0.0;
};
FlowerTiming flower_timing(int num_pulses, double coupling);

/// Noise-free gate model (drive, pulses, carrier, static shifts) and its duration.
GateModel build_gate_model(const SimulationScenario& s);
double scenario_duration(const SimulationScenario& s);

struct GateRunResult {
  double mean_infidelity = 0.0;
  double stderr_infidelity = 0.0;
  int n_traj = 0;
  double duration = 0.0;
  std::vector<std::string> warnings;
};

/// Monte-Carlo Bell infidelity (single run when the scenario is noise-free).
/// Results depend only on (scenario, seed), not on `jobs`.
GateRunResult run_gate(const SimulationScenario& s);

/// Analytic prediction for the scenario's dominant noise channel.
double analytic_infidelity(const SimulationScenario& s);

struct ScanPoint {
  std::vector<double> axis;
  double mean_infidelity = 0.0;
  double stderr_infidelity = 0.0;
  int n_traj = 1;
};

struct ScanResult {
  std::vector<std::string> axis_names;
  std::vector<ScanPoint> points;
  std::vector<std::string> warnings;
};

struct StaticScanConfig {
  std::vector<double> n_values;      // N_pi (pdd) or Omega_c / delta0 (cdd, mlcdd)
  std::vector<double> shift_values;  // static shift in units of 2 pi / tau_gate
  std::vector<double> levels{1e-2, 1e-3, 1e-4};
  StaticVariant variant = StaticVariant::None;
};

struct ContourFit {
  double level = 0.0;
  std::vector<double> n_values;
  std::vector<double> thresholds;  // units of 2 pi / tau_gate
  bool sqrt_model = false;         // threshold = coefficient sqrt(N)
  double intercept = 0.0;
  double slope = 0.0;              // or the sqrt(N) coefficient
  double model(double n) const { return sqrt_model ? slope * std::sqrt(n) : intercept + slope * n; }
};

struct StaticScanResult {
  ScanResult surface;
  std::vector<ContourFit> fits;
};

/// Noise-free fidelity surface over (N, shift) with contours refined by root
/// finding and fitted per level: linear for pdd and mlcdd, sqrt(N) for cdd.
StaticScanResult scan_static_shift(const SimulationScenario& base, const StaticScanConfig& cfg);
/// Infidelity at a single (N, shift) point of a static scan.
double static_shift_infidelity(const SimulationScenario& base, double n, double shift_units);

struct HeatingEntry {
  std::string label;
  double r_heat = 0.0;
  double r_time = 0.0;
  double simulated = 0.0;
  double predicted = 0.0;
};

/// Lindblad Bell infidelity per sequence against the exact heating model.
std::vector<HeatingEntry> run_heating_scan(const std::vector<ModulationSequence>& sequences,
                                           const std::vector<std::string>& labels, double heating_rate,
                                           double eta, double tau0, int fock_cutoff = 12);

struct ThermalConfig {
  double omega0 = kTwoPi * 30e3;
  double eta = 0.01;
  double rotations = 10.0;  // robust carrier omega_c / delta0
  std::vector<double> qubit_shifts;   // delta_a, units of delta0
  std::vector<double> motion_shifts;  // delta_s, units of delta0
  std::vector<double> n_bars{0.0, 5.0};
  double population_floor = 1e-6;
  int jobs = 1;  // threads over the thermal Fock average
};

struct ThermalSurface {
  std::string label;  // primitive or robust
  double n_bar = 0.0;
  ScanResult surface;
};

/// Robust gate: CDD carrier plus the PM match of the two-tone trajectory.
ModulationSequence robust_pm_sequence(double omega0, double eta);
double thermal_gate_infidelity(bool robust, const ThermalConfig& cfg, double n_bar, double qubit_shift,
                               double motion_shift);
std::vector<ThermalSurface> run_thermal_comparison(const ThermalConfig& cfg);

/// Radius of the `level` contour along direction `angle` in the (delta_a, delta_s) plane.
double thermal_contour_radius(bool robust, const ThermalConfig& cfg, double n_bar, double angle, double level,
                              double max_radius);

struct CatPoint {
  double detuning = 0.0;  // nominal detuning 2 pi / tau plus the scan offset
  double probability = 0.0;
};

/// P_up(delta) for a single-ion sequence with every segment detuning offset.
std::vector<CatPoint> run_cat_scan(const ModulationSequence& seq, double eta, const std::vector<double>& detunings,
                                   double n_bar);
/// Central second difference of P_up at the nominal detuning.
double cat_curvature(const ModulationSequence& seq, double eta, double n_bar, double step);

struct SpectatorConfig {
  double gradient = 25.0;               // T/m
  double nu_com = kTwoPi * 220e3;       // rad/s
  double omega = kTwoPi * 30e3;         // sideband Rabi frequency
  double gamma = kTwoPi * 19.6e6;       // Doppler-limit linewidth
  double sensitivity = kTwoPi * 14e9;   // d omega / d B, rad/s per T
  double mass = 171.0 * 1.66053906660e-27;
  double delta = 0.0;                   // gate detuning, 0 selects 2 eta omega
  bool gate_on_com = true;
};

struct SpectatorResult {
  double eta_gate = 0.0;
  double eta_spectator = 0.0;
  double alpha_max = 0.0;
  double n_bar = 0.0;
  double bound = 0.0;
};

/// Gradient-induced Lamb-Dicke parameter eta = (d omega/dB)(dB/dz) z0 / nu b.
double gradient_lamb_dicke(const SpectatorConfig& cfg, double nu, double participation);
SpectatorResult spectator_mode_bound(const SpectatorConfig& cfg);

}  // namespace msgate
