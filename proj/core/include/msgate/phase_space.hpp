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

#include <optional>
#include <string>
#include <vector>

#include "msgate/common.hpp"
#include "msgate/noise.hpp"
#include "msgate/quantum_core.hpp"
#include "msgate/spin_motion.hpp"

namespace msgate {

enum class ModulationKind { Phase, Frequency, Amplitude, Composite };
std::string to_string(ModulationKind k);
ModulationKind parse_modulation_kind(const std::string& s);

/// Constant-parameter segment. `phase` is added to the base phase, `detuning`
/// is absolute (rad/s) and `amplitude` is the fraction of the base Rabi frequency.
struct Segment {
  double duration = 0.0;
  double phase = 0.0;
  double detuning = 0.0;
  double amplitude = 1.0;
};

struct ModulationBase {
  double omega0 = 0.0;  // sideband Rabi frequency, rad/s
  double delta0 = 0.0;  // bichromatic detuning, rad/s
  double phi0 = 0.0;    // sideband phase
};

struct ModulationSequence {
  ModulationKind kind = ModulationKind::Phase;
  ModulationBase base;
  std::vector<Segment> segments;

  double duration() const;
  void validate() const;

  /// Single segment at the base parameters.
  static ModulationSequence primitive(const ModulationBase& base, double duration);
  /// Equal-duration segments with the given phases (relative to phi0).
  static ModulationSequence phase_modulated(const ModulationBase& base, double duration,
                                            const std::vector<double>& phases);
};

/// Motional mode seen by the gate. The mode detuning is the sequence detuning
/// plus `detuning_offset` (zero for the gate mode).
struct ModeSpec {
  double eta = 0.01;  // Lamb-Dicke parameter
  double detuning_offset = 0.0;
  double n_bar = 0.0;
  void validate() const;
  double thermal_factor() const { return 2.0 * (n_bar + 0.5); }
};

/// Segment-exact integrals over [0, tau] of alpha(t).
struct PstIntegrals {
  double duration = 0.0;
  cplx alpha_end{0.0, 0.0};
  cplx int_alpha{0.0, 0.0};   // int alpha dt
  double int_abs2 = 0.0;      // int |alpha|^2 dt
  cplx int_t_alpha{0.0, 0.0}; // int t alpha dt
  double area_phase = 0.0;    // Im int alpha^* d alpha
};

struct Trajectory {
  std::vector<double> times;
  std::vector<cplx> alpha;
  ModeSpec mode;
  std::optional<PstIntegrals> exact;
};

struct RobustnessReport {
  double closure = 0.0;       // |alpha(tau)|^2
  cplx mean_position{0.0};    // (1/tau) int alpha dt
  double mean_square = 0.0;   // (1/tau) int |alpha|^2 dt
  double r_heat = 0.0;
  double r_time = 0.0;
  double r_heat_scaled = 0.0;
  bool degenerate = false;    // zero-amplitude sequence
};

/// alpha(t) = eta int_0^t Omega(t') e^{i theta(t')} e^{-i phi(t')} dt', theta = int delta.
PstIntegrals pst_integrals(const ModulationSequence& mod, const ModeSpec& mode);
cplx pst_at(const ModulationSequence& mod, const ModeSpec& mode, double t);
Trajectory compute_pst(const ModulationSequence& mod, const ModeSpec& mode, const TimeGrid& grid);

/// Uses the exact integrals when present, composite Simpson on the samples otherwise.
RobustnessReport robustness_report(const Trajectory& traj, double tau0);

enum class HeatingOrder { Exact, Linear };
double heating_infidelity(double mean_square, double heating_rate, double tau,
                          HeatingOrder order = HeatingOrder::Exact);

/// 1 - |prod cos(Phi - Psi) (1 - sum_k num_ions |alpha_k(tau)|^2 (n_k + 1/2))|^2.
double pst_infidelity(const std::vector<Trajectory>& modes, const std::vector<double>& target_phases,
                      const std::vector<double>& achieved_phases, int num_ions = 2);

/// Geometric phase Im int alpha^* d alpha of one mode.
double entangling_phase(const ModulationSequence& mod, const ModeSpec& mode);
/// Weighted sum over modes (weights carry the per-pair mode-participation signs).
double entangling_phase(const ModulationSequence& mod, const std::vector<ModeSpec>& modes,
                        const std::vector<double>& weights);

/// Motional filter F_k(w) = (T_k/4) 2 eta^2 |int Omega e^{i(theta - w t)} e^{-i phi} t dt|^2.
double motional_filter(const ModulationSequence& mod, const ModeSpec& mode, double omega);
/// (1/2pi) int S(w) sum_k F_k(w) dw.
double motional_dephasing_infidelity(const ModulationSequence& mod, const std::vector<ModeSpec>& modes,
                                     const PowerSpectralDensity& psd);

struct QuadraticSensitivity {
  cplx end_term{0.0};      // -tau^2 alpha(tau)
  cplx mean_term{0.0};     // 2 tau alpha_av(tau)
  cplx integral_term{0.0}; // -2 int alpha_av(t) dt
  cplx total() const { return end_term + mean_term + integral_term; }
};
QuadraticSensitivity quadratic_sensitivity(const ModulationSequence& mod, const ModeSpec& mode);

/// 1/2 (1 - exp(-2 |alpha|^2 (1 + 2 n_bar))).
double cat_probability(cplx alpha, double n_bar);
std::vector<double> cat_probability(const Trajectory& traj, double n_bar);

/// Sideband coupling g(t) = eta Omega(t) e^{i(theta(t) - phi(t))} for the simulator.
SidebandDrive to_drive(const ModulationSequence& mod, double eta);

/// Same sequence with every duration multiplied by `time_scale` and the
/// detunings divided by it: the path keeps its shape, lengths scale by
/// time_scale and Psi by time_scale^2.
ModulationSequence rescale_time(const ModulationSequence& mod, double time_scale);

// JSON / CSV exchange.
std::string modulation_to_json(const ModulationSequence& mod);
ModulationSequence modulation_from_json(const std::string& text);
void save_modulation(const ModulationSequence& mod, const std::string& path);
ModulationSequence load_modulation(const std::string& path);
/// CSV with columns t, re_alpha, im_alpha; `header` lines are written as '# ' comments.
void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const std::vector<std::string>& header = {});

}  // namespace msgate
