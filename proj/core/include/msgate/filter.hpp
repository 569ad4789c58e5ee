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

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "msgate/common.hpp"
#include "msgate/noise.hpp"
#include "msgate/quantum_core.hpp"

namespace msgate {

using Axis = std::array<double, 3>;

/// Pulse train inside a window of length tau: pulse centers at timings[j] * tau.
struct PulseSequence {
  std::vector<double> timings;  // normalized, strictly increasing, in (0, 1)
  double pulse_duration = 0.0;  // seconds
  std::vector<Axis> axes;       // optional, one per pulse

  int num_pulses() const { return static_cast<int>(timings.size()); }
  void validate() const;

  /// Free evolution (no pulses).
  static PulseSequence fid();
  /// Pulses at j/segments for j = 1..segments-1 (equal free segments).
  static PulseSequence periodic(int segments, double pulse_duration = 0.0);
  /// Carr-Purcell timings (j - 1/2)/n for j = 1..n.
  static PulseSequence cpmg(int n, double pulse_duration = 0.0);
};

/// Sampled filter function.
struct FilterFunction {
  std::vector<double> omega;
  std::vector<double> values;
};

/// Analytic filter F(w). `bandwidth` is the highest frequency with structure,
/// `features` are frequencies that quadrature panels should straddle, and
/// `mean_value` is the average of F over fast oscillations (used for the tail).
struct FilterModel {
  std::function<double(double)> value;
  double tau = 0.0;
  double bandwidth = 0.0;
  std::vector<double> features;
  double mean_value = 0.0;

  double operator()(double w) const { return value(w); }
  /// F(w)/w^2 with the w -> 0 limit taken from the quadratic series.
  double over_omega2(double w) const;
};

FilterModel fid_filter(double tau);
FilterModel pdd_filter_model(const PulseSequence& seq, double tau);
FilterFunction pdd_filter(const PulseSequence& seq, double tau, const std::vector<double>& omega);
FilterFunction sample(const FilterModel& f, const std::vector<double>& omega);

/// Rotating-frame sinc filter of a continuous drive of Rabi frequency `center`:
/// F(w) = (w^2/2) (|K(w - center)|^2 + |K(w + center)|^2), K(x) = int_0^tau e^{ixt} dt.
FilterModel continuous_drive_filter(double center, double tau);

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double upper_cutoff = 0.0;  // 0: automatic
  int max_depth = 6;
};

/// chi = (1/2pi) int_{-inf}^{inf} S(w) F(w)/w^2 dw.
double chi_overlap(const PowerSpectralDensity& psd, const FilterModel& filter, double tau,
                   const QuadratureOptions& opt = {});
/// Trapezoidal overlap on the sampled grid (nothing is assumed beyond it).
double chi_overlap(const PowerSpectralDensity& psd, const FilterFunction& filter, double tau);

/// 1/2 (1 - e^{-chi}) for two-level schemes, 1/3 (1 - e^{-chi}) for mlcdd.
double dephasing_infidelity(double chi, Scheme scheme);

struct PulseErrorResult {
  double infidelity = 0.0;   // 1 - |Tr(U0^dag U)|^2 / d^2
  double trace_ratio = 0.0;  // Tr(U U0) / (Tr U Tr U0); NaN when a trace vanishes
};

/// U = prod_k exp(-i (pi + eps_k) n_k.sigma/2); the ideal U0 uses eps = 0 and
/// `ideal_axes` (default: the same axes).
PulseErrorResult pulse_error_infidelity(const std::vector<double>& errors, const std::vector<Axis>& axes,
                                        const std::vector<Axis>& ideal_axes = {});

/// Delta-function approximation S_z(Omega_c) tau / 4.
double cdd_dephasing_infidelity(const PowerSpectralDensity& psd, double omega_c, double tau);

/// (Omega_c^2/4pi) int S_x F_x / w^2 over the full line, F_x = FID or the flip-sequence filter.
double cdd_amplitude_infidelity(const PowerSpectralDensity& psd_x, double omega_c, double tau,
                                const std::optional<PulseSequence>& flips = std::nullopt);

/// (1 + nu^4 / (Omega_c^2 Omega_0^2))^-1; pass `detuning` to replace nu by delta.
double cdd_offres_infidelity(double omega_c, double omega0, double nu,
                             std::optional<double> detuning = std::nullopt);

/// S_z(Omega_c / sqrt 2) tau / 12.
double mlcdd_dephasing_infidelity(const PowerSpectralDensity& psd, double omega_c, double tau);

struct SchemeTiming {
  Scheme scheme = Scheme::Pdd;
  double tau0 = 1e-3;
  int num_pulses = 0;
  double pulse_duration = 0.0;
  bool phase_assisted = false;  // pdd: tau0 + N tau_pi instead of the flower duration
  double omega_c = 0.0;
  double omega_max = 0.0;
  void validate() const;
};

double scheme_gate_duration(const SchemeTiming& timing);

enum class StaticVariant { None, BField, ControlField };

/// Fitted static-shift tolerance delta_omega / delta_0 at infidelity `level`.
double static_threshold(Scheme scheme, StaticVariant variant, double n, double level);

enum class NoiseChannel { Dephasing, Amplitude };

struct NumericFilterOptions {
  NoiseChannel channel = NoiseChannel::Dephasing;
  double amplitude = 0.0;       // injected noise amplitude; 0: automatic
  double quadratic_tol = 0.05;  // allowed deviation of I(A)/I(A/2) from 4
  int max_reductions = 8;
  double steps_per_period = 40.0;
};

/// Filter function extracted from single-frequency noise injections on one ion
/// driven by the cdd carrier or the mlcdd dressing field.
FilterFunction numeric_filter_function(Scheme scheme, double omega_c, double tau,
                                       const std::vector<double>& omega,
                                       const NumericFilterOptions& opt = {});

}  // namespace msgate
