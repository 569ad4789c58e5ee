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

#include <string>
#include <vector>

#include "msgate/common.hpp"
#include "msgate/phase_space.hpp"
#include "msgate/quantum_core.hpp"
#include "msgate/spin_motion.hpp"

namespace msgate {

/// Multi-tone drive: tone j (1-based) runs at detuning j delta0 with
/// amplitude c_j Omega0.
struct ToneSet {
  int n = 1;
  std::vector<double> c{1.0};
  double lambda = 0.0;
  double b = 0.0;

  /// |sum c_j^2 / j - 1| and |sum c_j / j|.
  double norm_residual() const;
  double mean_residual() const;
  void validate() const;
};

/// Optimal coefficients for 1 <= n <= 16: c_j = 4 j b / (1 - j lambda) with
/// lambda the root of sum 1/(1 - j lambda) in (1/n, 1/(n-1)).
ToneSet solve_coefficients(int n);

struct ToneMetrics {
  double r_heat_formula = 0.0;   // 1/2 sum c_j^2 / j^2
  double r_heat_integral = 0.0;  // <|alpha|^2> / (1/2) over one period
  double r_heat = 0.0;           // integral value (differs from the formula only at n = 1)
  double r_time = 0.0;           // max |f_N|
  double r_heat_scaled = 0.0;    // r_heat * r_time
};

/// f_N(x) = sum c_j e^{i j x} with x = delta0 t.
cplx tone_signal(const ToneSet& tones, double x);
/// Dense sampling of |f_N| over one period followed by golden-section refinement.
double tone_peak(const ToneSet& tones, int samples = 10000);
ToneMetrics tone_metrics(const ToneSet& tones, int samples = 10000);

/// Segment-exact integrals of the superposed trajectory over [0, tau].
PstIntegrals tone_pst_integrals(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base, double tau);
cplx tone_pst_at(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base, double t);
/// alpha(t) = sum_j eta c_j Omega0 (e^{i j delta0 t} - 1) / (i j delta0).
Trajectory tone_pst(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base, const TimeGrid& grid);

/// Simulator drive for the multi-tone gate of duration 2 pi / delta0.
SidebandDrive tone_drive(const ToneSet& tones, const ModulationBase& base, double eta);

struct ToneTableRow {
  int n = 0;
  ToneSet tones;
  ToneMetrics metrics;
};
std::vector<ToneTableRow> tone_table(int max_n = 5);

}  // namespace msgate
