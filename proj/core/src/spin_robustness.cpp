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

#include <cmath>
#include <limits>

#include "msgate/filter.hpp"
#include "msgate/spin_motion.hpp"

namespace msgate {

double dephasing_infidelity(double chi, Scheme scheme) {
  require(chi >= 0.0, "dephasing_infidelity: chi must be >= 0");
  const double weight = scheme == Scheme::Mlcdd ? 1.0 / 3.0 : 0.5;
  return -weight * std::expm1(-chi);
}

PulseErrorResult pulse_error_infidelity(const std::vector<double>& errors, const std::vector<Axis>& axes,
                                        const std::vector<Axis>& ideal_axes) {
  require(errors.size() == axes.size(), "pulse_error_infidelity: one error per axis");
  require(ideal_axes.empty() || ideal_axes.size() == axes.size(),
          "pulse_error_infidelity: one ideal axis per pulse");
  Mat u = ops::identity(2), u0 = ops::identity(2);
  for (std::size_t k = 0; k < errors.size(); ++k) {
    u = pulse_rotation(errors[k], axes[k]) * u;
    u0 = pulse_rotation(0.0, ideal_axes.empty() ? axes[k] : ideal_axes[k]) * u0;
  }
  PulseErrorResult r;
  const cplx overlap = (u0.adjoint() * u).trace();
  r.infidelity = std::max(0.0, 1.0 - std::norm(overlap) / 4.0);
  const cplx den = u.trace() * u0.trace();
  r.trace_ratio = std::abs(den) < 1e-12 ? std::numeric_limits<double>::quiet_NaN()
                                        : std::abs((u * u0).trace() / den);
  return r;
}

double cdd_dephasing_infidelity(const PowerSpectralDensity& psd, double omega_c, double tau) {
  require(omega_c > 0.0, "cdd_dephasing_infidelity: omega_c must be > 0");
  require(tau > 0.0, "cdd_dephasing_infidelity: tau must be > 0");
  return psd(omega_c) * tau / 4.0;
}

double cdd_amplitude_infidelity(const PowerSpectralDensity& psd_x, double omega_c, double tau,
                                const std::optional<PulseSequence>& flips) {
  require(omega_c >= 0.0, "cdd_amplitude_infidelity: omega_c must be >= 0");
  if (omega_c == 0.0) return 0.0;
  const FilterModel f = flips ? pdd_filter_model(*flips, tau) : fid_filter(tau);
  // chi_overlap carries 1/2pi; the 4sin^2 convention needs 1/4pi overall.
  return 0.5 * omega_c * omega_c * chi_overlap(psd_x, f, tau);
}

double cdd_offres_infidelity(double omega_c, double omega0, double nu, std::optional<double> detuning) {
  require(nu > 0.0, "cdd_offres_infidelity: nu must be > 0");
  const double gap = detuning ? *detuning : nu;
  require(gap > 0.0, "cdd_offres_infidelity: detuning must be > 0");
  const double drive = omega_c * omega_c * omega0 * omega0;
  if (drive == 0.0) return 0.0;
  return 1.0 / (1.0 + std::pow(gap, 4) / drive);
}

double mlcdd_dephasing_infidelity(const PowerSpectralDensity& psd, double omega_c, double tau) {
  require(omega_c > 0.0, "mlcdd_dephasing_infidelity: omega_c must be > 0");
  require(tau > 0.0, "mlcdd_dephasing_infidelity: tau must be > 0");
  return psd(omega_c / std::sqrt(2.0)) * tau / 12.0;
}

void SchemeTiming::validate() const {
  require(tau0 > 0.0, "SchemeTiming: tau0 must be > 0");
  require(num_pulses >= 0 && pulse_duration >= 0.0, "SchemeTiming: invalid pulse train");
  if (scheme == Scheme::Cdd) {
    require(omega_c >= 0.0, "SchemeTiming: omega_c must be >= 0");
    require(omega_max > 2.0 * omega_c, "SchemeTiming: omega_max must exceed 2 omega_c");
  }
}

double scheme_gate_duration(const SchemeTiming& t) {
  t.validate();
  switch (t.scheme) {
    case Scheme::Primitive:
    case Scheme::Mlcdd:
      return t.tau0;
    case Scheme::Pdd: {
      const double base = t.phase_assisted ? t.tau0 : 0.5 * kPi * t.tau0;
      return base + t.num_pulses * t.pulse_duration;
    }
    case Scheme::Cdd:
      return t.omega_max / (t.omega_max - 2.0 * t.omega_c) * t.tau0;
  }
  return t.tau0;
}

namespace {

int level_index(double level) {
  const double levels[3] = {1e-2, 1e-3, 1e-4};
  for (int i = 0; i < 3; ++i)
    if (std::abs(level - levels[i]) < 1e-6 * levels[i]) return i;
  throw Error("static_threshold: level must be 1e-2, 1e-3 or 1e-4");
}

}  // namespace

double static_threshold(Scheme scheme, StaticVariant variant, double n, double level) {
  require(n >= 0.0, "static_threshold: N must be >= 0");
  const int k = level_index(level);
  const bool control = variant == StaticVariant::ControlField;
  if (scheme == Scheme::Primitive || (scheme == Scheme::Mlcdd && control)) {
    const double c[3] = {2.8e-2, 0.9e-2, 0.3e-2};
    return c[k];
  }
  require(!control, "static_threshold: control-field variant applies to mlcdd only");
  switch (scheme) {
    case Scheme::Pdd: {
      const double a[3] = {2.8e-2, 0.8e-2, 0.3e-2};
      const double b[3] = {3.2e-2, 1.0e-2, 0.3e-2};
      return a[k] + b[k] * n;
    }
    case Scheme::Cdd: {
      const double c[3] = {0.22, 0.13, 0.07};
      return c[k] * std::sqrt(n);
    }
    case Scheme::Mlcdd: {
      const double a[3] = {-0.33, -0.40, -0.53};
      const double b[3] = {0.30, 0.17, 0.10};
      return std::max(0.0, a[k] + b[k] * n);
    }
    default:
      break;
  }
  throw Error("static_threshold: unsupported scheme");
}

}  // namespace msgate
