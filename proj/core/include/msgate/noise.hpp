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
#include <string>
#include <vector>

#include "msgate/common.hpp"
#include "msgate/quantum_core.hpp"

namespace msgate {

/// Ornstein-Uhlenbeck process parameters. stationary_std is in rad/s for
/// qubit-frequency noise and dimensionless for fractional amplitude noise.
struct OUParams {
  double correlation_time = 1e-3;
  double stationary_std = 0.0;
  void validate() const;
};

/// Two-sided power spectral density S(w) = int <b(0) b(t)> e^{-iwt} dt.
class PowerSpectralDensity {
 public:
  enum class Kind { White, Lorentzian, Tabulated };

  static PowerSpectralDensity white(double level);
  static PowerSpectralDensity lorentzian(const OUParams& p);
  /// Linear interpolation on |w|; zero outside the table.
  static PowerSpectralDensity tabulated(std::vector<double> omega, std::vector<double> values);

  double operator()(double omega) const;
  Kind kind() const { return kind_; }
  const OUParams& ou() const { return ou_; }
  /// Largest tabulated frequency, or infinity for analytic shapes.
  double support() const;
  /// Frequency scale where the spectrum changes shape (0 if featureless).
  double corner() const;

 private:
  Kind kind_ = Kind::White;
  double level_ = 0.0;
  OUParams ou_;
  std::vector<double> omega_, values_;
};

/// S(w) = 2 sigma^2 tau_c / (1 + w^2 tau_c^2).
PowerSpectralDensity ou_psd(const OUParams& p);

/// Two-column CSV (omega [rad/s], S); '#' lines and a non-numeric header are skipped.
PowerSpectralDensity load_psd_csv(const std::string& path);

struct NoiseTrajectory {
  TimeGrid grid;
  std::vector<double> samples;
  std::uint64_t seed = 0;

  /// Linear interpolation; clamps outside the grid.
  double at(double t) const;
};

/// Exact discrete OU update with stationary initialization.
NoiseTrajectory sample_ou(const OUParams& p, const TimeGrid& grid, std::uint64_t seed);

/// Deterministic per-trajectory seed from (master, index) via splitmix64.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Stationary std such that a single spin's free-induction coherence
/// exp(-chi_FID(t)/2) crosses 1/e at t2_target.
OUParams calibrate_to_t2(double t2_target, double correlation_time);

}  // namespace msgate
