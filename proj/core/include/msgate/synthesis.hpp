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
#include <vector>

#include "msgate/common.hpp"
#include "msgate/phase_space.hpp"

namespace msgate {

/// Either a sampled target trajectory (chunk matching) or a heating-robustness
/// target (optimizer). Times are in seconds, `base` holds the primitive drive.
struct SynthesisTarget {
  std::optional<Trajectory> target_trajectory;
  std::optional<double> r_heat;
  ModulationKind kind = ModulationKind::Phase;
  ModulationBase base;
  double eta = 0.01;
  double t_chunk = 0.0;   // 0 selects tau0 / 200
  int segment_count = 0;  // optimizer segments, 0 selects the config value

  double tau0() const { return kTwoPi / base.delta0; }
  void validate() const;
};

struct MatchResult {
  ModulationSequence sequence;
  double r_time = 0.0;
  double max_residual = 0.0;   // worst chunk-end distance to the target, relative to its radius scale
  double closure = 0.0;        // |alpha(tau)| relative to the radius scale
  std::vector<double> envelope;  // per-chunk amplitude fraction (AM) or phase (PM) or detuning (FM)
};

/// Greedy chunk matching for PM and FM: each chunk picks the parameter whose
/// end point lands closest to a later target sample. AM tracks the target's
/// tangent at a fixed detuning with the amplitude set per chunk.
MatchResult match_target_pst(const SynthesisTarget& target);

/// rms of envelope - sin^2(pi t / T) over the chunk midpoints.
double am_envelope_residual(const MatchResult& am);

struct OptimizerConfig {
  int n_segments = 32;
  int max_iterations = 400;   // inner quasi-Newton iterations per outer step
  int outer_iterations = 30;
  int starts = 20;
  double tolerance = 1e-9;
  double closure_weight = 1.0;
  double mean_weight = 1.0;
  double heat_weight = 1.0;
  double mean_square_slack = 1e-3;  // accepted relative excess of <|alpha|^2>/(1/2) over the target
  std::uint64_t seed = 1;
  void validate() const;
};

struct OptimizeResult {
  bool feasible = false;
  std::string message;
  ModulationSequence sequence;
  RobustnessReport report;
  double r_heat_target = 0.0;
  double r_time = 0.0;
  double phase = 0.0;  // Im int alpha^* d alpha of the returned sequence
};

/// Mirror-symmetric PM path maximizing the enclosed area at fixed
/// <|alpha|^2>, rescaled so |Psi| = pi/2.
OptimizeResult optimize_pst(double r_heat, const ModulationBase& base, double eta, const OptimizerConfig& config = {});
OptimizeResult optimize_pst(const SynthesisTarget& target, const OptimizerConfig& config = {});

/// R_time = (2 R_heat)^{-1/2}.
double r_time_model(double r_heat);
/// 1/2 ndot sqrt(R_heat / 2) tau0.
double optimal_heating_infidelity(double r_heat, double heating_rate, double tau0);

}  // namespace msgate
