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
#include <vector>

#include "msgate/common.hpp"
#include "msgate/quantum_core.hpp"

namespace msgate {

/// Structured spin-motion Hamiltonian
///   H = h0 (x) 1 + ha (x) a + ha^dag (x) a^dag + hn (x) a^dag a
/// on spin_dim x fock_cutoff. Kets are stored as fock x spin matrices.
struct SpinMotionTerms {
  Mat h0;
  Mat ha;
  Mat hn;
  bool has_number = false;
};

using TermsFn = std::function<void(double t, SpinMotionTerms& out)>;

/// Instantaneous spin unitary applied when the propagation reaches `time`.
struct SpinEvent {
  double time = 0.0;
  Mat unitary;
};

struct PropagationPlan {
  double t_start = 0.0;
  double t_end = 0.0;
  double max_dt = 0.0;
  std::vector<double> breakpoints;
  std::vector<SpinEvent> events;
};

class SpinMotionPropagator {
 public:
  SpinMotionPropagator(int spin_dim, int fock_cutoff);

  int spin_dim() const { return spin_dim_; }
  int fock_cutoff() const { return fock_; }

  /// out = -i H psi, psi given as a fock x spin matrix.
  void derivative(const SpinMotionTerms& h, const Mat& psi, Mat& out) const;

  /// RK4 with steps aligned to every breakpoint and event.
  Mat propagate(const TermsFn& terms, Mat psi, const PropagationPlan& plan) const;

  /// Master equation with heating channels sqrt(rate) a and sqrt(rate) a^dag.
  /// rho is (spin*fock) square in the standard basis ordering.
  Mat propagate_density(const TermsFn& terms, Mat rho, const PropagationPlan& plan,
                        double heating_rate) const;

  /// Dense operator for cross-checks.
  Operator dense(const SpinMotionTerms& h) const;

  /// Segment boundaries used by propagate (exposed for tests).
  static std::vector<double> step_boundaries(const PropagationPlan& plan);

 private:
  void apply_a(const Mat& psi, Mat& out) const;
  void apply_adag(const Mat& psi, Mat& out) const;
  void density_derivative(const SpinMotionTerms& h, const Mat& rho, double rate, Mat& out) const;

  int spin_dim_;
  int fock_;
  RVec sqrt_n_;  // sqrt(n) for n = 0..fock-1
};

/// Column-major reshape helpers between state vectors and fock x spin matrices.
Mat ket_to_matrix(const Vec& v, int spin_dim, int fock_cutoff);
Vec matrix_to_ket(const Mat& m);

/// Time-dependent sideband coupling g(t) = eta * Omega(t) * exp(i(theta(t) - phi(t)))
/// entering H_MS = (g/2) S a^dag + h.c.
struct SidebandDrive {
  std::function<cplx(double)> coupling;
  std::vector<double> breakpoints;
  double duration = 0.0;
};

SidebandDrive constant_drive(double eta, double omega0, double delta, double duration,
                             double phase = 0.0);

/// Instantaneous rotation exp(-i (pi + eps)/2 n.sigma) on one qubit.
Mat pulse_rotation(double eps, const std::array<double, 3>& axis);

/// Scenario-level description of a gate simulation.
struct GateModel {
  Scheme scheme = Scheme::Primitive;
  int fock_cutoff = 10;
  int num_ions = 2;
  SidebandDrive drive;
  std::vector<double> mode_weights{1.0, 1.0};

  double omega_c = 0.0;               // cdd carrier or mlcdd dressing Rabi frequency
  std::vector<double> carrier_flips;  // rotary echo sign flips of the carrier

  std::vector<double> pulse_times;   // pdd: instantaneous pulses on every ion
  std::vector<Mat> pulse_unitaries;  // optional single-qubit override per pulse

  double static_shift = 0.0;
  ShiftKind shift_kind = ShiftKind::BField;
  std::function<double(int ion, double t)> beta_z;  // rad/s
  std::function<double(double t)> beta_x;           // fractional carrier amplitude noise

  // mlcdd full-term mode
  bool full_terms = false;
  double eta = 0.01;
  double delta_pm = 0.0;
  double nu = 0.0;

  int levels_per_ion() const { return scheme == Scheme::Mlcdd ? 4 : 2; }
  int spin_dim() const;
};

TermsFn make_terms(const GateModel& model);
PropagationPlan make_plan(const GateModel& model, double max_dt);

/// Ideal spin target: Bell state with phase `target_phase`, followed by the
/// ideal pulse train for pdd.
Vec gate_target(const GateModel& model, double target_phase = kPi / 2);

/// Initial ket |down...down>|n>.
Mat initial_ket(const GateModel& model, int n);

struct GateFidelityOptions {
  double max_dt = 0.0;  // 0: choose from the fastest rate in the model
  double n_bar = 0.0;   // thermal average over Fock populations
  double target_phase = kPi / 2;
  double population_floor = 1e-9;  // skip Fock states below this weight
  int jobs = 1;                    // threads over Fock states; the result does not depend on it
};

/// Noise-given gate fidelity (thermal average if n_bar > 0).
double gate_fidelity(const GateModel& model, const GateFidelityOptions& opt = {});

/// Step size resolving the fastest frequency in the model.
double default_max_dt(const GateModel& model);

}  // namespace msgate
