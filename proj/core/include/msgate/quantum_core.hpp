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

#include <functional>
#include <string>
#include <vector>

#include "msgate/common.hpp"

namespace msgate {

/// Composite space: levels_per_ion^num_ions spin states times a truncated Fock
/// space. Basis index = spin_index * fock_cutoff + n, ion 0 most significant.
struct SpaceSpec {
  int num_ions = 2;
  int levels_per_ion = 2;
  int fock_cutoff = 12;

  int spin_dim() const;
  int dim() const { return spin_dim() * fock_cutoff; }
  void validate() const;
};

using Operator = Mat;

struct QuantumState {
  enum class Kind { Ket, Density };
  Kind kind = Kind::Ket;
  Mat data;  // n x 1 for kets, n x n for density matrices

  static QuantumState ket(const Vec& v);
  static QuantumState density(const Mat& rho);
  int dim() const { return static_cast<int>(data.rows()); }
  Mat density_matrix() const;
  /// Throws if the normalization, hermiticity or positivity tolerances fail.
  void validate(double tol = 1e-10) const;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int num_steps = 2;

  int size() const { return num_steps + 1; }
  double dt() const { return (t_end - t_start) / num_steps; }
  double at(int i) const { return t_start + i * dt(); }
  void validate() const;
};

struct ThermalState {
  QuantumState state;
  double leakage = 0.0;  // population beyond the cutoff
  std::vector<double> populations;
};

/// Thermal occupation p(n) = n^n/(n+1)^(n+1), renormalized on the truncated space.
ThermalState thermal_state(double n_bar, int cutoff, bool allow_leakage = false);

/// Smallest cutoff (at least `minimum`) with thermal leakage below `leakage_tol`.
int default_fock_cutoff(double n_bar, double leakage_tol = 1e-6, int minimum = 12);

namespace ops {
Mat sigma_x();
Mat sigma_y();
Mat sigma_z();
Mat identity(int n);
Mat annihilation(int cutoff);
Mat kron(const Mat& a, const Mat& b);
/// Places a single-ion operator on `ion` within the spin register.
Mat on_ion(const Mat& single, int ion, int num_ions);
/// Sum over ions of weights[i] * single on ion i.
Mat collective(const Mat& single, int num_ions, const std::vector<double>& weights = {});
/// Single-ion projector |i><j| in a `levels`-dimensional space.
Mat ket_bra(int levels, int i, int j);
}  // namespace ops

/// Per-ion qubit embedding: 2-level ions use |up> = 0, |down> = 1; 4-level ions
/// use |down> = |0'> and |up> = |D> = (|-1> + |+1>)/sqrt(2).
namespace levels {
inline constexpr int kZero = 0;
inline constexpr int kMinus = 1;
inline constexpr int kZeroPrime = 2;
inline constexpr int kPlus = 3;
Vec qubit_up(int levels_per_ion);
Vec qubit_down(int levels_per_ion);
}  // namespace levels

enum class Scheme { Primitive, Pdd, Cdd, Mlcdd };
Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme s);

enum class ShiftKind { BField, ControlField };

/// Parameters for the dense Hamiltonian builder. Frequencies in rad/s.
struct HamiltonianParams {
  double eta = 0.01;          // Lamb-Dicke parameter
  double omega0 = 0.0;        // sideband Rabi frequency (MS Rabi frequency for mlcdd)
  double delta = 0.0;         // bichromatic detuning
  double phase = 0.0;         // sideband phase
  double omega_c = 0.0;       // carrier / dressing drive
  double static_shift = 0.0;  // qubit frequency shift
  ShiftKind shift_kind = ShiftKind::BField;
  std::vector<double> mode_weights{1.0, 1.0};
  int fock_cutoff = 12;
  int num_ions = 2;
  bool full_terms = false;  // mlcdd: keep terms rotating at dw_pm and nu
  double delta_pm = 0.0;    // second-order Zeeman splitting of the rf transitions
  double nu = 0.0;          // secular frequency
};

SpaceSpec space_for(Scheme scheme, const HamiltonianParams& p);

/// Interaction-picture Hamiltonian (hbar = 1) at time t on space_for(scheme, p).
Operator build_hamiltonian(Scheme scheme, const HamiltonianParams& p, double t);

using HamiltonianFn = std::function<Operator(double)>;

struct IntegratorOptions {
  int substeps = 1;              // RK4 steps per grid interval
  std::vector<double> breakpoints;  // extra step boundaries (discontinuities)
  bool richardson_check = false;
};


struct EvolutionResult {
  std::vector<QuantumState> states;  // one per grid point
  double richardson_error = 0.0;     // max state difference vs. half step, if requested
};

/// Fixed-step classical RK4 (order 4) Schrödinger propagation.
EvolutionResult evolve_unitary(const HamiltonianFn& h, const QuantumState& psi0,
                               const TimeGrid& grid, const IntegratorOptions& opt = {});

struct CollapseOp {
  Operator op;
  double rate = 0.0;
};

/// RK4 master-equation propagation; the state is re-symmetrized every step.
EvolutionResult evolve_lindblad(const HamiltonianFn& h, const std::vector<CollapseOp>& collapse,
                                const QuantumState& rho0, const TimeGrid& grid,
                                const IntegratorOptions& opt = {});

/// |Phi> = cos(psi/2)|dd> + i sin(psi/2)|uu> on the spin register.
Vec bell_target(double target_phase, int levels_per_ion = 2);

/// Reduced two-ion spin state (oscillator traced out when fock_cutoff > 1).
Mat reduced_spin_state(const QuantumState& state, int spin_dim, int fock_cutoff);

/// F = <Phi|rho_spin|Phi>. `fock_cutoff` is 1 for spin-only states.
double bell_fidelity(const QuantumState& state, double target_phase, int levels_per_ion = 2,
                     int fock_cutoff = 1);

/// Overlap with an arbitrary spin target vector.
double spin_fidelity(const QuantumState& state, const Vec& spin_target, int fock_cutoff);

}  // namespace msgate
