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

#include "msgate/quantum_core.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "msgate/spin_motion.hpp"

namespace msgate {

int SpaceSpec::spin_dim() const {
  int d = 1;
  for (int i = 0; i < num_ions; ++i) d *= levels_per_ion;
  return d;
}

void SpaceSpec::validate() const {
  require(num_ions >= 1, "SpaceSpec: num_ions must be >= 1");
  require(levels_per_ion == 2 || levels_per_ion == 4, "SpaceSpec: levels_per_ion must be 2 or 4");
  require(fock_cutoff >= 2, "SpaceSpec: fock_cutoff must be >= 2");
}

QuantumState QuantumState::ket(const Vec& v) {
  QuantumState s;
  s.kind = Kind::Ket;
  s.data = v;
  return s;
}

QuantumState QuantumState::density(const Mat& rho) {
  QuantumState s;
  s.kind = Kind::Density;
  s.data = rho;
  return s;
}

Mat QuantumState::density_matrix() const {
  if (kind == Kind::Density) return data;
  return data * data.adjoint();
}

void QuantumState::validate(double tol) const {
  if (kind == Kind::Ket) {
    require(data.cols() == 1, "QuantumState: ket must be a column vector");
    require(std::abs(data.norm() - 1.0) <= tol, "QuantumState: ket norm differs from 1");
    return;
  }
  require(data.rows() == data.cols(), "QuantumState: density matrix must be square");
  require(std::abs(data.trace().real() - 1.0) <= tol, "QuantumState: trace differs from 1");
  require((data - data.adjoint()).norm() <= tol * std::max(1.0, data.norm()),
          "QuantumState: density matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (data + data.adjoint()));
  require(es.eigenvalues().minCoeff() >= -1e-9, "QuantumState: negative eigenvalue");
}

void TimeGrid::validate() const {
  require(t_end > t_start, "TimeGrid: t_end must exceed t_start");
  require(num_steps >= 2, "TimeGrid: num_steps must be >= 2");
}

namespace {

double thermal_p(double n_bar, int n) {
  if (n_bar == 0.0) return n == 0 ? 1.0 : 0.0;
  // log form avoids overflow for large n
  return std::exp(n * std::log(n_bar) - (n + 1) * std::log1p(n_bar));
}

}  // namespace

ThermalState thermal_state(double n_bar, int cutoff, bool allow_leakage) {
  require(n_bar >= 0.0, "thermal_state: n_bar must be >= 0");
  require(cutoff >= 2, "thermal_state: cutoff must be >= 2");
  ThermalState out;
  double inside = 0.0;
  out.populations.resize(cutoff);
  for (int n = 0; n < cutoff; ++n) {
    out.populations[n] = thermal_p(n_bar, n);
    inside += out.populations[n];
  }
  // Geometric tail: sum_{n >= c} p(n) = (n_bar/(n_bar+1))^c
  out.leakage = n_bar == 0.0 ? 0.0 : std::pow(n_bar / (n_bar + 1.0), cutoff);
  if (!allow_leakage && out.leakage > 1e-3)
    throw Error("thermal_state: truncation leakage " + std::to_string(out.leakage) +
                " exceeds 1e-3; increase the cutoff");
  Mat rho = Mat::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) {
    out.populations[n] /= inside;
    rho(n, n) = out.populations[n];
  }
  out.state = QuantumState::density(rho);
  return out;
}

int default_fock_cutoff(double n_bar, double leakage_tol, int minimum) {
  require(n_bar >= 0.0, "default_fock_cutoff: n_bar must be >= 0");
  if (n_bar == 0.0) return minimum;
  const double r = n_bar / (n_bar + 1.0);
  const int c = static_cast<int>(std::ceil(std::log(leakage_tol) / std::log(r)));
  return std::max(minimum, c);
}

namespace ops {

Mat sigma_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Mat sigma_y() {
  Mat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Mat sigma_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Mat identity(int n) { return Mat::Identity(n, n); }

Mat annihilation(int cutoff) {
  Mat a = Mat::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat on_ion(const Mat& single, int ion, int num_ions) {
  require(ion >= 0 && ion < num_ions, "on_ion: ion index out of range");
  const int l = static_cast<int>(single.rows());
  Mat out = Mat::Identity(1, 1);
  for (int i = 0; i < num_ions; ++i) out = kron(out, i == ion ? single : identity(l));
  return out;
}

Mat collective(const Mat& single, int num_ions, const std::vector<double>& weights) {
  const int l = static_cast<int>(single.rows());
  int d = 1;
  for (int i = 0; i < num_ions; ++i) d *= l;
  Mat out = Mat::Zero(d, d);
  for (int i = 0; i < num_ions; ++i) {
    const double w = i < static_cast<int>(weights.size()) ? weights[i] : 1.0;
    if (w != 0.0) out += w * on_ion(single, i, num_ions);
  }
  return out;
}

Mat ket_bra(int levels, int i, int j) {
  Mat m = Mat::Zero(levels, levels);
  m(i, j) = 1.0;
  return m;
}

}  // namespace ops

namespace levels {

Vec qubit_up(int levels_per_ion) {
  Vec v = Vec::Zero(levels_per_ion);
  if (levels_per_ion == 2) {
    v(0) = 1.0;
  } else {
    v(kMinus) = 1.0 / std::sqrt(2.0);
    v(kPlus) = 1.0 / std::sqrt(2.0);
  }
  return v;
}

Vec qubit_down(int levels_per_ion) {
  Vec v = Vec::Zero(levels_per_ion);
  v(levels_per_ion == 2 ? 1 : kZeroPrime) = 1.0;
  return v;
}

}  // namespace levels

Scheme parse_scheme(const std::string& name) {
  if (name == "primitive") return Scheme::Primitive;
  if (name == "pdd") return Scheme::Pdd;
  if (name == "cdd") return Scheme::Cdd;
  if (name == "mlcdd") return Scheme::Mlcdd;
  throw Error("unknown scheme '" + name + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::Primitive: return "primitive";
    case Scheme::Pdd: return "pdd";
    case Scheme::Cdd: return "cdd";
    case Scheme::Mlcdd: return "mlcdd";
  }
  return "unknown";
}

SpaceSpec space_for(Scheme scheme, const HamiltonianParams& p) {
  SpaceSpec s;
  s.num_ions = p.num_ions;
  s.levels_per_ion = scheme == Scheme::Mlcdd ? 4 : 2;
  s.fock_cutoff = p.fock_cutoff;
  s.validate();
  return s;
}

namespace {

GateModel model_from_params(Scheme scheme, const HamiltonianParams& p) {
  GateModel m;
  m.scheme = scheme;
  m.num_ions = p.num_ions;
  m.fock_cutoff = p.fock_cutoff;
  m.drive = constant_drive(p.eta, p.omega0, p.delta, 0.0, p.phase);
  m.mode_weights = p.mode_weights;
  m.omega_c = (scheme == Scheme::Cdd || scheme == Scheme::Mlcdd) ? p.omega_c : 0.0;
  m.static_shift = p.static_shift;
  m.shift_kind = p.shift_kind;
  m.full_terms = p.full_terms;
  m.eta = p.eta;
  m.delta_pm = p.delta_pm;
  m.nu = p.nu;
  return m;
}

}  // namespace

Operator build_hamiltonian(Scheme scheme, const HamiltonianParams& p, double t) {
  const SpaceSpec space = space_for(scheme, p);
  const GateModel m = model_from_params(scheme, p);
  SpinMotionTerms h;
  make_terms(m)(t, h);
  const SpinMotionPropagator prop(space.spin_dim(), space.fock_cutoff);
  return prop.dense(h);
}

namespace {

std::vector<double> interval_bounds(double a, double b, const std::vector<double>& breaks) {
  std::vector<double> out{a};
  for (double t : breaks)
    if (t > a && t < b) out.push_back(t);
  out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Deriv>
Mat rk4_interval(const Deriv& f, Mat y, double a, double b, int steps) {
  const double dt = (b - a) / steps;
  for (int i = 0; i < steps; ++i) {
    const double t = a + i * dt;
    const double nudge = 1e-9 * dt;
    const Mat k1 = f(t + nudge, y);
    const Mat k2 = f(t + 0.5 * dt, Mat(y + 0.5 * dt * k1));
    const Mat k3 = f(t + 0.5 * dt, Mat(y + 0.5 * dt * k2));
    const Mat k4 = f(t + dt - nudge, Mat(y + dt * k3));
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

template <typename Deriv, typename Post>
std::vector<Mat> integrate(const Deriv& f, const Post& post, Mat y0, const TimeGrid& grid,
                           const IntegratorOptions& opt, int refine) {
  std::vector<Mat> out{y0};
  Mat y = std::move(y0);
  for (int i = 0; i < grid.num_steps; ++i) {
    const auto bounds = interval_bounds(grid.at(i), grid.at(i + 1), opt.breakpoints);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
      const double frac = (bounds[k + 1] - bounds[k]) / grid.dt();
      const int steps = std::max(1, static_cast<int>(std::ceil(frac * opt.substeps * refine - 1e-9)));
      y = rk4_interval(f, y, bounds[k], bounds[k + 1], steps);
      post(y);
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace

EvolutionResult evolve_unitary(const HamiltonianFn& h, const QuantumState& psi0, const TimeGrid& grid,
                               const IntegratorOptions& opt) {
  grid.validate();
  require(psi0.kind == QuantumState::Kind::Ket, "evolve_unitary: initial state must be a ket");
  require(opt.substeps >= 1, "evolve_unitary: substeps must be >= 1");
  const int d = psi0.dim();
  auto f = [&](double t, const Mat& y) -> Mat {
    const Operator H = h(t);
    require(H.rows() == d && H.cols() == d, "evolve_unitary: Hamiltonian dimension mismatch");
    return cplx(0.0, -1.0) * (H * y);
  };
  auto none = [](Mat&) {};
  EvolutionResult res;
  const auto ys = integrate(f, none, psi0.data, grid, opt, 1);
  for (const auto& y : ys) res.states.push_back(QuantumState::ket(y));
  if (opt.richardson_check) {
    const auto fine = integrate(f, none, psi0.data, grid, opt, 2);
    for (std::size_t i = 0; i < ys.size(); ++i)
      res.richardson_error = std::max(res.richardson_error, (fine[i] - ys[i]).norm());
  }
  return res;
}

EvolutionResult evolve_lindblad(const HamiltonianFn& h, const std::vector<CollapseOp>& collapse,
                                const QuantumState& rho0, const TimeGrid& grid, const IntegratorOptions& opt) {
  grid.validate();
  require(opt.substeps >= 1, "evolve_lindblad: substeps must be >= 1");
  const Mat r0 = rho0.density_matrix();
  const int d = static_cast<int>(r0.rows());
  for (const auto& c : collapse) {
    require(c.rate >= 0.0, "evolve_lindblad: collapse rates must be >= 0");
    require(c.op.rows() == d && c.op.cols() == d, "evolve_lindblad: collapse operator dimension mismatch");
  }
  std::vector<Mat> ldl;
  for (const auto& c : collapse) ldl.push_back(c.op.adjoint() * c.op);
  auto f = [&](double t, const Mat& rho) -> Mat {
    const Operator H = h(t);
    require(H.rows() == d, "evolve_lindblad: Hamiltonian dimension mismatch");
    Mat hr = cplx(0.0, -1.0) * (H * rho);
    Mat out = hr + hr.adjoint();
    for (std::size_t k = 0; k < collapse.size(); ++k) {
      if (collapse[k].rate == 0.0) continue;
      const Mat& L = collapse[k].op;
      out += collapse[k].rate * (L * rho * L.adjoint() - 0.5 * (ldl[k] * rho + rho * ldl[k]));
    }
    return out;
  };
  auto sym = [](Mat& rho) { rho = 0.5 * (rho + rho.adjoint()).eval(); };
  EvolutionResult res;
  const auto ys = integrate(f, sym, r0, grid, opt, 1);
  for (const auto& y : ys) {
    Eigen::SelfAdjointEigenSolver<Mat> es(y, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-6)
      throw ConvergenceError("evolve_lindblad: state lost positivity; reduce the step size");
    res.states.push_back(QuantumState::density(y));
  }
  if (opt.richardson_check) {
    const auto fine = integrate(f, sym, r0, grid, opt, 2);
    for (std::size_t i = 0; i < ys.size(); ++i)
      res.richardson_error = std::max(res.richardson_error, (fine[i] - ys[i]).norm());
  }
  return res;
}

Vec bell_target(double target_phase, int levels_per_ion) {
  const Vec up = levels::qubit_up(levels_per_ion);
  const Vec down = levels::qubit_down(levels_per_ion);
  return std::cos(0.5 * target_phase) * ops::kron(down, down) +
         cplx(0.0, std::sin(0.5 * target_phase)) * ops::kron(up, up);
}

Mat reduced_spin_state(const QuantumState& state, int spin_dim, int fock_cutoff) {
  require(state.dim() == spin_dim * fock_cutoff, "reduced_spin_state: dimension mismatch");
  if (state.kind == QuantumState::Kind::Ket) {
    const Mat m = Eigen::Map<const Mat>(state.data.data(), fock_cutoff, spin_dim);
    return (m.transpose() * m.conjugate()).eval();
  }
  Mat out = Mat::Zero(spin_dim, spin_dim);
  for (int s = 0; s < spin_dim; ++s)
    for (int r = 0; r < spin_dim; ++r)
      for (int n = 0; n < fock_cutoff; ++n) out(s, r) += state.data(s * fock_cutoff + n, r * fock_cutoff + n);
  return out;
}

double spin_fidelity(const QuantumState& state, const Vec& spin_target, int fock_cutoff) {
  const int spin_dim = static_cast<int>(spin_target.size());
  const Mat rho = reduced_spin_state(state, spin_dim, fock_cutoff);
  return std::clamp((spin_target.adjoint() * rho * spin_target)(0, 0).real(), 0.0, 1.0);
}

double bell_fidelity(const QuantumState& state, double target_phase, int levels_per_ion, int fock_cutoff) {
  const Vec target = bell_target(target_phase, levels_per_ion);
  require(state.dim() == target.size() * fock_cutoff, "bell_fidelity: dimension mismatch");
  return spin_fidelity(state, target, fock_cutoff);
}

}  // namespace msgate
