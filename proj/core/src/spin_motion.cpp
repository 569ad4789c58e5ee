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

#include "msgate/spin_motion.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace msgate {

SpinMotionPropagator::SpinMotionPropagator(int spin_dim, int fock_cutoff)
    : spin_dim_(spin_dim), fock_(fock_cutoff), sqrt_n_(fock_cutoff) {
  require(spin_dim >= 1 && fock_cutoff >= 1, "SpinMotionPropagator: invalid dimensions");
  for (int n = 0; n < fock_; ++n) sqrt_n_(n) = std::sqrt(static_cast<double>(n));
}

void SpinMotionPropagator::apply_a(const Mat& psi, Mat& out) const {
  // (a psi)(n, s) = sqrt(n+1) psi(n+1, s)
  out.resize(fock_, psi.cols());
  for (int n = 0; n + 1 < fock_; ++n) out.row(n) = sqrt_n_(n + 1) * psi.row(n + 1);
  out.row(fock_ - 1).setZero();
}

void SpinMotionPropagator::apply_adag(const Mat& psi, Mat& out) const {
  out.resize(fock_, psi.cols());
  out.row(0).setZero();
  for (int n = 1; n < fock_; ++n) out.row(n) = sqrt_n_(n) * psi.row(n - 1);
}

void SpinMotionPropagator::derivative(const SpinMotionTerms& h, const Mat& psi, Mat& out) const {
  Mat tmp;
  out.noalias() = psi * h.h0.transpose();
  apply_a(psi, tmp);
  out.noalias() += tmp * h.ha.transpose();
  apply_adag(psi, tmp);
  out.noalias() += tmp * h.ha.conjugate();
  if (h.has_number) {
    tmp = psi;
    for (int n = 0; n < fock_; ++n) tmp.row(n) *= static_cast<double>(n);
    out.noalias() += tmp * h.hn.transpose();
  }
  out *= cplx(0.0, -1.0);
}

std::vector<double> SpinMotionPropagator::step_boundaries(const PropagationPlan& plan) {
  std::vector<double> b{plan.t_start, plan.t_end};
  for (double t : plan.breakpoints)
    if (t > plan.t_start && t < plan.t_end) b.push_back(t);
  for (const auto& e : plan.events)
    if (e.time > plan.t_start && e.time < plan.t_end) b.push_back(e.time);
  std::sort(b.begin(), b.end());
  std::vector<double> out;
  const double tol = 1e-12 * std::max(1.0, std::abs(plan.t_end - plan.t_start));
  for (double t : b)
    if (out.empty() || t - out.back() > tol) out.push_back(t);
  if (out.back() < plan.t_end) out.back() = plan.t_end;
  return out;
}

namespace {

std::vector<const SpinEvent*> sorted_events(const PropagationPlan& plan) {
  std::vector<const SpinEvent*> ev;
  for (const auto& e : plan.events) ev.push_back(&e);
  std::stable_sort(ev.begin(), ev.end(),
                   [](const SpinEvent* a, const SpinEvent* b) { return a->time < b->time; });
  return ev;
}

int steps_for(double len, double max_dt) {
  if (max_dt <= 0.0) return 1;
  return std::max(1, static_cast<int>(std::ceil(len / max_dt - 1e-9)));
}

}  // namespace

Mat SpinMotionPropagator::propagate(const TermsFn& terms, Mat psi, const PropagationPlan& plan) const {
  require(psi.rows() == fock_ && psi.cols() == spin_dim_, "propagate: state shape mismatch");
  require(plan.t_end >= plan.t_start, "propagate: reversed time window");
  const auto bounds = step_boundaries(plan);
  const auto events = sorted_events(plan);
  std::size_t next_event = 0;
  auto fire_events = [&](double t, bool final) {
    const double tol = 1e-12 * std::max(1.0, std::abs(plan.t_end - plan.t_start));
    while (next_event < events.size() &&
           (events[next_event]->time <= t + tol || (final && events[next_event]->time <= plan.t_end + tol))) {
      psi = psi * events[next_event]->unitary.transpose();
      ++next_event;
    }
  };
  fire_events(plan.t_start, false);

  SpinMotionTerms h;
  Mat k1, k2, k3, k4, tmp;
  for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
    const double a = bounds[seg];
    const double b = bounds[seg + 1];
    const int n = steps_for(b - a, plan.max_dt);
    const double dt = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      const double t = a + i * dt;
      const double nudge = 1e-9 * dt;  // one-sided evaluation at discontinuities
      terms(t + nudge, h);
      derivative(h, psi, k1);
      terms(t + 0.5 * dt, h);
      tmp = psi + (0.5 * dt) * k1;
      derivative(h, tmp, k2);
      tmp = psi + (0.5 * dt) * k2;
      derivative(h, tmp, k3);
      terms(t + dt - nudge, h);
      tmp = psi + dt * k3;
      derivative(h, tmp, k4);
      psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    fire_events(b, seg + 2 == bounds.size());
  }
  return psi;
}

void SpinMotionPropagator::density_derivative(const SpinMotionTerms& h, const Mat& rho, double rate,
                                              Mat& out) const {
  const int d = spin_dim_ * fock_;
  Mat hx(d, d);
  Mat col(fock_, spin_dim_), dcol;
  // H rho column by column; -i is folded in by derivative().
  for (int j = 0; j < d; ++j) {
    col = Eigen::Map<const Mat>(rho.col(j).data(), fock_, spin_dim_);
    derivative(h, col, dcol);
    hx.col(j) = Eigen::Map<const Vec>(dcol.data(), d);
  }
  // hx = -i H rho; commutator term -i[H, rho] = hx + hx^dag
  out = hx + hx.adjoint();
  if (rate > 0.0) {
    // D[a] + D[a^dag] = a rho a^dag + a^dag rho a - {a^dag a + 1/2, rho}
    auto left_apply = [&](const Mat& m, bool adag) {
      Mat res(d, d);
      Mat c(fock_, spin_dim_), r;
      for (int j = 0; j < d; ++j) {
        c = Eigen::Map<const Mat>(m.col(j).data(), fock_, spin_dim_);
        if (adag) apply_adag(c, r); else apply_a(c, r);
        res.col(j) = Eigen::Map<const Vec>(r.data(), d);
      }
      return res;
    };
    Mat arho = left_apply(rho, false);
    Mat a_rho_adag = left_apply(Mat(arho.adjoint()), false).adjoint();
    Mat adrho = left_apply(rho, true);
    Mat ad_rho_a = left_apply(Mat(adrho.adjoint()), true).adjoint();
    RVec number(d);
    for (int s = 0; s < spin_dim_; ++s)
      for (int n = 0; n < fock_; ++n) number(s * fock_ + n) = n + 0.5;
    Mat anti = number.asDiagonal() * rho + rho * number.asDiagonal();
    out += rate * (a_rho_adag + ad_rho_a - anti);
  }
}

Mat SpinMotionPropagator::propagate_density(const TermsFn& terms, Mat rho, const PropagationPlan& plan,
                                            double heating_rate) const {
  const int d = spin_dim_ * fock_;
  require(rho.rows() == d && rho.cols() == d, "propagate_density: state shape mismatch");
  require(heating_rate >= 0.0, "propagate_density: negative rate");
  const auto bounds = step_boundaries(plan);
  const auto events = sorted_events(plan);
  std::size_t next_event = 0;
  auto full_unitary = [&](const Mat& u) { return ops::kron(u, ops::identity(fock_)); };
  auto fire_events = [&](double t, bool final) {
    const double tol = 1e-12 * std::max(1.0, std::abs(plan.t_end - plan.t_start));
    while (next_event < events.size() &&
           (events[next_event]->time <= t + tol || (final && events[next_event]->time <= plan.t_end + tol))) {
      const Mat u = full_unitary(events[next_event]->unitary);
      rho = u * rho * u.adjoint();
      ++next_event;
    }
  };
  fire_events(plan.t_start, false);
  SpinMotionTerms h;
  Mat k1, k2, k3, k4, tmp;
  for (std::size_t seg = 0; seg + 1 < bounds.size(); ++seg) {
    const double a = bounds[seg];
    const double b = bounds[seg + 1];
    const int n = steps_for(b - a, plan.max_dt);
    const double dt = (b - a) / n;
    for (int i = 0; i < n; ++i) {
      const double t = a + i * dt;
      const double nudge = 1e-9 * dt;
      terms(t + nudge, h);
      density_derivative(h, rho, heating_rate, k1);
      terms(t + 0.5 * dt, h);
      tmp = rho + (0.5 * dt) * k1;
      density_derivative(h, tmp, heating_rate, k2);
      tmp = rho + (0.5 * dt) * k2;
      density_derivative(h, tmp, heating_rate, k3);
      terms(t + dt - nudge, h);
      tmp = rho + dt * k3;
      density_derivative(h, tmp, heating_rate, k4);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rho = 0.5 * (rho + rho.adjoint()).eval();
    }
    fire_events(b, seg + 2 == bounds.size());
  }
  return rho;
}

Operator SpinMotionPropagator::dense(const SpinMotionTerms& h) const {
  const Mat a = ops::annihilation(fock_);
  Operator out = ops::kron(h.h0, ops::identity(fock_)) + ops::kron(h.ha, a) +
                 ops::kron(h.ha.adjoint(), a.adjoint());
  if (h.has_number) out += ops::kron(h.hn, a.adjoint() * a);
  return out;
}

Mat ket_to_matrix(const Vec& v, int spin_dim, int fock_cutoff) {
  require(v.size() == static_cast<Eigen::Index>(spin_dim) * fock_cutoff, "ket_to_matrix: size mismatch");
  return Eigen::Map<const Mat>(v.data(), fock_cutoff, spin_dim);
}

Vec matrix_to_ket(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

SidebandDrive constant_drive(double eta, double omega0, double delta, double duration, double phase) {
  SidebandDrive d;
  d.duration = duration;
  d.coupling = [=](double t) { return eta * omega0 * std::exp(cplx(0.0, delta * t - phase)); };
  return d;
}

Mat pulse_rotation(double eps, const std::array<double, 3>& axis) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  require(std::abs(norm - 1.0) < 1e-9, "pulse_rotation: axis must be a unit vector");
  const Mat ns = axis[0] * ops::sigma_x() + axis[1] * ops::sigma_y() + axis[2] * ops::sigma_z();
  const double half = 0.5 * (kPi + eps);
  return std::cos(half) * ops::identity(2) - cplx(0.0, std::sin(half)) * ns;
}

int GateModel::spin_dim() const {
  int d = 1;
  for (int i = 0; i < num_ions; ++i) d *= levels_per_ion();
  return d;
}

namespace {

struct ModelOperators {
  Mat coupling;               // S for the sideband (weighted), rotating-wave form
  Mat carrier;                // drive generator K; H_drive = omega_c * y * (1 + beta_x) * K
  std::vector<Mat> noise;     // per-ion qubit-frequency operators (coefficient beta/2)
  Mat shift;                  // static shift operator (coefficient delta_omega/2)
  // mlcdd full-term extras
  Mat minus_coupling;         // |-1><0'| + h.c. sideband operator with eta sign flipped
  Mat plus_raise, minus_raise;  // sum_j |+1><0'|_j and |-1><0'|_j
  std::vector<double> carrier_flips;
};

ModelOperators build_operators(const GateModel& m) {
  ModelOperators o;
  const int L = m.levels_per_ion();
  const int N = m.num_ions;
  std::vector<double> w = m.mode_weights;
  w.resize(N, 1.0);
  if (m.scheme == Scheme::Mlcdd) {
    using namespace levels;
    const Mat up_plus = ops::ket_bra(4, kPlus, kZeroPrime);
    const Mat up_minus = ops::ket_bra(4, kMinus, kZeroPrime);
    const double rf_scale = std::sqrt(2.0);  // Omega_rf = sqrt(2) Omega_0
    o.coupling = rf_scale * ops::collective(Mat(up_plus + up_plus.adjoint()), N, w);
    std::vector<double> wm(N);
    for (int i = 0; i < N; ++i) wm[i] = -w[i];
    o.minus_coupling = rf_scale * ops::collective(Mat(up_minus + up_minus.adjoint()), N, wm);
    o.plus_raise = ops::collective(up_plus, N);
    o.minus_raise = ops::collective(up_minus, N);
    const Mat kdd = 0.5 * (ops::ket_bra(4, kZero, kMinus) - ops::ket_bra(4, kZero, kPlus) +
                           ops::ket_bra(4, kMinus, kZero) - ops::ket_bra(4, kPlus, kZero));
    o.carrier = ops::collective(kdd, N);
    const Mat zeeman = ops::ket_bra(4, kPlus, kPlus) - ops::ket_bra(4, kMinus, kMinus);
    for (int i = 0; i < N; ++i) o.noise.push_back(ops::on_ion(zeeman, i, N));
    if (m.shift_kind == ShiftKind::BField) {
      o.shift = ops::collective(zeeman, N);
    } else {
      const Vec dk = levels::qubit_up(4);
      const Vec zp = levels::qubit_down(4);
      const Mat ctrl = dk * dk.adjoint() - zp * zp.adjoint();
      o.shift = ops::collective(ctrl, N);
    }
  } else {
    o.coupling = ops::collective(ops::sigma_x(), N, w);
    o.carrier = 0.5 * ops::collective(ops::sigma_x(), N);
    for (int i = 0; i < N; ++i) o.noise.push_back(ops::on_ion(ops::sigma_z(), i, N));
    o.shift = ops::collective(ops::sigma_z(), N);
  }
  (void)L;
  o.carrier_flips = m.carrier_flips;
  std::sort(o.carrier_flips.begin(), o.carrier_flips.end());
  return o;
}

double flip_sign(const std::vector<double>& flips, double t) {
  const auto it = std::upper_bound(flips.begin(), flips.end(), t);
  return ((it - flips.begin()) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

TermsFn make_terms(const GateModel& model) {
  auto ops_ptr = std::make_shared<ModelOperators>(build_operators(model));
  const GateModel m = model;
  const int d = m.spin_dim();
  return [ops_ptr, m, d](double t, SpinMotionTerms& h) {
    const ModelOperators& o = *ops_ptr;
    const cplx g = m.drive.coupling ? m.drive.coupling(t) : cplx(0.0);
    h.h0.setZero(d, d);
    h.has_number = false;
    h.ha = (0.5 * std::conj(g)) * o.coupling;
    if (m.omega_c != 0.0 && (m.scheme == Scheme::Cdd || m.scheme == Scheme::Mlcdd)) {
      double amp = m.omega_c * flip_sign(o.carrier_flips, t);
      if (m.beta_x) amp *= 1.0 + m.beta_x(t);
      h.h0 += amp * o.carrier;
    }
    if (m.static_shift != 0.0) h.h0 += (0.5 * m.static_shift) * o.shift;
    if (m.beta_z) {
      for (int i = 0; i < static_cast<int>(o.noise.size()); ++i) {
        const double b = m.beta_z(i, t);
        if (b != 0.0) h.h0 += (0.5 * b) * o.noise[i];
      }
    }
    if (m.scheme == Scheme::Mlcdd && m.full_terms) {
      // Transition |-1> <-> |0'> offset by delta_pm, with opposite Lamb-Dicke sign.
      const cplx rot = std::exp(cplx(0.0, -m.delta_pm * t));
      h.ha += (0.5 * std::conj(g * rot)) * o.minus_coupling;
      // Carrier terms of the bichromatic rf field, rotating at nu + delta.
      if (m.eta > 0.0 && m.nu > 0.0) {
        const cplx gc = g / m.eta;  // Omega(t) exp(i(theta - phi))
        const double rf = std::sqrt(2.0);
        const cplx carrier_plus = rf * std::real(gc * std::exp(cplx(0.0, m.nu * t))) * cplx(1.0, 0.0);
        Mat c = carrier_plus * o.plus_raise;
        c += (carrier_plus * rot) * o.minus_raise;
        h.h0 += c + c.adjoint();
        // Counter-rotating sideband terms at 2 nu + delta.
        const cplx gcr = g * std::exp(cplx(0.0, 2.0 * m.nu * t));
        h.ha += (0.5 * std::conj(gcr)) * o.coupling;
      }
    }
  };
}

PropagationPlan make_plan(const GateModel& model, double max_dt) {
  PropagationPlan plan;
  plan.t_start = 0.0;
  plan.t_end = model.drive.duration;
  plan.max_dt = max_dt > 0.0 ? max_dt : default_max_dt(model);
  plan.breakpoints = model.drive.breakpoints;
  for (double t : model.carrier_flips) plan.breakpoints.push_back(t);
  const int L = model.levels_per_ion();
  for (std::size_t k = 0; k < model.pulse_times.size(); ++k) {
    Mat single = k < model.pulse_unitaries.size() ? model.pulse_unitaries[k]
                                                  : Mat(cplx(0.0, -1.0) * ops::sigma_y());
    require(single.rows() == L, "make_plan: pulse unitary dimension mismatch");
    Mat u = single;
    for (int i = 1; i < model.num_ions; ++i) u = ops::kron(u, single);
    plan.events.push_back({model.pulse_times[k], u});
  }
  return plan;
}

double default_max_dt(const GateModel& model) {
  double fastest = 0.0;
  if (model.drive.coupling) {
    // Probe the sideband phase rate from the coupling over a short window.
    const double T = std::max(model.drive.duration, 1e-12);
    const int probes = 64;
    for (int i = 0; i < probes; ++i) {
      const double t = T * (i + 0.5) / probes;
      const double h = T * 1e-4;
      const cplx a = model.drive.coupling(t);
      const cplx b = model.drive.coupling(t + h);
      if (std::abs(a) > 0.0 && std::abs(b) > 0.0) fastest = std::max(fastest, std::abs(std::arg(b / a)) / h);
      fastest = std::max(fastest, std::abs(a));
    }
  }
  fastest = std::max(fastest, std::abs(model.omega_c));
  fastest = std::max(fastest, std::abs(model.static_shift));
  if (model.full_terms) fastest = std::max(fastest, 2.0 * model.nu + std::abs(model.delta_pm));
  if (fastest <= 0.0) return model.drive.duration > 0.0 ? model.drive.duration / 16.0 : 1.0;
  return 0.05 / fastest;
}

Vec gate_target(const GateModel& model, double target_phase) {
  const int L = model.levels_per_ion();
  Vec target = bell_target(target_phase, L);
  if (model.num_ions != 2) {
    Vec down = levels::qubit_down(L);
    Vec t = down;
    for (int i = 1; i < model.num_ions; ++i) t = ops::kron(t, down);
    target = t;
  }
  if (!model.pulse_times.empty()) {
    for (std::size_t k = 0; k < model.pulse_times.size(); ++k) {
      Mat single = cplx(0.0, -1.0) * ops::sigma_y();
      Mat u = single;
      for (int i = 1; i < model.num_ions; ++i) u = ops::kron(u, single);
      target = u * target;
    }
  }
  return target;
}

Mat initial_ket(const GateModel& model, int n) {
  const int L = model.levels_per_ion();
  Vec spin = levels::qubit_down(L);
  for (int i = 1; i < model.num_ions; ++i) spin = ops::kron(spin, levels::qubit_down(L));
  Mat psi = Mat::Zero(model.fock_cutoff, model.spin_dim());
  require(n >= 0 && n < model.fock_cutoff, "initial_ket: Fock index outside cutoff");
  psi.row(n) = spin.transpose();
  return psi;
}

double gate_fidelity(const GateModel& model, const GateFidelityOptions& opt) {
  const SpinMotionPropagator prop(model.spin_dim(), model.fock_cutoff);
  const TermsFn terms = make_terms(model);
  const PropagationPlan plan = make_plan(model, opt.max_dt);
  const Vec target = gate_target(model, opt.target_phase);
  std::vector<double> pops{1.0};
  if (opt.n_bar > 0.0) {
    pops.clear();
    const double nb = opt.n_bar;
    for (int n = 0; n < model.fock_cutoff; ++n) pops.push_back(std::pow(nb, n) / std::pow(nb + 1.0, n + 1));
  }
  std::vector<int> active;
  for (int n = 0; n < static_cast<int>(pops.size()); ++n)
    if (pops[n] >= opt.population_floor) active.push_back(n);
  std::vector<double> fids(active.size());
  detail::parallel_for(static_cast<int>(active.size()), opt.jobs, [&](int k) {
    const Mat psi = prop.propagate(terms, initial_ket(model, active[k]), plan);
    // <Phi| Tr_motion |psi><psi| |Phi> = sum_n |<Phi, n|psi>|^2
    const Vec proj = psi * target.conjugate();
    fids[k] = proj.squaredNorm();
  });
  // Summed in Fock order so the result is independent of the thread count.
  double fid = 0.0, weight = 0.0;
  for (std::size_t k = 0; k < active.size(); ++k) {
    fid += pops[active[k]] * fids[k];
    weight += pops[active[k]];
  }
  return fid / weight;
}

}  // namespace msgate
