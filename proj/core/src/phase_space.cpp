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

#include "msgate/phase_space.hpp"

#include "pst_moments.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace msgate {

using detail::Moments;
using detail::moments;

std::string to_string(ModulationKind k) {
  switch (k) {
    case ModulationKind::Phase: return "phase";
    case ModulationKind::Frequency: return "frequency";
    case ModulationKind::Amplitude: return "amplitude";
    case ModulationKind::Composite: return "composite";
  }
  return "phase";
}

ModulationKind parse_modulation_kind(const std::string& s) {
  if (s == "phase" || s == "pm") return ModulationKind::Phase;
  if (s == "frequency" || s == "fm") return ModulationKind::Frequency;
  if (s == "amplitude" || s == "am") return ModulationKind::Amplitude;
  if (s == "composite") return ModulationKind::Composite;
  throw Error("unknown modulation kind '" + s + "'");
}

double ModulationSequence::duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

void ModulationSequence::validate() const {
  require(!segments.empty(), "ModulationSequence: no segments");
  for (const auto& s : segments) {
    require(s.duration > 0.0, "ModulationSequence: segment durations must be > 0");
    require(s.amplitude >= 0.0 && s.amplitude <= 1.0 + 1e-12,
            "ModulationSequence: amplitude fractions must lie in [0, 1]");
    require(std::isfinite(s.phase) && std::isfinite(s.detuning), "ModulationSequence: non-finite segment");
  }
  require(base.omega0 >= 0.0, "ModulationSequence: omega0 must be >= 0");
}

ModulationSequence ModulationSequence::primitive(const ModulationBase& base, double duration) {
  ModulationSequence m;
  m.kind = ModulationKind::Phase;
  m.base = base;
  m.segments.push_back({duration, 0.0, base.delta0, 1.0});
  return m;
}

ModulationSequence ModulationSequence::phase_modulated(const ModulationBase& base, double duration,
                                                       const std::vector<double>& phases) {
  require(!phases.empty(), "phase_modulated: need at least one phase");
  ModulationSequence m;
  m.kind = ModulationKind::Phase;
  m.base = base;
  const double h = duration / static_cast<double>(phases.size());
  for (double p : phases) m.segments.push_back({h, p, base.delta0, 1.0});
  return m;
}

void ModeSpec::validate() const {
  require(eta > 0.0, "ModeSpec: eta must be > 0");
  require(n_bar >= 0.0, "ModeSpec: n_bar must be >= 0");
}

namespace {

struct SegmentState {
  double t0;
  double theta0;  // accumulated mode phase at segment start
  cplx alpha0;
};

template <class Visit>
void walk_segments(const ModulationSequence& mod, const ModeSpec& mode, Visit&& visit) {
  double t = 0.0, theta = 0.0;
  cplx alpha(0.0);
  for (const auto& s : mod.segments) {
    const double d = s.detuning + mode.detuning_offset;
    const double omega = s.amplitude * mod.base.omega0;
    const cplx dcoef = mode.eta * omega * std::exp(cplx(0.0, theta - (mod.base.phi0 + s.phase)));
    const SegmentState st{t, theta, alpha};
    visit(s, st, d, dcoef);
    alpha += dcoef * moments(d, s.duration).e1;
    theta += d * s.duration;
    t += s.duration;
  }
}

}  // namespace

PstIntegrals pst_integrals(const ModulationSequence& mod, const ModeSpec& mode) {
  mod.validate();
  mode.validate();
  PstIntegrals out;
  walk_segments(mod, mode, [&](const Segment& s, const SegmentState& st, double d, cplx dc) {
    const double h = s.duration;
    const Moments m = moments(d, h);
    const cplx p = h * m.e1 - m.e2;             // int_0^h e1(s) ds
    const cplx se1 = 0.5 * h * h * m.e1 - 0.5 * m.e3;  // int_0^h s e1(s) ds
    out.int_alpha += st.alpha0 * h + dc * p;
    out.int_abs2 += std::norm(st.alpha0) * h + 2.0 * std::real(std::conj(st.alpha0) * dc * p) + std::norm(dc) * m.g;
    out.int_t_alpha += st.alpha0 * (st.t0 * h + 0.5 * h * h) + dc * (st.t0 * p + se1);
    out.area_phase += std::imag(std::conj(st.alpha0) * dc * m.e1 + std::norm(dc) * p);
    out.alpha_end = st.alpha0 + dc * m.e1;
  });
  out.duration = mod.duration();
  return out;
}

cplx pst_at(const ModulationSequence& mod, const ModeSpec& mode, double t) {
  cplx result(0.0);
  bool done = false;
  walk_segments(mod, mode, [&](const Segment& s, const SegmentState& st, double d, cplx dc) {
    if (done) return;
    if (t <= st.t0 + s.duration) {
      const double local = std::clamp(t - st.t0, 0.0, s.duration);
      result = st.alpha0 + dc * moments(d, local).e1;
      done = true;
    } else {
      result = st.alpha0 + dc * moments(d, s.duration).e1;
    }
  });
  return result;
}

Trajectory compute_pst(const ModulationSequence& mod, const ModeSpec& mode, const TimeGrid& grid) {
  mod.validate();
  mode.validate();
  grid.validate();
  const double tau = mod.duration();
  require(std::abs(grid.t_start) <= 1e-12 * tau && std::abs(grid.t_end - tau) <= 1e-9 * tau,
          "compute_pst: grid must span exactly the sequence duration");
  Trajectory tr;
  tr.mode = mode;
  tr.times.resize(static_cast<std::size_t>(grid.size()));
  tr.alpha.resize(tr.times.size());
  // Single pass: grid points are increasing, so walk segments alongside them.
  std::size_t i = 0;
  walk_segments(mod, mode, [&](const Segment& s, const SegmentState& st, double d, cplx dc) {
    const double t1 = st.t0 + s.duration;
    while (i < tr.times.size()) {
      const double t = grid.at(static_cast<int>(i));
      if (t > t1 && &s != &mod.segments.back()) break;
      tr.times[i] = t;
      tr.alpha[i] = st.alpha0 + dc * moments(d, std::clamp(t - st.t0, 0.0, s.duration)).e1;
      ++i;
    }
  });
  tr.alpha[0] = 0.0;
  tr.exact = pst_integrals(mod, mode);
  return tr;
}

namespace {

/// Composite Simpson on a uniform grid (trapezoid fallback for an odd count of intervals).
template <class T>
T simpson(const std::vector<double>& t, const std::vector<T>& y) {
  const std::size_t n = t.size() - 1;
  if (n == 0) return T(0.0);
  const double h = (t.back() - t.front()) / static_cast<double>(n);
  T s(0.0);
  if (n % 2 == 0) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      s += w * y[i];
    }
    return s * (h / 3.0);
  }
  for (std::size_t i = 0; i < n; ++i) s += 0.5 * (y[i] + y[i + 1]) * (t[i + 1] - t[i]);
  return s;
}

}  // namespace

RobustnessReport robustness_report(const Trajectory& traj, double tau0) {
  require(tau0 > 0.0, "robustness_report: tau0 must be > 0");
  require(traj.times.size() >= 2 && traj.times.size() == traj.alpha.size(),
          "robustness_report: incomplete trajectory");
  RobustnessReport r;
  double tau;
  cplx int_alpha;
  double int_abs2;
  cplx end;
  if (traj.exact) {
    tau = traj.exact->duration;
    int_alpha = traj.exact->int_alpha;
    int_abs2 = traj.exact->int_abs2;
    end = traj.exact->alpha_end;
  } else {
    tau = traj.times.back() - traj.times.front();
    std::vector<double> abs2(traj.alpha.size());
    for (std::size_t i = 0; i < abs2.size(); ++i) abs2[i] = std::norm(traj.alpha[i]);
    int_alpha = simpson(traj.times, traj.alpha);
    int_abs2 = simpson(traj.times, abs2);
    end = traj.alpha.back();
  }
  require(tau > 0.0, "robustness_report: zero duration");
  r.closure = std::norm(end);
  r.mean_position = int_alpha / tau;
  r.mean_square = int_abs2 / tau;
  r.r_heat = r.mean_square / 0.5;
  r.r_time = tau / tau0;
  r.r_heat_scaled = r.r_heat * r.r_time;
  double peak = 0.0;
  for (const auto& a : traj.alpha) peak = std::max(peak, std::abs(a));
  r.degenerate = peak == 0.0;
  return r;
}

double heating_infidelity(double mean_square, double heating_rate, double tau, HeatingOrder order) {
  require(mean_square >= 0.0 && heating_rate >= 0.0 && tau >= 0.0, "heating_infidelity: arguments must be >= 0");
  const double x = heating_rate * mean_square * tau;
  if (order == HeatingOrder::Linear) return x;
  // 5/8 - e^{-x}/2 - e^{-4x}/8, written with expm1 for small x
  return -0.5 * std::expm1(-x) - 0.125 * std::expm1(-4.0 * x);
}

double pst_infidelity(const std::vector<Trajectory>& modes, const std::vector<double>& target_phases,
                      const std::vector<double>& achieved_phases, int num_ions) {
  require(num_ions >= 2, "pst_infidelity: need at least two ions");
  const std::size_t pairs = static_cast<std::size_t>(num_ions * (num_ions - 1) / 2);
  require(target_phases.size() == pairs && achieved_phases.size() == pairs,
          "pst_infidelity: one target and achieved phase per ion pair");
  double cosines = 1.0;
  for (std::size_t p = 0; p < pairs; ++p) cosines *= std::cos(target_phases[p] - achieved_phases[p]);
  double residual = 0.0;
  for (const auto& tr : modes) {
    require(!tr.alpha.empty(), "pst_infidelity: empty trajectory");
    const cplx end = tr.exact ? tr.exact->alpha_end : tr.alpha.back();
    residual += num_ions * std::norm(end) * (tr.mode.n_bar + 0.5);
  }
  const double amp = cosines * (1.0 - residual);
  return 1.0 - amp * amp;
}

double entangling_phase(const ModulationSequence& mod, const ModeSpec& mode) {
  return pst_integrals(mod, mode).area_phase;
}

double entangling_phase(const ModulationSequence& mod, const std::vector<ModeSpec>& modes,
                        const std::vector<double>& weights) {
  require(modes.size() == weights.size(), "entangling_phase: one weight per mode");
  double psi = 0.0;
  for (std::size_t k = 0; k < modes.size(); ++k) psi += weights[k] * entangling_phase(mod, modes[k]);
  return psi;
}

double motional_filter(const ModulationSequence& mod, const ModeSpec& mode, double omega) {
  mod.validate();
  mode.validate();
  cplx k(0.0);
  walk_segments(mod, mode, [&](const Segment& s, const SegmentState& st, double d, cplx dc) {
    // dc = eta Omega e^{i(theta0 - phi)}; the time-dependent phase is e^{i d s - i w (t0 + s)}.
    const Moments m = moments(d - omega, s.duration);
    k += dc * std::exp(cplx(0.0, -omega * st.t0)) * (st.t0 * m.e1 + m.e2);
  });
  // eta is already inside k, so 2 eta^2 |...|^2 -> 2 |k|^2.
  return mode.thermal_factor() / 4.0 * 2.0 * std::norm(k);
}

double motional_dephasing_infidelity(const ModulationSequence& mod, const std::vector<ModeSpec>& modes,
                                     const PowerSpectralDensity& psd) {
  require(!modes.empty(), "motional_dephasing_infidelity: no modes");
  const double tau = mod.duration();
  double fastest = 0.0;
  for (const auto& s : mod.segments)
    for (const auto& m : modes) fastest = std::max(fastest, std::abs(s.detuning + m.detuning_offset));
  double upper = std::max(2000.0 / tau, 100.0 * fastest);
  if (std::isfinite(psd.support())) upper = std::min(upper, psd.support());
  auto f = [&](double w) {
    double sum = 0.0;
    for (const auto& m : modes) sum += motional_filter(mod, m, w);
    return psd(w) * sum;
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double step = std::max(kPi / tau, upper / 4000.0);
  std::vector<double> edges;
  for (double w = -upper; w < upper; w += step) edges.push_back(w);
  edges.push_back(upper);
  if (psd.corner() > 0.0)
    for (double c : {-psd.corner(), psd.corner()}) edges.push_back(c);
  std::sort(edges.begin(), edges.end());
  double total = 0.0, err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (edges[i + 1] - edges[i] <= 0.0) continue;
    double e = 0.0;
    total += GK::integrate(f, edges[i], edges[i + 1], 5, 1e-9, &e);
    err += e;
  }
  if (!std::isfinite(total) || err > 1e-3 * std::abs(total) + 1e-300)
    throw ConvergenceError("motional_dephasing_infidelity: quadrature did not converge");
  return total / kTwoPi;
}

QuadraticSensitivity quadratic_sensitivity(const ModulationSequence& mod, const ModeSpec& mode) {
  const PstIntegrals p = pst_integrals(mod, mode);
  const double tau = p.duration;
  QuadraticSensitivity q;
  q.end_term = -tau * tau * p.alpha_end;
  q.mean_term = 2.0 * tau * p.int_alpha;
  // int_0^tau alpha_av(t) dt = tau alpha_av(tau) - int t alpha dt
  q.integral_term = -2.0 * (tau * p.int_alpha - p.int_t_alpha);
  return q;
}

double cat_probability(cplx alpha, double n_bar) {
  require(n_bar >= 0.0, "cat_probability: n_bar must be >= 0");
  return -0.5 * std::expm1(-2.0 * std::norm(alpha) * (1.0 + 2.0 * n_bar));
}

std::vector<double> cat_probability(const Trajectory& traj, double n_bar) {
  std::vector<double> out;
  out.reserve(traj.alpha.size());
  for (const auto& a : traj.alpha) out.push_back(cat_probability(a, n_bar));
  return out;
}

SidebandDrive to_drive(const ModulationSequence& mod, double eta) {
  mod.validate();
  struct Piece {
    double t0, t1, theta0, detuning, omega, phi;
  };
  auto pieces = std::make_shared<std::vector<Piece>>();
  double t = 0.0, theta = 0.0;
  SidebandDrive d;
  for (const auto& s : mod.segments) {
    pieces->push_back({t, t + s.duration, theta, s.detuning, s.amplitude * mod.base.omega0, mod.base.phi0 + s.phase});
    theta += s.detuning * s.duration;
    t += s.duration;
    d.breakpoints.push_back(t);
  }
  d.breakpoints.pop_back();
  d.duration = t;
  d.coupling = [pieces, eta](double time) {
    const auto& ps = *pieces;
    auto it = std::upper_bound(ps.begin(), ps.end(), time, [](double v, const Piece& p) { return v < p.t1; });
    if (it == ps.end()) it = ps.end() - 1;
    const Piece& p = *it;
    const double theta_t = p.theta0 + p.detuning * (time - p.t0);
    return eta * p.omega * std::exp(cplx(0.0, theta_t - p.phi));
  };
  return d;
}

ModulationSequence rescale_time(const ModulationSequence& mod, double time_scale) {
  require(time_scale > 0.0, "rescale_time: scale must be > 0");
  ModulationSequence out = mod;
  out.base.delta0 /= time_scale;
  for (auto& s : out.segments) {
    s.duration *= time_scale;
    s.detuning /= time_scale;
  }
  return out;
}

}  // namespace msgate
