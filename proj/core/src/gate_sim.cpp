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

#include "msgate/gate_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <thread>

namespace msgate {

OUParams OuChannel::resolved() const {
  if (t2 > 0.0) return calibrate_to_t2(t2, params.correlation_time);
  params.validate();
  return params;
}

void SimulationScenario::validate() const {
  require(omega0 >= 0.0 && eta > 0.0, "SimulationScenario: omega0 must be >= 0 and eta > 0");
  require(delta0 >= 0.0 && nu >= 0.0, "SimulationScenario: frequencies must be >= 0");
  require(base_detuning() > 0.0, "SimulationScenario: zero gate detuning");
  require(n_bar >= 0.0 && heating_rate >= 0.0, "SimulationScenario: rates must be >= 0");
  require(ensemble >= 1, "SimulationScenario: ensemble must be >= 1");
  require(jobs >= 1, "SimulationScenario: jobs must be >= 1");
  require(rotations >= 0.0 && carrier_flips >= 0, "SimulationScenario: invalid carrier settings");
  require(std::isfinite(static_shift) && std::isfinite(motional_shift), "SimulationScenario: non-finite shift");
  if (scheme == Scheme::Pdd) require(num_pulses >= 2, "SimulationScenario: pdd needs at least two pulses");
  if (scheme == Scheme::Cdd || scheme == Scheme::Mlcdd)
    require(rotations > 0.0, "SimulationScenario: cdd/mlcdd need rotations > 0");
  if (modulation) modulation->validate();
  if (dephasing.t2 < 0.0 || amplitude.t2 < 0.0) throw Error("SimulationScenario: t2 must be >= 0");
}

std::vector<std::string> SimulationScenario::warnings() const {
  std::vector<std::string> w;
  if (nu > 0.0 && omega_c() >= nu / 3.0)
    w.push_back("rotating-wave: omega_c >= nu/3, carrier terms beyond the rotating-wave limit are dropped");
  if (nu > 0.0 && omega0 * eta >= nu / 10.0) w.push_back("rotating-wave: eta omega0 is not small against nu");
  if (n_bar > 0.0) {
    const int cut = fock_cutoff > 0 ? fock_cutoff : default_fock_cutoff(n_bar);
    const double leak = std::pow(n_bar / (n_bar + 1.0), cut);
    if (leak > 1e-4)
      w.push_back("fock-truncation: thermal leakage " + std::to_string(leak) + " beyond cutoff " + std::to_string(cut));
  }
  return w;
}

FlowerTiming flower_timing(int num_pulses, double coupling) {
  require(num_pulses >= 2, "flower_timing: need at least two pulses");
  require(coupling > 0.0, "flower_timing: coupling must be > 0");
  // Unit problem (coupling = delta = 1): alternating-sign segments.
  const int n = num_pulses;
  const double seg = kPi * (2.0 + n) / n;
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) phases[static_cast<std::size_t>(k)] = (k % 2) ? kPi : 0.0;
  ModeSpec unit;
  unit.eta = 1.0;
  const double area = std::abs(pst_integrals(ModulationSequence::phase_modulated({1.0, 1.0, 0.0}, seg * n, phases), unit).area_phase);
  // Psi scales as (coupling / delta)^2.
  FlowerTiming f;
  f.delta = coupling * std::sqrt(area / (0.5 * kPi));
  f.segment = kPi * (2.0 + n) / (n * f.delta);
  f.duration = n * f.segment;
  return f;
}

double scenario_duration(const SimulationScenario& s) {
  if (s.modulation) return s.modulation->duration();
  if (s.scheme == Scheme::Pdd) return flower_timing(s.num_pulses, s.eta * s.omega0).duration;
  return s.tau0();
}

GateModel build_gate_model(const SimulationScenario& s) {
  s.validate();
  GateModel m;
  m.scheme = s.scheme;
  m.fock_cutoff = s.fock_cutoff > 0 ? s.fock_cutoff : (s.n_bar > 0.0 ? default_fock_cutoff(s.n_bar) : 10);
  const double tau = scenario_duration(s);
  if (s.modulation) {
    m.drive = to_drive(*s.modulation, s.eta);
  } else if (s.scheme == Scheme::Pdd) {
    const FlowerTiming f = flower_timing(s.num_pulses, s.eta * s.omega0);
    m.drive = constant_drive(s.eta, s.omega0, f.delta, f.duration);
    for (int j = 1; j <= s.num_pulses; ++j) m.pulse_times.push_back(j * f.segment);
  } else {
    m.drive = constant_drive(s.eta, s.omega0, s.base_detuning(), tau);
  }
  if (s.modulation && s.scheme == Scheme::Pdd) {
    for (int j = 1; j <= s.num_pulses; ++j) m.pulse_times.push_back(tau * j / s.num_pulses);
  }
  if (s.motional_shift != 0.0) {
    auto inner = m.drive.coupling;
    const double ds = s.motional_shift;
    m.drive.coupling = [inner, ds](double t) { return inner(t) * std::exp(cplx(0.0, ds * t)); };
  }
  if (s.scheme == Scheme::Cdd || s.scheme == Scheme::Mlcdd) {
    m.omega_c = s.omega_c();
    for (int j = 1; j < s.carrier_flips; ++j) m.carrier_flips.push_back(tau * j / s.carrier_flips);
  }
  m.static_shift = s.static_shift;
  m.shift_kind = s.shift_kind;
  m.full_terms = s.full_terms;
  m.eta = s.eta;
  m.delta_pm = s.delta_pm;
  m.nu = s.nu;
  return m;
}

namespace {

double target_phase(const SimulationScenario& s) {
  ModeSpec mode;
  mode.eta = s.eta;
  double psi;
  if (s.modulation) {
    psi = entangling_phase(*s.modulation, mode);
  } else if (s.scheme == Scheme::Pdd) {
    return kPi / 2;  // the flower encloses +pi/2 in the toggling frame
  } else {
    psi = entangling_phase(ModulationSequence::primitive({s.omega0, s.base_detuning(), 0.0}, s.tau0()), mode);
  }
  return psi;
}

/// Bell fidelity with heating (density matrix) or without (thermal ket average).
double model_fidelity(const GateModel& model, const SimulationScenario& s, double max_dt, double phase) {
  if (s.heating_rate <= 0.0) {
    GateFidelityOptions opt;
    opt.max_dt = max_dt;
    opt.n_bar = s.n_bar;
    opt.target_phase = phase;
    opt.jobs = s.noisy() ? 1 : s.jobs;  // noisy runs already spread the ensemble
    return gate_fidelity(model, opt);
  }
  const int F = model.fock_cutoff;
  const int D = model.spin_dim();
  const SpinMotionPropagator prop(D, F);
  const ThermalState th = thermal_state(s.n_bar, F, true);
  const Mat psi0 = initial_ket(model, 0);
  Vec spin0(D);
  for (int k = 0; k < D; ++k) spin0[k] = psi0(0, k);
  Mat rho = Mat::Zero(D * F, D * F);
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int n = 0; n < F; ++n) rho(a * F + n, b * F + n) = spin0[a] * std::conj(spin0[b]) * th.populations[n];
  const Mat out = prop.propagate_density(make_terms(model), rho, make_plan(model, max_dt), s.heating_rate);
  const Vec target = gate_target(model, phase);
  double fid = 0.0;
  for (int n = 0; n < F; ++n) {
    Vec v = Vec::Zero(D * F);
    for (int a = 0; a < D; ++a) v[a * F + n] = target[a];
    fid += std::real(v.dot(out * v));
  }
  return fid;
}

/// Pairwise summation keeps the mean independent of evaluation order.
double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

}  // namespace

GateRunResult run_gate(const SimulationScenario& s) {
  const GateModel base = build_gate_model(s);
  GateRunResult res;
  res.warnings = s.warnings();
  res.duration = base.drive.duration;
  const double max_dt = s.max_dt > 0.0 ? s.max_dt : default_max_dt(base);
  const double phase = target_phase(s);
  if (!s.noisy()) {
    res.mean_infidelity = std::max(0.0, 1.0 - model_fidelity(base, s, max_dt, phase));
    res.n_traj = 1;
    return res;
  }
  const double tau = base.drive.duration;
  // The RK4 stages sample the noise at half steps; a grid at max_dt / 2 keeps
  // the interpolation exact at every stage.
  const int steps = 2 * static_cast<int>(std::ceil(tau / max_dt));
  const TimeGrid grid{0.0, tau, steps};
  const OUParams pz = s.dephasing.enabled() ? s.dephasing.resolved() : OUParams{};
  const OUParams px = s.amplitude.enabled() ? s.amplitude.resolved() : OUParams{};
  const int ions = base.num_ions;

  std::vector<double> infid(static_cast<std::size_t>(s.ensemble));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int k = next++; k < s.ensemble; k = next++) {
      try {
        GateModel m = base;
        const std::uint64_t seed = derive_seed(s.seed, static_cast<std::uint64_t>(k));
        if (s.dephasing.enabled()) {
          auto traj = std::make_shared<std::vector<NoiseTrajectory>>();
          for (int i = 0; i < ions; ++i)
            traj->push_back(sample_ou(pz, grid, derive_seed(seed, static_cast<std::uint64_t>(i))));
          m.beta_z = [traj](int ion, double t) { return (*traj)[static_cast<std::size_t>(ion)].at(t); };
        }
        if (s.amplitude.enabled()) {
          auto traj = std::make_shared<NoiseTrajectory>(sample_ou(px, grid, derive_seed(seed, 1000)));
          m.beta_x = [traj](double t) { return traj->at(t); };
        }
        infid[static_cast<std::size_t>(k)] = std::max(0.0, 1.0 - model_fidelity(m, s, max_dt, phase));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int nthreads = std::min(s.jobs, s.ensemble);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  const double mean = pairwise_sum(infid.data(), infid.size()) / s.ensemble;
  std::vector<double> dev(infid.size());
  for (std::size_t i = 0; i < infid.size(); ++i) dev[i] = (infid[i] - mean) * (infid[i] - mean);
  const double var = s.ensemble > 1 ? pairwise_sum(dev.data(), dev.size()) / (s.ensemble - 1) : 0.0;
  res.mean_infidelity = mean;
  res.stderr_infidelity = std::sqrt(var / s.ensemble);
  res.n_traj = s.ensemble;
  return res;
}

double analytic_infidelity(const SimulationScenario& s) {
  s.validate();
  const double tau = scenario_duration(s);
  double total = 0.0;
  if (s.dephasing.enabled()) {
    const PowerSpectralDensity psd = ou_psd(s.dephasing.resolved());
    switch (s.scheme) {
      case Scheme::Primitive:
        total += dephasing_infidelity(chi_overlap(psd, fid_filter(tau), tau), Scheme::Primitive);
        break;
      case Scheme::Pdd:
        total += dephasing_infidelity(
            chi_overlap(psd, pdd_filter_model(PulseSequence::periodic(s.num_pulses), tau), tau), Scheme::Pdd);
        break;
      case Scheme::Cdd:
        total += cdd_dephasing_infidelity(psd, s.omega_c(), tau);
        break;
      case Scheme::Mlcdd:
        total += mlcdd_dephasing_infidelity(psd, s.omega_c(), tau);
        break;
    }
  }
  if (s.amplitude.enabled() && s.scheme == Scheme::Cdd) {
    std::optional<PulseSequence> flips;
    if (s.carrier_flips > 1) flips = PulseSequence::periodic(s.carrier_flips);
    total += cdd_amplitude_infidelity(ou_psd(s.amplitude.resolved()), s.omega_c(), tau, flips);
  }
  return total;
}

}  // namespace msgate
