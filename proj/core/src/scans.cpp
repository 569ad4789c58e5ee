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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "msgate/gate_sim.hpp"
#include "msgate/mtms.hpp"
#include "msgate/synthesis.hpp"
#include "parallel.hpp"

namespace msgate {

using detail::parallel_for;

namespace {

/// Root of log(g(x) / level) in [lo, hi], where g(lo) <= level < g(hi).
template <class G>
double refine_crossing(G&& g, double lo, double hi, double level, double g_lo, double g_hi) {
  auto f = [&](double x) { return std::log(std::max(g(x), 1e-300) / level); };
  const double f_lo = std::log(std::max(g_lo, 1e-300) / level);
  const double f_hi = std::log(g_hi / level);
  if (f_lo >= 0.0) return lo;
  boost::uintmax_t iters = 40;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                   boost::math::tools::eps_tolerance<double>(16), iters);
  return 0.5 * (r.first + r.second);
}

SimulationScenario noise_free(SimulationScenario s) {
  s.dephasing = OuChannel{{0.0, 0.0}, 0.0};
  s.amplitude = OuChannel{{0.0, 0.0}, 0.0};
  s.ensemble = 1;
  return s;
}

SimulationScenario static_point(const SimulationScenario& base, double n) {
  SimulationScenario s = noise_free(base);
  if (s.scheme == Scheme::Pdd) s.num_pulses = static_cast<int>(std::lround(n));
  if (s.scheme == Scheme::Cdd || s.scheme == Scheme::Mlcdd) s.rotations = n;
  return s;
}

ContourFit fit_contour(double level, const std::vector<double>& ns, const std::vector<double>& th, Scheme scheme,
                       StaticVariant variant) {
  ContourFit fit;
  fit.level = level;
  fit.n_values = ns;
  fit.thresholds = th;
  const std::size_t m = ns.size();
  if (scheme == Scheme::Cdd) {
    fit.sqrt_model = true;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      num += std::sqrt(ns[i]) * th[i];
      den += ns[i];
    }
    fit.slope = num / den;
    return fit;
  }
  if (variant == StaticVariant::ControlField || scheme == Scheme::Primitive || m == 1) {
    double s = 0.0;
    for (double t : th) s += t;
    fit.intercept = s / m;
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += ns[i];
    my += th[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxy += (ns[i] - mx) * (th[i] - my);
    sxx += (ns[i] - mx) * (ns[i] - mx);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace

double static_shift_infidelity(const SimulationScenario& base, double n, double shift_units) {
  SimulationScenario s = static_point(base, n);
  s.static_shift = shift_units * kTwoPi / scenario_duration(s);
  return run_gate(s).mean_infidelity;
}

StaticScanResult scan_static_shift(const SimulationScenario& base, const StaticScanConfig& cfg) {
  require(!cfg.n_values.empty() && !cfg.shift_values.empty(), "scan_static_shift: empty grid");
  require(std::is_sorted(cfg.shift_values.begin(), cfg.shift_values.end()) && cfg.shift_values.front() >= 0.0,
          "scan_static_shift: shifts must be sorted and >= 0");
  for (double x : cfg.n_values) require(std::isfinite(x) && x > 0.0, "scan_static_shift: N must be > 0");
  SimulationScenario b = base;
  if (cfg.variant == StaticVariant::ControlField) {
    require(b.scheme == Scheme::Mlcdd, "scan_static_shift: control-field variant applies to mlcdd only");
    b.shift_kind = ShiftKind::ControlField;
  } else if (cfg.variant == StaticVariant::BField) {
    b.shift_kind = ShiftKind::BField;
  }

  const int nn = static_cast<int>(cfg.n_values.size());
  const int ns = static_cast<int>(cfg.shift_values.size());
  std::vector<double> grid(static_cast<std::size_t>(nn) * ns);
  parallel_for(nn * ns, b.jobs, [&](int k) {
    grid[k] = static_shift_infidelity(b, cfg.n_values[k / ns], cfg.shift_values[k % ns]);
  });

  StaticScanResult out;
  out.surface.axis_names = {"n", "shift"};
  out.surface.warnings = base.warnings();
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < ns; ++j)
      out.surface.points.push_back({{cfg.n_values[i], cfg.shift_values[j]}, grid[i * ns + j], 0.0, 1});

  for (double level : cfg.levels) {
    require(level > 0.0 && level < 1.0, "scan_static_shift: levels must lie in (0, 1)");
    std::vector<int> idx(nn, -1);
    for (int i = 0; i < nn; ++i) {
      const double* row = &grid[static_cast<std::size_t>(i) * ns];
      if (row[0] > level) continue;
      for (int j = 1; j < ns; ++j)
        if (row[j] > level) {
          idx[i] = j;
          break;
        }
    }
    std::vector<double> thr(nn, 0.0);
    parallel_for(nn, b.jobs, [&](int i) {
      if (idx[i] < 0) return;
      const int j = idx[i];
      const double* row = &grid[static_cast<std::size_t>(i) * ns];
      auto g = [&](double x) { return static_shift_infidelity(b, cfg.n_values[i], x); };
      thr[i] = refine_crossing(g, cfg.shift_values[j - 1], cfg.shift_values[j], level, row[j - 1], row[j]);
    });
    std::vector<double> n_used, t_used;
    for (int i = 0; i < nn; ++i)
      if (idx[i] >= 0) {
        n_used.push_back(cfg.n_values[i]);
        t_used.push_back(thr[i]);
      }
    if (n_used.empty())
      throw Error("scan_static_shift: contour at level " + std::to_string(level) + " not present in the grid");
    out.fits.push_back(fit_contour(level, n_used, t_used, b.scheme, cfg.variant));
  }
  return out;
}

std::vector<HeatingEntry> run_heating_scan(const std::vector<ModulationSequence>& sequences,
                                           const std::vector<std::string>& labels, double heating_rate, double eta,
                                           double tau0, int fock_cutoff) {
  require(labels.empty() || labels.size() == sequences.size(), "run_heating_scan: one label per sequence");
  require(heating_rate >= 0.0, "run_heating_scan: heating rate must be >= 0");
  require(tau0 > 0.0, "run_heating_scan: tau0 must be > 0");
  std::vector<HeatingEntry> out;
  for (std::size_t k = 0; k < sequences.size(); ++k) {
    const ModulationSequence& seq = sequences[k];
    ModeSpec mode;
    mode.eta = eta;
    const int samples = std::max<int>(2000, 64 * static_cast<int>(seq.segments.size()));
    const RobustnessReport rep = robustness_report(compute_pst(seq, mode, {0.0, seq.duration(), samples}), tau0);
    HeatingEntry e;
    e.label = labels.empty() ? "seq" + std::to_string(k) : labels[k];
    e.r_heat = rep.r_heat;
    e.r_time = rep.r_time;
    e.predicted = heating_infidelity(rep.mean_square, heating_rate, seq.duration(), HeatingOrder::Exact);

    SimulationScenario s;
    s.scheme = Scheme::Primitive;
    s.omega0 = seq.base.omega0;
    s.delta0 = seq.base.delta0;
    s.eta = eta;
    s.modulation = seq;
    s.heating_rate = heating_rate;
    s.fock_cutoff = fock_cutoff;
    s.ensemble = 1;
    e.simulated = run_gate(s).mean_infidelity;
    out.push_back(e);
  }
  return out;
}

ModulationSequence robust_pm_sequence(double omega0, double eta) {
  require(omega0 > 0.0 && eta > 0.0, "robust_pm_sequence: omega0 and eta must be > 0");
  ModulationBase base{omega0, 2.0 * eta * omega0, 0.0};
  const double tau0 = kTwoPi / base.delta0;
  ModeSpec mode;
  mode.eta = eta;
  SynthesisTarget target;
  target.target_trajectory = tone_pst(solve_coefficients(2), mode, base, {0.0, tau0, 4000});
  target.kind = ModulationKind::Phase;
  target.base = base;
  target.eta = eta;
  return match_target_pst(target).sequence;
}

namespace {

SimulationScenario thermal_scenario(bool robust, const ThermalConfig& cfg, double n_bar, double qubit_shift,
                                    double motion_shift) {
  SimulationScenario s;
  s.omega0 = cfg.omega0;
  s.eta = cfg.eta;
  s.n_bar = n_bar;
  const double d0 = s.base_detuning();
  s.static_shift = qubit_shift * d0;
  s.motional_shift = motion_shift * d0;
  if (n_bar > 0.0) s.fock_cutoff = default_fock_cutoff(n_bar, cfg.population_floor);
  s.jobs = cfg.jobs;
  if (robust) {
    s.scheme = Scheme::Cdd;
    s.modulation = robust_pm_sequence(cfg.omega0, cfg.eta);
    // Whole carrier turns over the stretched gate.
    s.rotations = cfg.rotations * s.tau0() / s.modulation->duration();
  }
  return s;
}

}  // namespace

double thermal_gate_infidelity(bool robust, const ThermalConfig& cfg, double n_bar, double qubit_shift,
                               double motion_shift) {
  return run_gate(thermal_scenario(robust, cfg, n_bar, qubit_shift, motion_shift)).mean_infidelity;
}

std::vector<ThermalSurface> run_thermal_comparison(const ThermalConfig& cfg) {
  require(!cfg.qubit_shifts.empty() && !cfg.motion_shifts.empty(), "run_thermal_comparison: empty grid");
  std::vector<ThermalSurface> out;
  for (bool robust : {false, true}) {
    for (double nb : cfg.n_bars) {
      ThermalSurface surf;
      surf.label = robust ? "robust" : "primitive";
      surf.n_bar = nb;
      surf.surface.axis_names = {"qubit_shift", "motion_shift"};
      surf.surface.warnings = thermal_scenario(robust, cfg, nb, 0.0, 0.0).warnings();
      for (double da : cfg.qubit_shifts)
        for (double ds : cfg.motion_shifts)
          surf.surface.points.push_back({{da, ds}, thermal_gate_infidelity(robust, cfg, nb, da, ds), 0.0, 1});
      out.push_back(std::move(surf));
    }
  }
  return out;
}

double thermal_contour_radius(bool robust, const ThermalConfig& cfg, double n_bar, double angle, double level,
                              double max_radius) {
  require(level > 0.0 && max_radius > 0.0, "thermal_contour_radius: level and max_radius must be > 0");
  auto g = [&](double r) {
    return thermal_gate_infidelity(robust, cfg, n_bar, r * std::cos(angle), r * std::sin(angle));
  };
  const double g0 = g(0.0);
  if (g0 > level) return 0.0;
  // Geometric bracketing outward from a small radius.
  double lo = 0.0, g_lo = g0;
  double r = max_radius / 256.0;
  while (true) {
    const double gr = g(r);
    if (gr > level) return refine_crossing(g, lo, r, level, g_lo, gr);
    if (r >= max_radius) return max_radius;
    lo = r;
    g_lo = gr;
    r = std::min(2.0 * r, max_radius);
  }
}

std::vector<CatPoint> run_cat_scan(const ModulationSequence& seq, double eta, const std::vector<double>& detunings,
                                   double n_bar) {
  seq.validate();
  const double nominal = kTwoPi / seq.duration();
  std::vector<CatPoint> out;
  out.reserve(detunings.size());
  for (double d : detunings) {
    ModeSpec mode;
    mode.eta = eta;
    mode.detuning_offset = d;
    out.push_back({nominal + d, cat_probability(pst_integrals(seq, mode).alpha_end, n_bar)});
  }
  return out;
}

double cat_curvature(const ModulationSequence& seq, double eta, double n_bar, double step) {
  require(step > 0.0, "cat_curvature: step must be > 0");
  const auto p = run_cat_scan(seq, eta, {-step, 0.0, step}, n_bar);
  return (p[0].probability - 2.0 * p[1].probability + p[2].probability) / (step * step);
}

double gradient_lamb_dicke(const SpectatorConfig& cfg, double nu, double participation) {
  require(nu > 0.0 && cfg.mass > 0.0, "gradient_lamb_dicke: nu and mass must be > 0");
  const double z0 = std::sqrt(kHbar / (2.0 * cfg.mass * nu));
  return cfg.sensitivity * cfg.gradient * z0 / nu * participation;
}

SpectatorResult spectator_mode_bound(const SpectatorConfig& cfg) {
  require(cfg.gradient >= 0.0 && cfg.omega >= 0.0 && cfg.gamma >= 0.0, "spectator_mode_bound: negative input");
  const double b = 1.0 / std::sqrt(2.0);
  const double nu_str = std::sqrt(3.0) * cfg.nu_com;
  const double nu_gate = cfg.gate_on_com ? cfg.nu_com : nu_str;
  const double nu_spec = cfg.gate_on_com ? nu_str : cfg.nu_com;
  SpectatorResult r;
  r.eta_gate = gradient_lamb_dicke(cfg, nu_gate, b);
  r.eta_spectator = gradient_lamb_dicke(cfg, nu_spec, b);
  const double delta = cfg.delta > 0.0 ? cfg.delta : 2.0 * r.eta_gate * cfg.omega;
  // Sideband tones sit at nu_gate + delta; the spectator sees them detuned by the mode gap.
  const double gap = std::abs(nu_spec - nu_gate - delta);
  r.alpha_max = 2.0 * r.eta_spectator * cfg.omega / gap;
  r.n_bar = cfg.gamma / (2.0 * nu_spec);
  const double x = 2.0 * r.alpha_max * r.alpha_max * (r.n_bar + 0.5);
  r.bound = 1.0 - (1.0 - x) * (1.0 - x);
  return r;
}

}  // namespace msgate
