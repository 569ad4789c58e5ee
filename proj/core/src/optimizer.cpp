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
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "msgate/synthesis.hpp"

namespace msgate {

void OptimizerConfig::validate() const {
  require(n_segments >= 2 && n_segments % 2 == 0, "OptimizerConfig: n_segments must be even and >= 2");
  require(max_iterations > 0 && outer_iterations > 0 && starts > 0, "OptimizerConfig: iteration counts must be > 0");
  require(tolerance > 0.0, "OptimizerConfig: tolerance must be > 0");
  require(closure_weight > 0.0 && mean_weight > 0.0 && heat_weight > 0.0, "OptimizerConfig: weights must be > 0");
  require(mean_square_slack >= 0.0, "OptimizerConfig: mean_square_slack must be >= 0");
}

namespace {

// Unit problem: eta Omega0 = 1, tau = 1, x = (first-half phases, xi = delta tau).
struct UnitPath {
  int n;

  ModulationSequence sequence(const RVec& x) const {
    const int half = n / 2;
    std::vector<double> phases(static_cast<std::size_t>(n));
    for (int k = 0; k < half; ++k) {
      phases[static_cast<std::size_t>(k)] = x[k];
      phases[static_cast<std::size_t>(n - 1 - k)] = -x[k];
    }
    ModulationSequence m = ModulationSequence::phase_modulated({1.0, x[half], 0.0}, 1.0, phases);
    return m;
  }

  PstIntegrals integrals(const RVec& x) const {
    ModeSpec mode;
    mode.eta = 1.0;
    return pst_integrals(sequence(x), mode);
  }
};

struct Evaluation {
  double area;     // signed enclosed-area phase
  double closure;  // component of alpha(1) left free by the mirror symmetry
  double mean;     // component of int alpha left free by the mirror symmetry
  double heat;     // R |A| - pi I2 (>= 0 when feasible)
};

Evaluation evaluate(const UnitPath& path, const RVec& x, double r_heat) {
  const PstIntegrals p = path.integrals(x);
  const cplx rot = std::exp(cplx(0.0, -0.5 * x[path.n / 2]));
  return {p.area_phase, std::real(p.alpha_end * rot), std::imag(p.int_alpha * rot),
          r_heat * std::abs(p.area_phase) - kPi * p.int_abs2};
}

using Objective = std::function<double(const RVec&)>;

RVec gradient(const Objective& f, RVec x) {
  RVec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
    const double xi = x[i];
    x[i] = xi + h;
    const double fp = f(x);
    x[i] = xi - h;
    const double fm = f(x);
    x[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

/// BFGS with Armijo backtracking; returns the final point.
RVec bfgs(const Objective& f, RVec x, int max_iter, double tol) {
  const Eigen::Index d = x.size();
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(d, d);
  double fx = f(x);
  RVec g = gradient(f, x);
  for (int it = 0; it < max_iter; ++it) {
    if (g.norm() < tol) break;
    RVec p = -hinv * g;
    if (p.dot(g) >= 0.0) {
      hinv.setIdentity();
      p = -g;
    }
    double step = 1.0, fn = 0.0;
    RVec xn;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      xn = x + step * p;
      fn = f(xn);
      if (fn <= fx + 1e-4 * step * g.dot(p)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const RVec gn = gradient(f, xn);
    const RVec s = xn - x, y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    const double df = std::abs(fx - fn);
    x = xn, fx = fn, g = gn;
    if (df < 1e-15 * std::max(1.0, std::abs(fx))) break;
  }
  return x;
}

/// Augmented Lagrangian: maximize |A| subject to closure = mean = 0 and heat >= 0.
RVec augmented_lagrangian(const UnitPath& path, RVec x, double r_heat, const OptimizerConfig& cfg) {
  double l_closure = 0.0, l_mean = 0.0, l_heat = 0.0, mu = 10.0;
  double prev_violation = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < cfg.outer_iterations; ++outer) {
    auto lagrangian = [&](const RVec& v) {
      const Evaluation e = evaluate(path, v, r_heat);
      const double c1 = cfg.closure_weight * e.closure, c2 = cfg.mean_weight * e.mean, g = cfg.heat_weight * e.heat;
      const double shifted = std::max(0.0, l_heat - mu * g);
      return -std::abs(e.area) + l_closure * c1 + l_mean * c2 + 0.5 * mu * (c1 * c1 + c2 * c2) +
             (shifted * shifted - l_heat * l_heat) / (2.0 * mu);
    };
    x = bfgs(lagrangian, x, cfg.max_iterations, cfg.tolerance);
    const Evaluation e = evaluate(path, x, r_heat);
    const double c1 = cfg.closure_weight * e.closure, c2 = cfg.mean_weight * e.mean, g = cfg.heat_weight * e.heat;
    l_closure += mu * c1;
    l_mean += mu * c2;
    l_heat = std::max(0.0, l_heat - mu * g);
    const double violation = std::max({std::abs(c1), std::abs(c2), std::max(0.0, -g)});
    if (violation < cfg.tolerance) break;
    if (violation > 0.25 * prev_violation) mu = std::min(mu * 10.0, 1e10);
    prev_violation = violation;
  }
  return x;
}

}  // namespace

OptimizeResult optimize_pst(double r_heat, const ModulationBase& base, double eta, const OptimizerConfig& config) {
  config.validate();
  require(r_heat >= 0.05 && r_heat <= 1.0, "optimize_pst: r_heat must lie in [0.05, 1]");
  require(base.omega0 > 0.0 && base.delta0 > 0.0 && eta > 0.0, "optimize_pst: base drive must be positive");
  const UnitPath path{config.n_segments};
  const int half = config.n_segments / 2;
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uphase(-kPi, kPi);
  std::uniform_real_distribution<double> uxi(1.0, std::max(1.5, 2.0 / std::sqrt(2.0 * r_heat)));

  OptimizeResult best;
  best.r_heat_target = r_heat;
  best.r_time = std::numeric_limits<double>::infinity();
  const double tau0 = kTwoPi / base.delta0;
  const double g = eta * base.omega0;
  for (int s = 0; s < config.starts; ++s) {
    RVec x(half + 1);
    for (int k = 0; k < half; ++k) x[k] = uphase(rng);
    x[half] = kTwoPi * uxi(rng);
    x = augmented_lagrangian(path, x, r_heat, config);
    const PstIntegrals p = path.integrals(x);
    if (std::abs(p.area_phase) < 1e-9) continue;
    // Rescale to |Psi| = pi/2: alpha scales with g tau, Psi with (g tau)^2.
    const double tau = std::sqrt(0.5 * kPi / std::abs(p.area_phase)) / g;
    const double gt = g * tau;
    const double closure = gt * std::abs(p.alpha_end);
    const double mean = gt * std::abs(p.int_alpha);
    const double rh = gt * gt * p.int_abs2 / 0.5;
    if (closure >= 1e-6 || mean >= 1e-6 || rh > r_heat * (1.0 + config.mean_square_slack)) continue;
    const double r_time = tau / tau0;
    if (r_time >= best.r_time) continue;
    ModulationSequence unit = path.sequence(x);
    ModulationSequence seq;
    seq.kind = ModulationKind::Phase;
    seq.base = base;
    for (const auto& sg : unit.segments)
      seq.segments.push_back({sg.duration * tau, sg.phase, x[half] / tau, 1.0});
    ModeSpec mode;
    mode.eta = eta;
    const int samples = 64 * config.n_segments;
    best.sequence = seq;
    best.report = robustness_report(compute_pst(seq, mode, {0.0, seq.duration(), samples}), tau0);
    best.phase = entangling_phase(seq, mode);
    best.r_time = r_time;
    best.feasible = true;
  }
  if (!best.feasible) {
    best.r_time = 0.0;
    best.message = "no start met the closure, zero-mean and heating constraints; target infeasible for " +
                   std::to_string(config.n_segments) + " segments";
  }
  return best;
}

OptimizeResult optimize_pst(const SynthesisTarget& target, const OptimizerConfig& config) {
  target.validate();
  require(target.r_heat.has_value(), "optimize_pst: an r_heat target is required");
  OptimizerConfig cfg = config;
  if (target.segment_count > 0) cfg.n_segments = target.segment_count;
  return optimize_pst(*target.r_heat, target.base, target.eta, cfg);
}

}  // namespace msgate
