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

#include "msgate/mtms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/tools/roots.hpp>

#include "pst_moments.hpp"

namespace msgate {

using detail::moments;

double ToneSet::norm_residual() const {
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += c[j - 1] * c[j - 1] / j;
  return std::abs(s - 1.0);
}

double ToneSet::mean_residual() const {
  if (n == 1) return 0.0;
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += c[j - 1] / j;
  return std::abs(s);
}

void ToneSet::validate() const {
  require(n >= 1, "ToneSet: need at least one tone");
  require(static_cast<int>(c.size()) == n, "ToneSet: coefficient count must equal n");
  for (double v : c) require(std::isfinite(v), "ToneSet: non-finite coefficient");
}

ToneSet solve_coefficients(int n) {
  require(n >= 1 && n <= 16, "solve_coefficients: n must lie in [1, 16]");
  ToneSet t;
  t.n = n;
  if (n == 1) return t;
  auto f = [n](double lam) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += 1.0 / (1.0 - j * lam);
    return s;
  };
  // f runs from -inf just above 1/n to +inf just below 1/(n-1).
  const double lo = 1.0 / n, hi = 1.0 / (n - 1);
  const double pad = 1e-12 * (hi - lo);
  double a = lo + pad, b = hi - pad;
  require(f(a) < 0.0 && f(b) > 0.0, "solve_coefficients: root is not bracketed");
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, a, b, boost::math::tools::eps_tolerance<double>(52), iters);
  if (iters >= 200) throw ConvergenceError("solve_coefficients: root finder did not converge");
  t.lambda = 0.5 * (r.first + r.second);
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += j / ((1.0 - j * t.lambda) * (1.0 - j * t.lambda));
  t.b = -0.25 / std::sqrt(s);
  t.c.resize(n);
  for (int j = 1; j <= n; ++j) t.c[j - 1] = 4.0 * j * t.b / (1.0 - j * t.lambda);
  return t;
}

cplx tone_signal(const ToneSet& tones, double x) {
  cplx s(0.0);
  for (int j = 1; j <= tones.n; ++j) s += tones.c[j - 1] * std::exp(cplx(0.0, j * x));
  return s;
}

double tone_peak(const ToneSet& tones, int samples) {
  tones.validate();
  require(samples >= 16, "tone_peak: need at least 16 samples");
  const double h = kTwoPi / samples;
  auto mag = [&](double x) { return std::abs(tone_signal(tones, x)); };
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i < samples; ++i) {
    const double v = mag(i * h);
    if (v > best_v) best_v = v, best = i;
  }
  // Golden-section search on the bracket around the best sample.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = (best - 1) * h, b = (best + 1) * h;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = mag(x1), f2 = mag(x2);
  while (b - a > 1e-12) {
    if (f1 > f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a), f1 = mag(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a), f2 = mag(x2);
    }
  }
  return std::max({best_v, f1, f2});
}

ToneMetrics tone_metrics(const ToneSet& tones, int samples) {
  tones.validate();
  ToneMetrics m;
  for (int j = 1; j <= tones.n; ++j) m.r_heat_formula += 0.5 * tones.c[j - 1] * tones.c[j - 1] / (double(j) * j);
  // Unit drive: eta Omega0 = 1, delta0 = 2 gives the primitive <|alpha|^2> = 1/2.
  const ModulationBase base{1.0, 2.0, 0.0};
  ModeSpec mode;
  mode.eta = 1.0;
  const PstIntegrals p = tone_pst_integrals(tones, mode, base, kTwoPi / base.delta0);
  m.r_heat_integral = p.int_abs2 / p.duration / 0.5;
  m.r_heat = m.r_heat_integral;
  m.r_time = tone_peak(tones, samples);
  m.r_heat_scaled = m.r_heat * m.r_time;
  return m;
}

namespace {

struct ToneTerm {
  double k;  // mode detuning of the tone
  cplx amp;  // eta c_j Omega0 e^{-i phi0}
};

std::vector<ToneTerm> tone_terms(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base) {
  tones.validate();
  mode.validate();
  std::vector<ToneTerm> out;
  for (int j = 1; j <= tones.n; ++j) {
    const double k = j * base.delta0 + mode.detuning_offset;
    require(k != 0.0, "tone_pst: a tone is resonant with the mode");
    out.push_back({k, mode.eta * tones.c[j - 1] * base.omega0 * std::exp(cplx(0.0, -base.phi0))});
  }
  return out;
}

}  // namespace

PstIntegrals tone_pst_integrals(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base, double tau) {
  require(tau > 0.0, "tone_pst_integrals: tau must be > 0");
  const auto terms = tone_terms(tones, mode, base);
  PstIntegrals out;
  out.duration = tau;
  auto e = [tau](double k) { return moments(k, tau).e1; };
  for (const auto& tj : terms) {
    const auto m = moments(tj.k, tau);
    out.alpha_end += tj.amp * m.e1;
    out.int_alpha += tj.amp * (tau * m.e1 - m.e2);
    out.int_t_alpha += tj.amp * (0.5 * tau * tau * m.e1 - 0.5 * m.e3);
    for (const auto& tl : terms) {
      const cplx w = tj.amp * std::conj(tl.amp);
      if (&tj == &tl) {
        out.int_abs2 += std::norm(tj.amp) * m.g;
      } else {
        out.int_abs2 += std::real(w * (e(tj.k - tl.k) - e(tj.k) - e(-tl.k) + tau)) / (tj.k * tl.k);
      }
      out.area_phase += std::imag(w * (e(tj.k - tl.k) - e(tj.k)) / cplx(0.0, -tl.k));
    }
  }
  return out;
}

cplx tone_pst_at(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base, double t) {
  cplx a(0.0);
  for (const auto& tj : tone_terms(tones, mode, base)) a += tj.amp * moments(tj.k, t).e1;
  return a;
}

Trajectory tone_pst(const ToneSet& tones, const ModeSpec& mode, const ModulationBase& base, const TimeGrid& grid) {
  grid.validate();
  require(grid.t_start == 0.0, "tone_pst: grid must start at 0");
  const auto terms = tone_terms(tones, mode, base);
  Trajectory tr;
  tr.mode = mode;
  for (int i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    cplx a(0.0);
    for (const auto& tj : terms) a += tj.amp * moments(tj.k, t).e1;
    tr.times.push_back(t);
    tr.alpha.push_back(a);
  }
  tr.exact = tone_pst_integrals(tones, mode, base, grid.t_end);
  return tr;
}

SidebandDrive tone_drive(const ToneSet& tones, const ModulationBase& base, double eta) {
  tones.validate();
  require(base.delta0 > 0.0, "tone_drive: delta0 must be > 0");
  SidebandDrive d;
  d.duration = kTwoPi / base.delta0;
  auto c = std::make_shared<std::vector<double>>(tones.c);
  d.coupling = [c, base, eta](double t) {
    cplx s(0.0);
    for (std::size_t j = 0; j < c->size(); ++j) s += (*c)[j] * std::exp(cplx(0.0, (j + 1.0) * base.delta0 * t));
    return eta * base.omega0 * std::exp(cplx(0.0, -base.phi0)) * s;
  };
  return d;
}

std::vector<ToneTableRow> tone_table(int max_n) {
  std::vector<ToneTableRow> rows;
  for (int n = 1; n <= max_n; ++n) {
    ToneTableRow r;
    r.n = n;
    r.tones = solve_coefficients(n);
    r.metrics = tone_metrics(r.tones);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace msgate
