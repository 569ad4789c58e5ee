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

#include "msgate/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pst_moments.hpp"

namespace msgate {

using detail::moments;

void SynthesisTarget::validate() const {
  require(target_trajectory.has_value() != r_heat.has_value(),
          "SynthesisTarget: set exactly one of target_trajectory and r_heat");
  require(base.omega0 > 0.0 && base.delta0 > 0.0, "SynthesisTarget: base drive must be positive");
  require(eta > 0.0, "SynthesisTarget: eta must be > 0");
  require(t_chunk >= 0.0 && t_chunk <= tau0() / 50.0 * (1.0 + 1e-12),
          "SynthesisTarget: t_chunk must not exceed tau0 / 50");
  if (r_heat) require(*r_heat > 0.0, "SynthesisTarget: r_heat must be > 0");
  if (target_trajectory) {
    require(target_trajectory->times.size() >= 3 && target_trajectory->times.size() == target_trajectory->alpha.size(),
            "SynthesisTarget: target trajectory needs at least three samples");
  }
}

namespace {

struct Polyline {
  const std::vector<cplx>& p;
  double scale = 1.0;

  /// Closest point on segments [first, last) strictly beyond position `after`
  /// (position = segment index + fraction).
  std::pair<double, double> closest(cplx z, std::size_t first, std::size_t last, double after) const {
    double best_d = std::numeric_limits<double>::infinity(), best_pos = -1.0;
    for (std::size_t i = first; i < last; ++i) {
      const cplx a = p[i], d = p[i + 1] - p[i];
      const double len2 = std::norm(d);
      double u = len2 > 0.0 ? std::clamp(std::real(std::conj(d) * (z - a)) / len2, 0.0, 1.0) : 0.0;
      double pos = static_cast<double>(i) + u;
      if (pos <= after) {
        u = std::min(1.0, after - static_cast<double>(i) + 1e-9);
        pos = static_cast<double>(i) + u;
        if (pos <= after) continue;
      }
      const double dist = std::abs(z - (a + u * d));
      if (dist < best_d) best_d = dist, best_pos = pos;
    }
    return {best_d, best_pos};
  }

  cplx at(double pos) const {
    const std::size_t i = std::min(static_cast<std::size_t>(pos), p.size() - 2);
    return p[i] + (pos - static_cast<double>(i)) * (p[i + 1] - p[i]);
  }
};

/// Golden-section minimization of f on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a), f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a), f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

double radius_scale(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const auto& z : a) s = std::max(s, std::abs(z));
  return s > 0.0 ? s : 1.0;
}

MatchResult greedy_match(const SynthesisTarget& tg, double h) {
  const Trajectory& tr = *tg.target_trajectory;
  const Polyline line{tr.alpha, radius_scale(tr.alpha)};
  const std::size_t nseg = tr.alpha.size() - 1;
  const double sample_dt = (tr.times.back() - tr.times.front()) / static_cast<double>(nseg);
  const std::size_t window = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(20.0 * h / sample_dt)));
  const double g = tg.eta * tg.base.omega0;
  const bool pm = tg.kind == ModulationKind::Phase;
  const int grid = pm ? 360 : 361;
  const double lo = pm ? 0.0 : tg.base.delta0 - kPi / h;
  const double span = pm ? kTwoPi : kTwoPi / h;
  const std::size_t max_chunks = static_cast<std::size_t>(std::ceil(50.0 * tg.tau0() / h));

  MatchResult res;
  res.sequence.kind = tg.kind;
  res.sequence.base = tg.base;
  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i < nseg; ++i) cum.push_back(cum.back() + std::abs(tr.alpha[i + 1] - tr.alpha[i]));
  auto remaining = [&](double p) {
    const std::size_t i = std::min(static_cast<std::size_t>(p), nseg - 1);
    return cum.back() - cum[i] - (p - static_cast<double>(i)) * (cum[i + 1] - cum[i]);
  };
  cplx alpha(0.0);
  double theta = 0.0, pos = 0.0;
  while (pos < static_cast<double>(nseg) - 1e-9) {
    // Final chunk: shorten it so the path lands on the target end point exactly.
    if (remaining(pos) <= 1.5 * g * h) {
      const cplx delta = tr.alpha.back() - alpha;
      const double need = std::abs(delta) / g;
      double dur = 0.0, param = 0.0;
      if (pm) {
        // |e1(delta0, dur)| = dur sinc(delta0 dur / 2) = need, monotone below half a turn.
        auto reach = [&](double d) { return std::abs(moments(tg.base.delta0, d).e1) - need; };
        if (reach(h) >= 0.0) {
          double a = 0.0, b = h;
          for (int it = 0; it < 200 && b - a > 1e-15 * h; ++it) (reach(0.5 * (a + b)) < 0.0 ? a : b) = 0.5 * (a + b);
          dur = 0.5 * (a + b);
          const cplx e1 = moments(tg.base.delta0, dur).e1;
          param = std::arg(std::exp(cplx(0.0, theta - tg.base.phi0)) * e1 / delta);
        }
      } else {
        // Detuning d over duration dur turns the step by beta = d dur / 2.
        const double beta = std::remainder(std::arg(delta) - (theta - tg.base.phi0) - 0.5 * kPi, kTwoPi) + 0.5 * kPi;
        const double b = std::remainder(beta, kTwoPi);
        const double sinc = std::abs(b) < 1e-12 ? 1.0 : std::sin(b) / b;
        if (sinc > 0.0 && need / sinc <= h) {
          dur = need / sinc;
          param = dur > 0.0 ? 2.0 * b / dur : tg.base.delta0;
        }
      }
      if (dur > 0.0) {
        Segment s;
        s.duration = dur;
        s.phase = pm ? param : 0.0;
        s.detuning = pm ? tg.base.delta0 : param;
        alpha += g * std::exp(cplx(0.0, theta - tg.base.phi0 - s.phase)) * moments(s.detuning, dur).e1;
        res.sequence.segments.push_back(s);
        res.envelope.push_back(param);
        res.max_residual = std::max(res.max_residual, std::abs(alpha - tr.alpha.back()) / line.scale);
        break;
      }
    }
    if (res.sequence.segments.size() >= max_chunks)
      throw ConvergenceError("match_target_pst: no intersection found within the search window");
    const std::size_t first = static_cast<std::size_t>(pos);
    const std::size_t last = std::min(nseg, first + window);
    auto end_point = [&](double x) {
      const double d = pm ? tg.base.delta0 : x;
      const double ph = pm ? x : 0.0;
      return alpha + g * std::exp(cplx(0.0, theta - tg.base.phi0 - ph)) * moments(d, h).e1;
    };
    auto cost = [&](double x) { return line.closest(end_point(x), first, last, pos).first; };
    double best_x = lo, best_c = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
      const double x = lo + span * k / (pm ? grid : grid - 1);
      const double c = cost(x);
      if (c < best_c) best_c = c, best_x = x;
    }
    const double step = span / grid;
    const double x = golden_min(cost, best_x - step, best_x + step, 1e-10 * std::max(1.0, span));
    const auto [dist, next] = line.closest(end_point(x), first, last, pos);
    if (next < 0.0) throw ConvergenceError("match_target_pst: no intersection found within the search window");
    res.max_residual = std::max(res.max_residual, dist / line.scale);
    Segment s;
    s.duration = h;
    s.phase = pm ? x : 0.0;
    s.detuning = pm ? tg.base.delta0 : x;
    res.sequence.segments.push_back(s);
    res.envelope.push_back(x);
    alpha = end_point(x);
    theta += s.detuning * h;
    pos = next;
  }
  res.closure = std::abs(alpha) / line.scale;
  res.r_time = res.sequence.duration() / tg.tau0();
  return res;
}

MatchResult tangent_match(const SynthesisTarget& tg, double h) {
  const Trajectory& tr = *tg.target_trajectory;
  std::vector<cplx> pts;
  for (const auto& z : tr.alpha)
    if (pts.empty() || std::abs(z - pts.back()) > 0.0) pts.push_back(z);
  require(pts.size() >= 3, "match_target_pst: degenerate target trajectory");
  const double scale = radius_scale(pts);
  const std::size_t nseg = pts.size() - 1;
  std::vector<double> psi(nseg), len(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    const cplx d = pts[i + 1] - pts[i];
    len[i] = std::abs(d);
    psi[i] = std::arg(d);
    if (i > 0) {
      double step = std::remainder(psi[i] - psi[i - 1], kTwoPi);
      psi[i] = psi[i - 1] + step;
    }
  }
  const double sign = psi.back() >= psi.front() ? 1.0 : -1.0;
  // Drive time runs with the tangent angle: t = (psi - psi0) / delta_am, and the
  // amplitude a = delta_am (ds/dpsi) / g must stay below one.
  const double g = tg.eta * tg.base.omega0;
  double rate = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nseg; ++i) {
    const double dpsi = sign * (psi[i] - psi[i - 1]);
    if (dpsi <= 0.0) throw Error("match_target_pst: target tangent is not monotone, amplitude-only matching impossible");
    rate = std::min(rate, dpsi / (0.5 * (len[i - 1] + len[i])));
  }
  const double delta_am = sign * g * rate;
  // Arc length as a function of drive time, through the segment midpoints.
  std::vector<double> tk{0.0}, sk{0.0};
  double s = 0.0;
  for (std::size_t i = 0; i < nseg; ++i) {
    tk.push_back((psi[i] - psi.front()) / delta_am + (i == 0 ? 1e-300 : 0.0));
    sk.push_back(s + 0.5 * len[i]);
    s += len[i];
  }
  const double total_t = (psi.back() - psi.front()) / delta_am;
  tk.push_back(total_t * (1.0 + 1e-15) + 1e-300);
  sk.push_back(s);
  auto arc = [&](double t) {
    const auto it = std::upper_bound(tk.begin(), tk.end(), t);
    if (it == tk.begin()) return 0.0;
    if (it == tk.end()) return s;
    const std::size_t j = static_cast<std::size_t>(it - tk.begin());
    const double w = (t - tk[j - 1]) / (tk[j] - tk[j - 1]);
    return sk[j - 1] + w * (sk[j] - sk[j - 1]);
  };
  std::vector<double> cum{0.0};
  for (double l : len) cum.push_back(cum.back() + l);
  auto point_at = [&](double arc_len) {
    const auto it = std::upper_bound(cum.begin(), cum.end(), arc_len);
    const std::size_t i = std::min<std::size_t>(nseg - 1, it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1);
    const double w = len[i] > 0.0 ? std::clamp((arc_len - cum[i]) / len[i], 0.0, 1.0) : 0.0;
    return pts[i] + w * (pts[i + 1] - pts[i]);
  };

  MatchResult res;
  res.sequence.kind = ModulationKind::Amplitude;
  res.sequence.base = tg.base;
  const double phase = -psi.front() - tg.base.phi0;
  cplx alpha(0.0);
  double t = 0.0;
  while (t < total_t * (1.0 - 1e-12)) {
    const double dur = std::min(h, total_t - t);
    const double amp = std::clamp((arc(t + dur) - arc(t)) / (g * dur), 0.0, 1.0);
    res.sequence.segments.push_back({dur, phase, delta_am, amp});
    res.envelope.push_back(amp);
    alpha += g * amp * std::exp(cplx(0.0, delta_am * t - tg.base.phi0 - phase)) * moments(delta_am, dur).e1;
    t += dur;
    res.max_residual = std::max(res.max_residual, std::abs(alpha - point_at(arc(t))) / scale);
  }
  res.closure = std::abs(alpha - pts.back()) / scale;
  res.r_time = res.sequence.duration() / tg.tau0();
  return res;
}

}  // namespace

MatchResult match_target_pst(const SynthesisTarget& target) {
  target.validate();
  require(target.target_trajectory.has_value(), "match_target_pst: a target trajectory is required");
  const double h = target.t_chunk > 0.0 ? target.t_chunk : target.tau0() / 200.0;
  switch (target.kind) {
    case ModulationKind::Phase:
    case ModulationKind::Frequency:
      return greedy_match(target, h);
    case ModulationKind::Amplitude:
      return tangent_match(target, h);
    case ModulationKind::Composite:
      break;
  }
  throw Error("match_target_pst: composite matching is not supported");
}

double am_envelope_residual(const MatchResult& am) {
  require(!am.envelope.empty(), "am_envelope_residual: empty envelope");
  const double total = am.sequence.duration();
  double t = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < am.envelope.size(); ++k) {
    const double dur = am.sequence.segments[k].duration;
    const double model = std::pow(std::sin(kPi * (t + 0.5 * dur) / total), 2);
    sum += std::pow(am.envelope[k] - model, 2);
    t += dur;
  }
  return std::sqrt(sum / static_cast<double>(am.envelope.size()));
}

double r_time_model(double r_heat) {
  require(r_heat > 0.0, "r_time_model: r_heat must be > 0");
  return 1.0 / std::sqrt(2.0 * r_heat);
}

double optimal_heating_infidelity(double r_heat, double heating_rate, double tau0) {
  require(r_heat > 0.0 && heating_rate >= 0.0 && tau0 > 0.0, "optimal_heating_infidelity: invalid arguments");
  return 0.5 * heating_rate * std::sqrt(0.5 * r_heat) * tau0;
}

}  // namespace msgate
