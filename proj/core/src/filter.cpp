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

#include "msgate/filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace msgate {

void PulseSequence::validate() const {
  require(pulse_duration >= 0.0, "PulseSequence: pulse_duration must be >= 0");
  for (std::size_t j = 0; j < timings.size(); ++j) {
    require(timings[j] > 0.0 && timings[j] < 1.0, "PulseSequence: timings must lie in (0, 1)");
    if (j > 0) require(timings[j] > timings[j - 1], "PulseSequence: timings must be strictly increasing");
  }
  require(axes.empty() || axes.size() == timings.size(), "PulseSequence: one axis per pulse");
  for (const auto& n : axes) {
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    require(std::abs(norm - 1.0) < 1e-9, "PulseSequence: axes must be unit vectors");
  }
}

PulseSequence PulseSequence::fid() { return {}; }

PulseSequence PulseSequence::periodic(int segments, double pulse_duration) {
  require(segments >= 1, "PulseSequence::periodic: need at least one segment");
  PulseSequence s;
  s.pulse_duration = pulse_duration;
  for (int j = 1; j < segments; ++j) s.timings.push_back(static_cast<double>(j) / segments);
  return s;
}

PulseSequence PulseSequence::cpmg(int n, double pulse_duration) {
  require(n >= 1, "PulseSequence::cpmg: need at least one pulse");
  PulseSequence s;
  s.pulse_duration = pulse_duration;
  for (int j = 1; j <= n; ++j) s.timings.push_back((j - 0.5) / n);
  return s;
}

double FilterModel::over_omega2(double w) const {
  const double w_small = 1e-4 / std::max(tau, 1e-300);
  const double x = std::max(std::abs(w), w_small);
  return value(x) / (x * x);
}

FilterModel fid_filter(double tau) {
  require(tau > 0.0, "fid_filter: tau must be > 0");
  FilterModel f;
  f.tau = tau;
  f.value = [tau](double w) {
    const double s = std::sin(0.5 * w * tau);
    return 4.0 * s * s;
  };
  f.bandwidth = kTwoPi / tau;
  f.mean_value = 2.0;
  return f;
}

namespace {

void check_fits(const PulseSequence& seq, double tau) {
  seq.validate();
  require(tau > 0.0, "pdd filter: tau must be > 0");
  require(tau > seq.num_pulses() * seq.pulse_duration, "pdd filter: pulses do not fit in tau");
  const double half = 0.5 * seq.pulse_duration / tau;
  for (std::size_t j = 0; j < seq.timings.size(); ++j) {
    require(seq.timings[j] - half >= 0.0 && seq.timings[j] + half <= 1.0, "pdd filter: pulse leaves the window");
    if (j > 0) require(seq.timings[j] - seq.timings[j - 1] >= 2.0 * half, "pdd filter: overlapping pulses");
  }
}

}  // namespace

FilterModel pdd_filter_model(const PulseSequence& seq, double tau) {
  check_fits(seq, tau);
  FilterModel f;
  f.tau = tau;
  const std::vector<double> d = seq.timings;
  const double tp = seq.pulse_duration;
  const int n = seq.num_pulses();
  f.value = [d, tp, tau, n](double w) {
    cplx sum = 1.0 + ((n + 1) % 2 == 0 ? 1.0 : -1.0) * std::exp(cplx(0.0, w * tau));
    const double c = std::cos(0.5 * w * tp);
    for (int j = 0; j < n; ++j) {
      const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
      sum += 2.0 * sign * c * std::exp(cplx(0.0, w * d[j] * tau));
    }
    return std::norm(sum);
  };
  double min_gap = 1.0;
  double prev = 0.0;
  for (double t : d) {
    min_gap = std::min(min_gap, t - prev);
    prev = t;
  }
  min_gap = std::min(min_gap, 1.0 - prev);
  f.bandwidth = kTwoPi / (min_gap * tau);
  if (n > 0) f.features.push_back(kPi / (min_gap * tau));
  f.mean_value = 2.0 + (tp > 0.0 ? 2.0 : 4.0) * n;
  return f;
}

FilterFunction sample(const FilterModel& f, const std::vector<double>& omega) {
  FilterFunction out;
  out.omega = omega;
  out.values.reserve(omega.size());
  for (double w : omega) out.values.push_back(f(w));
  return out;
}

FilterFunction pdd_filter(const PulseSequence& seq, double tau, const std::vector<double>& omega) {
  return sample(pdd_filter_model(seq, tau), omega);
}

FilterModel continuous_drive_filter(double center, double tau) {
  require(tau > 0.0 && center >= 0.0, "continuous_drive_filter: invalid arguments");
  FilterModel f;
  f.tau = tau;
  auto k2 = [tau](double x) {
    // |int_0^tau e^{ixt} dt|^2 = 4 sin^2(x tau/2) / x^2
    if (std::abs(x) * tau < 1e-6) return tau * tau;
    const double s = std::sin(0.5 * x * tau);
    return 4.0 * s * s / (x * x);
  };
  f.value = [k2, center](double w) { return 0.5 * w * w * (k2(w - center) + k2(w + center)); };
  f.bandwidth = center + kTwoPi / tau;
  if (center > 0.0) f.features.push_back(center);
  f.mean_value = 0.0;  // tail decays as 1/w^2 once past the passband
  return f;
}

double chi_overlap(const PowerSpectralDensity& psd, const FilterModel& filter, double tau,
                   const QuadratureOptions& opt) {
  require(tau > 0.0, "chi_overlap: tau must be > 0");
  require(static_cast<bool>(filter.value), "chi_overlap: empty filter");
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto integrand = [&](double w) { return psd(w) * filter.over_omega2(w); };

  double upper = opt.upper_cutoff > 0.0 ? opt.upper_cutoff
                                        : std::max({2000.0 / tau, 100.0 * filter.bandwidth, 100.0 / tau});
  const bool finite_support = std::isfinite(psd.support());
  if (finite_support) upper = std::min(upper, psd.support());

  std::vector<double> edges{0.0, upper};
  const double width = kTwoPi / tau;
  for (double f : filter.features)
    for (double k = -3; k <= 3; ++k) edges.push_back(f + k * 0.5 * width);
  if (psd.corner() > 0.0)
    for (double m : {0.01, 0.1, 0.3, 1.0, 3.0, 10.0, 100.0}) edges.push_back(m * psd.corner());
  const int max_panels = 20000;
  const double step = std::max(0.5 * width, upper / max_panels);
  for (double w = step; w < upper; w += step) edges.push_back(w);
  std::sort(edges.begin(), edges.end());
  std::vector<double> clean;
  for (double e : edges) {
    if (e < 0.0 || e > upper) continue;
    if (clean.empty() || e - clean.back() > 1e-12 * upper) clean.push_back(e);
  }

  double total = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < clean.size(); ++i) {
    double err = 0.0;
    total += GK::integrate(integrand, clean[i], clean[i + 1], opt.max_depth, opt.rel_tol, &err);
    err_total += err;
  }

  // Tail beyond the cutoff: F replaced by its average, w = upper / u.
  if (!finite_support && filter.mean_value > 0.0) {
    auto tail = [&](double u) {
      if (u <= 0.0) return psd(std::numeric_limits<double>::max()) * filter.mean_value / upper;
      return psd(upper / u) * filter.mean_value / upper;
    };
    double err = 0.0;
    total += GK::integrate(tail, 0.0, 1.0, opt.max_depth, opt.rel_tol, &err);
    err_total += err;
  }
  if (!(std::isfinite(total)) || err_total > 1e-3 * std::abs(total) + 1e-300)
    throw ConvergenceError("chi_overlap: quadrature did not converge");
  return total / kPi;  // (1/2pi) * 2 * int_0^inf
}

double chi_overlap(const PowerSpectralDensity& psd, const FilterFunction& filter, double tau) {
  require(tau > 0.0, "chi_overlap: tau must be > 0");
  require(filter.omega.size() == filter.values.size() && filter.omega.size() >= 2,
          "chi_overlap: filter grid needs >= 2 points");
  const auto& w = filter.omega;
  bool one_sided = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) require(w[i] > w[i - 1], "chi_overlap: filter grid must be increasing");
    if (w[i] < 0.0) one_sided = false;
  }
  std::vector<double> g(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) {
      const std::size_t j = i + 1 < w.size() ? i + 1 : i - 1;
      g[i] = psd(0.0) * filter.values[j] / (w[j] * w[j]);
    } else {
      g[i] = psd(w[i]) * filter.values[i] / (w[i] * w[i]);
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) total += 0.5 * (g[i] + g[i + 1]) * (w[i + 1] - w[i]);
  return (one_sided ? 2.0 : 1.0) * total / kTwoPi;
}

}  // namespace msgate
