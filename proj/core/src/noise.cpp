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

#include "msgate/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "msgate/filter.hpp"

namespace msgate {

void OUParams::validate() const {
  require(correlation_time > 0.0, "OUParams: correlation_time must be > 0");
  require(stationary_std >= 0.0, "OUParams: stationary_std must be >= 0");
}

PowerSpectralDensity PowerSpectralDensity::white(double level) {
  require(level >= 0.0, "white PSD: level must be >= 0");
  PowerSpectralDensity p;
  p.kind_ = Kind::White;
  p.level_ = level;
  return p;
}

PowerSpectralDensity PowerSpectralDensity::lorentzian(const OUParams& ou) {
  ou.validate();
  PowerSpectralDensity p;
  p.kind_ = Kind::Lorentzian;
  p.ou_ = ou;
  return p;
}

PowerSpectralDensity PowerSpectralDensity::tabulated(std::vector<double> omega, std::vector<double> values) {
  require(omega.size() == values.size() && omega.size() >= 2, "tabulated PSD: need >= 2 matching samples");
  std::vector<std::size_t> idx(omega.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return omega[a] < omega[b]; });
  PowerSpectralDensity p;
  p.kind_ = Kind::Tabulated;
  for (std::size_t i : idx) {
    require(omega[i] >= 0.0, "tabulated PSD: frequencies must be >= 0 (the PSD is even)");
    require(values[i] >= 0.0, "tabulated PSD: values must be >= 0");
    p.omega_.push_back(omega[i]);
    p.values_.push_back(values[i]);
  }
  return p;
}

double PowerSpectralDensity::operator()(double omega) const {
  const double w = std::abs(omega);
  switch (kind_) {
    case Kind::White:
      return level_;
    case Kind::Lorentzian: {
      const double tc = ou_.correlation_time;
      const double s2 = ou_.stationary_std * ou_.stationary_std;
      return 2.0 * s2 * tc / (1.0 + w * w * tc * tc);
    }
    case Kind::Tabulated: {
      if (w < omega_.front() || w > omega_.back()) return 0.0;
      const auto it = std::upper_bound(omega_.begin(), omega_.end(), w);
      if (it == omega_.end()) return values_.back();
      const std::size_t k = static_cast<std::size_t>(it - omega_.begin());
      const double x0 = omega_[k - 1], x1 = omega_[k];
      const double f = (w - x0) / (x1 - x0);
      return values_[k - 1] + f * (values_[k] - values_[k - 1]);
    }
  }
  return 0.0;
}

double PowerSpectralDensity::support() const {
  if (kind_ == Kind::Tabulated) return omega_.back();
  return std::numeric_limits<double>::infinity();
}

double PowerSpectralDensity::corner() const {
  if (kind_ == Kind::Lorentzian) return 1.0 / ou_.correlation_time;
  return 0.0;
}

PowerSpectralDensity ou_psd(const OUParams& p) { return PowerSpectralDensity::lorentzian(p); }

PowerSpectralDensity load_psd_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_psd_csv: cannot open " + path);
  std::vector<double> w, s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a >> b)) {
      if (w.empty()) continue;  // header row
      throw Error("load_psd_csv: malformed row " + std::to_string(lineno) + " in " + path);
    }
    w.push_back(a);
    s.push_back(b);
  }
  return PowerSpectralDensity::tabulated(std::move(w), std::move(s));
}

double NoiseTrajectory::at(double t) const {
  if (samples.empty()) return 0.0;
  const double u = (t - grid.t_start) / grid.dt();
  if (u <= 0.0) return samples.front();
  const auto last = static_cast<double>(samples.size() - 1);
  if (u >= last) return samples.back();
  const auto k = static_cast<std::size_t>(u);
  const double f = u - static_cast<double>(k);
  return samples[k] + f * (samples[k + 1] - samples[k]);
}

NoiseTrajectory sample_ou(const OUParams& p, const TimeGrid& grid, std::uint64_t seed) {
  p.validate();
  require(grid.dt() > 0.0, "sample_ou: grid spacing must be > 0");
  NoiseTrajectory out;
  out.grid = grid;
  out.seed = seed;
  out.samples.assign(static_cast<std::size_t>(grid.size()), 0.0);
  if (p.stationary_std == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double decay = std::exp(-grid.dt() / p.correlation_time);
  const double kick = p.stationary_std * std::sqrt(-std::expm1(-2.0 * grid.dt() / p.correlation_time));
  double x = p.stationary_std * normal(rng);
  out.samples[0] = x;
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    x = x * decay + kick * normal(rng);
    out.samples[i] = x;
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

OUParams calibrate_to_t2(double t2_target, double correlation_time) {
  require(t2_target > 0.0, "calibrate_to_t2: t2_target must be > 0");
  require(correlation_time > 0.0, "calibrate_to_t2: correlation_time must be > 0");
  // chi is proportional to sigma^2, so one overlap at unit sigma fixes the answer;
  // the root find then closes the loop on the actual crossing time.
  OUParams unit{correlation_time, 1.0};
  const FilterModel fid = fid_filter(t2_target);
  const double chi_unit = chi_overlap(ou_psd(unit), fid, t2_target);
  require(chi_unit > 0.0, "calibrate_to_t2: degenerate overlap");
  const double sigma0 = std::sqrt(2.0 / chi_unit);
  auto coherence_gap = [&](double sigma) {
    OUParams p{correlation_time, sigma};
    return 0.5 * chi_overlap(ou_psd(p), fid, t2_target) - 1.0;
  };
  std::uintmax_t iters = 64;
  boost::math::tools::eps_tolerance<double> tol(40);
  const auto r = boost::math::tools::toms748_solve(coherence_gap, 0.5 * sigma0, 2.0 * sigma0, tol, iters);
  if (iters >= 64) throw ConvergenceError("calibrate_to_t2: root find did not converge");
  return OUParams{correlation_time, 0.5 * (r.first + r.second)};
}

}  // namespace msgate
