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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "msgate/filter.hpp"
#include "msgate/noise.hpp"

using namespace msgate;

namespace {

// Phase variance of an OU process over [0, t]: 2 sigma^2 tc^2 (x - 1 + e^-x), x = t / tc.
double ou_phase_variance(const OUParams& p, double t) {
  const double x = t / p.correlation_time;
  return 2.0 * p.stationary_std * p.stationary_std * p.correlation_time * p.correlation_time * (x - 1.0 + std::exp(-x));
}

}  // namespace

TEST_CASE("OU spectrum is Lorentzian") {
  const OUParams p{2e-3, 300.0};
  const auto s = ou_psd(p);
  CHECK(s(0.0) == doctest::Approx(2.0 * 300.0 * 300.0 * 2e-3));
  CHECK(s(1.0 / p.correlation_time) == doctest::Approx(0.5 * s(0.0)));
  CHECK(s(-5e3) == doctest::Approx(s(5e3)));
  CHECK(PowerSpectralDensity::white(3.0)(1e9) == doctest::Approx(3.0));
}

TEST_CASE("OU samples have the stationary variance and correlation") {
  const OUParams p{1e-3, 2.0};
  const TimeGrid g{0.0, 20.0, 200000};
  const auto tr = sample_ou(p, g, 11);
  double m = 0.0, v = 0.0, c = 0.0;
  const int lag = 10;  // one correlation time
  for (double x : tr.samples) m += x;
  m /= tr.samples.size();
  for (double x : tr.samples) v += (x - m) * (x - m);
  v /= tr.samples.size();
  for (std::size_t i = lag; i < tr.samples.size(); ++i) c += (tr.samples[i] - m) * (tr.samples[i - lag] - m);
  c /= (tr.samples.size() - lag);
  CHECK(v == doctest::Approx(4.0).epsilon(0.05));
  CHECK(c / v == doctest::Approx(std::exp(-1.0)).epsilon(0.05));
}

TEST_CASE("OU sampling is reproducible and seeds decorrelate") {
  const OUParams p{1e-3, 1.0};
  const TimeGrid g{0.0, 1e-2, 100};
  CHECK(sample_ou(p, g, 5).samples == sample_ou(p, g, 5).samples);
  CHECK(sample_ou(p, g, 5).samples != sample_ou(p, g, 6).samples);
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(9, 4) == derive_seed(9, 4));
}

TEST_CASE("trajectory interpolation is linear and clamped") {
  NoiseTrajectory tr;
  tr.grid = {0.0, 1.0, 2};
  tr.samples = {0.0, 2.0, 6.0};
  CHECK(tr.at(0.25) == doctest::Approx(1.0));
  CHECK(tr.at(0.75) == doctest::Approx(4.0));
  CHECK(tr.at(-1.0) == doctest::Approx(0.0));
  CHECK(tr.at(3.0) == doctest::Approx(6.0));
}

TEST_CASE("T2 calibration puts the FID coherence at 1/e") {
  for (double tc : {1e-4, 1e-3, 1e-2}) {
    const double t2 = 2e-3;
    const OUParams p = calibrate_to_t2(t2, tc);
    CHECK(ou_phase_variance(p, t2) == doctest::Approx(2.0).epsilon(1e-6));
    // Dual route through the filter overlap.
    CHECK(chi_overlap(ou_psd(p), fid_filter(t2), t2) == doctest::Approx(2.0).epsilon(1e-5));
  }
}

TEST_CASE("tabulated spectra load from CSV") {
  const auto path = std::filesystem::temp_directory_path() / "msgate_psd_test.csv";
  {
    std::ofstream out(path);
    out << "# measured\nomega,S\n0,4\n10,2\n20,0\n";
  }
  const auto s = load_psd_csv(path.string());
  CHECK(s.kind() == PowerSpectralDensity::Kind::Tabulated);
  CHECK(s(5.0) == doctest::Approx(3.0));
  CHECK(s(-15.0) == doctest::Approx(1.0));
  CHECK(s(30.0) == doctest::Approx(0.0));
  CHECK(s.support() == doctest::Approx(20.0));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_psd_csv("/nonexistent/psd.csv"), Error);
}

TEST_CASE("OU parameters are validated") {
  CHECK_THROWS_AS((OUParams{0.0, 1.0}.validate()), Error);
  CHECK_THROWS_AS((OUParams{1e-3, -1.0}.validate()), Error);
}
