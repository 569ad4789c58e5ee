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

#include <algorithm>
#include <cmath>

#include "msgate/filter.hpp"

using namespace msgate;

TEST_CASE("free induction filter") {
  const double tau = 1e-3;
  const auto f = fid_filter(tau);
  for (double w : {10.0, 3e3, 7.7e4}) CHECK(f(w) == doctest::Approx(4.0 * std::pow(std::sin(0.5 * w * tau), 2)));
  CHECK(f.over_omega2(0.0) == doctest::Approx(tau * tau).epsilon(1e-6));
}

TEST_CASE("single-pulse echo filter is 16 sin^4") {
  const double tau = 2e-3;
  const auto f = pdd_filter_model(PulseSequence::periodic(2), tau);
  for (double w : {100.0, 2.5e3, 1.9e4}) CHECK(f(w) == doctest::Approx(16.0 * std::pow(std::sin(0.25 * w * tau), 4)));
}

TEST_CASE("pulse trains") {
  const auto p = PulseSequence::periodic(4);
  CHECK(p.timings == std::vector<double>{0.25, 0.5, 0.75});
  const auto c = PulseSequence::cpmg(2);
  CHECK(c.timings == std::vector<double>{0.25, 0.75});
  CHECK(PulseSequence::fid().num_pulses() == 0);
  PulseSequence bad;
  bad.timings = {0.5, 0.4};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("decoupling suppresses low-frequency noise") {
  const double tau = 1e-3;
  const auto psd = ou_psd({1e-2, 200.0});  // slow noise
  const double fid = chi_overlap(psd, fid_filter(tau), tau);
  const double echo = chi_overlap(psd, pdd_filter_model(PulseSequence::periodic(2), tau), tau);
  const double cpmg = chi_overlap(psd, pdd_filter_model(PulseSequence::cpmg(8), tau), tau);
  CHECK(echo < 0.1 * fid);
  CHECK(cpmg < echo);
}

TEST_CASE("sampled and quadrature overlaps agree") {
  const double tau = 1e-3;
  const auto psd = ou_psd({1e-3, 500.0});
  std::vector<double> w;
  for (int i = -40000; i <= 40000; ++i) w.push_back(i * 5.0);
  const double sampled = chi_overlap(psd, sample(fid_filter(tau), w), tau);
  const double quad = chi_overlap(psd, fid_filter(tau), tau);
  CHECK(sampled == doctest::Approx(quad).epsilon(2e-3));
}

TEST_CASE("dephasing infidelity limits") {
  CHECK(dephasing_infidelity(0.0, Scheme::Pdd) == 0.0);
  CHECK(dephasing_infidelity(1e9, Scheme::Cdd) == doctest::Approx(0.5));
  CHECK(dephasing_infidelity(1e9, Scheme::Mlcdd) == doctest::Approx(1.0 / 3.0));
  CHECK(dephasing_infidelity(1e-4, Scheme::Pdd) == doctest::Approx(0.5e-4).epsilon(1e-4));
}

TEST_CASE("pulse rotation errors") {
  const Axis x{1.0, 0.0, 0.0}, y{0.0, 1.0, 0.0};
  CHECK(pulse_error_infidelity({0.0, 0.0}, {x, y}).infidelity < 1e-15);
  const double eps = 0.03;
  CHECK(pulse_error_infidelity({eps}, {x}).infidelity == doctest::Approx(std::pow(std::sin(0.5 * eps), 2)));
  // Two equal errors about the same axis add.
  CHECK(pulse_error_infidelity({eps, eps}, {x, x}).infidelity == doctest::Approx(std::pow(std::sin(eps), 2)));
  // Opposite errors about one axis cancel.
  CHECK(pulse_error_infidelity({eps, -eps}, {x, x}).infidelity < 1e-15);
}

TEST_CASE("continuous drive filter peaks at the drive frequency") {
  const double wc = kTwoPi * 30e3, tau = 1e-3;
  const auto f = continuous_drive_filter(wc, tau);
  CHECK(f(wc) > f(0.9 * wc));
  CHECK(f(wc) > f(1.1 * wc));
  CHECK(f(wc) == doctest::Approx(0.5 * wc * wc * tau * tau).epsilon(1e-3));
}

TEST_CASE("continuous decoupling models") {
  const double wc = kTwoPi * 30e3, tau = 1e-3;
  const auto white = PowerSpectralDensity::white(50.0);
  CHECK(cdd_dephasing_infidelity(white, wc, tau) == doctest::Approx(50.0 * tau / 4.0));
  CHECK(mlcdd_dephasing_infidelity(white, wc, tau) == doctest::Approx(50.0 * tau / 12.0));
  const double nu = kTwoPi * 220e3, om = kTwoPi * 30e3;
  CHECK(cdd_offres_infidelity(wc, om, nu) == doctest::Approx(1.0 / (1.0 + std::pow(nu, 4) / (wc * wc * om * om))));
  const auto slow = ou_psd({1.0, 1e-3});
  const double plain = cdd_amplitude_infidelity(slow, wc, tau);
  const double flipped = cdd_amplitude_infidelity(slow, wc, tau, PulseSequence::periodic(32));
  CHECK(flipped < 0.1 * plain);
}

TEST_CASE("scheme durations") {
  SchemeTiming t;
  t.scheme = Scheme::Cdd;
  t.tau0 = 1e-3;
  t.omega_c = 1e5;
  t.omega_max = 1e6;
  // The carrier takes amplitude from the sideband budget.
  CHECK(scheme_gate_duration(t) == doctest::Approx(1.25e-3));
  t.scheme = Scheme::Pdd;
  t.num_pulses = 4;
  t.pulse_duration = 1e-5;
  t.phase_assisted = true;
  CHECK(scheme_gate_duration(t) == doctest::Approx(1.04e-3));
}

TEST_CASE("static thresholds") {
  CHECK(static_threshold(Scheme::Pdd, StaticVariant::None, 10, 1e-3) == doctest::Approx(0.108));
  CHECK(static_threshold(Scheme::Pdd, StaticVariant::None, 100, 1e-3) == doctest::Approx(1.008));
  CHECK(static_threshold(Scheme::Cdd, StaticVariant::None, 100, 1e-2) == doctest::Approx(2.2));
  CHECK(static_threshold(Scheme::Mlcdd, StaticVariant::ControlField, 50, 1e-4) == doctest::Approx(0.003));
  CHECK_THROWS_AS(static_threshold(Scheme::Pdd, StaticVariant::None, 10, 5e-3), Error);
  CHECK_THROWS_AS(static_threshold(Scheme::Cdd, StaticVariant::ControlField, 10, 1e-3), Error);
}

TEST_CASE("numeric filter peaks at the dressed splitting") {
  const double wc = kTwoPi * 30e3;
  std::vector<double> w;
  for (int i = 0; i <= 10; ++i) w.push_back(wc * (0.5 + 0.05 * i));
  for (auto [scheme, expected] : {std::pair{Scheme::Cdd, 1.0}, std::pair{Scheme::Mlcdd, 0.7}}) {
    const auto f = numeric_filter_function(scheme, wc, 1e-3, w);
    const auto k = std::max_element(f.values.begin(), f.values.end()) - f.values.begin();
    CHECK(w[k] / wc == doctest::Approx(expected).epsilon(0.05 / expected));
  }
}
