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

#include "msgate/gate_sim.hpp"

using namespace msgate;

TEST_CASE("static scans vanish at zero shift") {
  SimulationScenario s;
  s.scheme = Scheme::Pdd;
  s.num_pulses = 2;
  CHECK(static_shift_infidelity(s, 10, 0.0) < 1e-6);
  CHECK(static_shift_infidelity(s, 10, 0.5) > static_shift_infidelity(s, 10, 0.05));
}

TEST_CASE("cat scan minimum sits at the nominal detuning") {
  const double omega0 = kTwoPi * 30e3;
  const ModulationBase b{omega0, kTwoPi * 321.0, 0.0};
  const double eta = b.delta0 / (2.0 * omega0);
  const auto seq = ModulationSequence::primitive(b, kTwoPi / b.delta0);
  const auto scan = run_cat_scan(seq, eta, {-kTwoPi * 20.0, 0.0, kTwoPi * 20.0}, 0.0);
  REQUIRE(scan.size() == 3);
  CHECK(scan[1].probability < 1e-9);
  CHECK(scan[0].probability > 1e-3);
  CHECK(scan[1].detuning == doctest::Approx(b.delta0));
  CHECK(cat_curvature(seq, eta, 0.0, kTwoPi * 2.0) > 0.0);
}

TEST_CASE("cold primitive contour radius is finite") {
  ThermalConfig cfg;
  const double r = thermal_contour_radius(false, cfg, 0.0, 0.3, 1e-3, 2.0);
  CHECK(r > 0.0);
  CHECK(r < 2.0);
  CHECK(thermal_gate_infidelity(false, cfg, 0.0, 0.0, 0.0) < 1e-6);
}
