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

TEST_CASE("noise-free primitive gate reaches the Bell state") {
  SimulationScenario s;
  const auto r = run_gate(s);
  CHECK(r.n_traj == 1);
  CHECK(r.mean_infidelity < 1e-6);
  CHECK(r.duration == doctest::Approx(s.tau0()));
}

TEST_CASE("Monte-Carlo results do not depend on the thread count") {
  SimulationScenario s;
  s.dephasing.t2 = 5e-3;
  s.ensemble = 6;
  s.jobs = 1;
  const auto a = run_gate(s);
  s.jobs = 3;
  const auto b = run_gate(s);
  CHECK(a.mean_infidelity == b.mean_infidelity);
  CHECK(a.stderr_infidelity == b.stderr_infidelity);
  CHECK(a.mean_infidelity > 1e-4);
}

TEST_CASE("scenario validation and regime warnings") {
  SimulationScenario s;
  s.eta = -1.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = SimulationScenario{};
  s.scheme = Scheme::Pdd;
  s.num_pulses = 1;
  CHECK_THROWS_AS(s.validate(), Error);
  s = SimulationScenario{};
  s.scheme = Scheme::Cdd;
  s.rotations = 200.0;
  CHECK_FALSE(s.warnings().empty());
  s = SimulationScenario{};
  s.n_bar = 5.0;
  s.fock_cutoff = 10;
  CHECK_FALSE(s.warnings().empty());
}

TEST_CASE("flower timing encloses a quarter-turn phase") {
  const double coupling = 0.01 * kTwoPi * 30e3;
  for (int n : {2, 4, 10}) {
    const FlowerTiming f = flower_timing(n, coupling);
    std::vector<double> phases;
    for (int k = 0; k < n; ++k) phases.push_back((k % 2) ? kPi : 0.0);
    const auto seq = ModulationSequence::phase_modulated({coupling / 0.01, f.delta, 0.0}, f.duration, phases);
    ModeSpec m;
    m.eta = 0.01;
    CHECK(std::abs(pst_integrals(seq, m).area_phase) == doctest::Approx(kPi / 2).epsilon(1e-9));
    CHECK(f.duration == doctest::Approx(n * f.segment));
  }
  CHECK_THROWS_AS(flower_timing(1, coupling), Error);
}

TEST_CASE("heating simulation follows the exact model") {
  const double omega0 = kTwoPi * 40e3, eta = 0.01;
  const ModulationBase b{omega0, 2.0 * eta * omega0, 0.0};
  const double tau0 = kTwoPi / b.delta0;
  const auto e = run_heating_scan({ModulationSequence::primitive(b, tau0)}, {"primitive"}, 40.0, eta, tau0, 10);
  REQUIRE(e.size() == 1);
  CHECK(e[0].r_heat == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(e[0].simulated == doctest::Approx(e[0].predicted).epsilon(0.1));
}

TEST_CASE("gradient coupling") {
  SpectatorConfig cfg;
  const double hbar = 1.054571817e-34;
  const double nu = cfg.nu_com;
  const double z0 = std::sqrt(hbar / (2.0 * cfg.mass * nu));
  const double b = 1.0 / std::sqrt(2.0);
  CHECK(gradient_lamb_dicke(cfg, nu, b) == doctest::Approx(cfg.sensitivity * cfg.gradient * z0 / nu * b).epsilon(1e-6));
  const auto r = spectator_mode_bound(cfg);
  CHECK(r.bound > 0.0);
  CHECK(r.bound < 1.0);
}
