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

#include "msgate/mtms.hpp"
#include "msgate/synthesis.hpp"

using namespace msgate;

namespace {

const double kEta = 0.01;

ModulationBase base() {
  ModulationBase b{kTwoPi * 30e3, 0.0, 0.0};
  b.delta0 = 2.0 * kEta * b.omega0;
  return b;
}

}  // namespace

TEST_CASE("frontier models") {
  CHECK(r_time_model(0.5) == doctest::Approx(1.0));
  CHECK(r_time_model(0.125) == doctest::Approx(2.0));
  CHECK(optimal_heating_infidelity(0.5, 40.0, 1e-3) == doctest::Approx(0.5 * 40.0 * 0.5 * 1e-3));
}

TEST_CASE("phase matching tracks a two-tone path") {
  const auto b = base();
  ModeSpec mode;
  mode.eta = kEta;
  SynthesisTarget t;
  t.base = b;
  t.eta = kEta;
  t.target_trajectory = tone_pst(solve_coefficients(2), mode, b, {0.0, t.tau0(), 4000});
  t.kind = ModulationKind::Phase;
  const MatchResult pm = match_target_pst(t);
  CHECK(pm.r_time == doctest::Approx(1.23).epsilon(0.03));
  CHECK(pm.closure < 0.05);
  CHECK(pm.sequence.duration() == doctest::Approx(pm.r_time * t.tau0()));
  t.kind = ModulationKind::Amplitude;
  CHECK(match_target_pst(t).r_time > pm.r_time);
}

TEST_CASE("target validation") {
  SynthesisTarget t;
  t.base = base();
  CHECK_THROWS_AS(t.validate(), Error);
  t.r_heat = 0.3;
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("optimized path meets the frontier") {
  OptimizerConfig cfg;
  cfg.starts = 3;
  const double r = 0.4;
  const OptimizeResult res = optimize_pst(r, base(), kEta, cfg);
  REQUIRE(res.feasible);
  const double model = r_time_model(r);
  CHECK(res.r_time >= model * (1.0 - 1e-6));
  CHECK(res.r_time <= 1.25 * model);
  CHECK(std::abs(res.report.closure) < 1e-6);
  CHECK(std::abs(res.phase) == doctest::Approx(kPi / 2).epsilon(1e-6));
  CHECK(res.report.r_heat <= r * (1.0 + cfg.mean_square_slack) + 1e-9);
  // Same seed, same path.
  const OptimizeResult again = optimize_pst(r, base(), kEta, cfg);
  CHECK(again.r_time == res.r_time);
}
