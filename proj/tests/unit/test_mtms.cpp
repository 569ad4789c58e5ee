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

using namespace msgate;

namespace {

ModulationBase base() {
  ModulationBase b{kTwoPi * 30e3, 0.0, 0.0};
  b.delta0 = 2.0 * 0.01 * b.omega0;
  return b;
}

ModeSpec mode() {
  ModeSpec m;
  m.eta = 0.01;
  return m;
}

}  // namespace

TEST_CASE("two-tone coefficients") {
  const ToneSet t = solve_coefficients(2);
  REQUIRE(t.c.size() == 2);
  CHECK(t.c[0] == doctest::Approx(-1.0 / std::sqrt(3.0)));
  CHECK(t.c[1] == doctest::Approx(2.0 / std::sqrt(3.0)));
  // f(x) = c1 e^{ix} + c2 e^{2ix}: |f|^2 = (5 - 4 cos x) / 3.
  for (double x : {0.0, 0.4, 2.0, kPi}) CHECK(std::norm(tone_signal(t, x)) == doctest::Approx((5.0 - 4.0 * std::cos(x)) / 3.0));
  CHECK(tone_peak(t) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("constraints hold up to sixteen tones") {
  double prev = 2.0;
  for (int n = 1; n <= 16; ++n) {
    const ToneSet t = solve_coefficients(n);
    CHECK(t.norm_residual() < 1e-9);
    CHECK(t.mean_residual() < 1e-9);
    if (n >= 2) {
      const double r = tone_metrics(t, 4000).r_heat_formula;
      CHECK(r < prev);
      prev = r;
    }
  }
  CHECK_THROWS_AS(solve_coefficients(0), Error);
  CHECK_THROWS_AS(solve_coefficients(17), Error);
}

TEST_CASE("single tone metrics") {
  const auto m = tone_metrics(solve_coefficients(1), 4000);
  CHECK(m.r_heat_formula == doctest::Approx(0.5));
  CHECK(m.r_heat == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m.r_time == doctest::Approx(1.0));
}

TEST_CASE("formula and integral agree for two or more tones") {
  for (int n = 2; n <= 6; ++n) {
    const auto m = tone_metrics(solve_coefficients(n), 4000);
    CHECK(m.r_heat_integral == doctest::Approx(m.r_heat_formula).epsilon(1e-6));
    CHECK(m.r_heat_scaled == doctest::Approx(m.r_heat * m.r_time));
  }
}

TEST_CASE("tone trajectories close and match the sampled path") {
  const auto b = base();
  const double tau = kTwoPi / b.delta0;
  for (int n : {1, 3, 5}) {
    const ToneSet t = solve_coefficients(n);
    const auto ints = tone_pst_integrals(t, mode(), b, tau);
    CHECK(std::abs(ints.alpha_end) < 1e-12);
    CHECK(std::abs(ints.area_phase) == doctest::Approx(kPi / 2).epsilon(1e-9));
    const auto traj = tone_pst(t, mode(), b, {0.0, tau, 800});
    CHECK(std::abs(traj.alpha[333] - tone_pst_at(t, mode(), b, traj.times[333])) < 1e-12);
  }
}

TEST_CASE("tone table rows") {
  const auto rows = tone_table(4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].n == 2);
  CHECK(rows[1].metrics.r_time == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
}
