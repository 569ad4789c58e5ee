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
#include <filesystem>

#include "msgate/phase_space.hpp"

using namespace msgate;

namespace {

const double kEta = 0.01;

ModulationBase base() {
  ModulationBase b{kTwoPi * 30e3, 0.0, 0.0};
  b.delta0 = 2.0 * kEta * b.omega0;
  return b;
}

ModeSpec mode() {
  ModeSpec m;
  m.eta = kEta;
  return m;
}

// Closed form of the constant drive: alpha(t) = eta Omega (e^{i delta t} - 1) / (i delta).
cplx constant_alpha(const ModulationBase& b, double t) {
  return kEta * b.omega0 * (std::exp(cplx(0.0, b.delta0 * t)) - 1.0) / cplx(0.0, b.delta0);
}

}  // namespace

TEST_CASE("primitive loop closes with a quarter-turn phase") {
  const auto b = base();
  const double tau = kTwoPi / b.delta0;
  const auto seq = ModulationSequence::primitive(b, tau);
  const auto p = pst_integrals(seq, mode());
  CHECK(std::abs(p.alpha_end) < 1e-12);
  CHECK(std::abs(p.area_phase) == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(std::abs(entangling_phase(seq, mode())) == doctest::Approx(kPi / 2).epsilon(1e-12));
  for (double t : {0.1 * tau, 0.37 * tau, 0.9 * tau}) CHECK(std::abs(pst_at(seq, mode(), t) - constant_alpha(b, t)) < 1e-14);
}

TEST_CASE("segment-exact integrals agree with quadrature of the sampled path") {
  const auto b = base();
  const double tau = kTwoPi / b.delta0;
  const auto seq = ModulationSequence::phase_modulated(b, 1.3 * tau, {0.0, 0.7, -0.4, 1.9, 0.2});
  const auto traj = compute_pst(seq, mode(), {0.0, seq.duration(), 20000});
  Trajectory sampled = traj;
  sampled.exact.reset();
  const auto exact = robustness_report(traj, tau);
  const auto numeric = robustness_report(sampled, tau);
  CHECK(numeric.mean_square == doctest::Approx(exact.mean_square).epsilon(1e-8));
  CHECK(std::abs(numeric.mean_position - exact.mean_position) < 1e-8 * std::abs(exact.mean_position) + 1e-12);
  CHECK(std::abs(traj.alpha.back() - traj.exact->alpha_end) < 1e-12);
}

TEST_CASE("primitive robustness figures") {
  const auto b = base();
  const double tau = kTwoPi / b.delta0;
  const auto traj = compute_pst(ModulationSequence::primitive(b, tau), mode(), {0.0, tau, 2000});
  const auto r = robustness_report(traj, tau);
  CHECK(r.mean_square == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.r_heat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.r_time == doctest::Approx(1.0));
  CHECK(std::abs(r.mean_position - cplx(0.0, 0.5)) < 1e-12);
}

TEST_CASE("heating infidelity") {
  const double x = 40.0 * 0.5 * 1.25e-3;
  CHECK(heating_infidelity(0.5, 40.0, 1.25e-3) ==
        doctest::Approx(0.625 - 0.5 * std::exp(-x) - 0.125 * std::exp(-4.0 * x)));
  CHECK(heating_infidelity(0.5, 40.0, 1.25e-3, HeatingOrder::Linear) == doctest::Approx(x));
  // Unit slope at the origin.
  CHECK(heating_infidelity(1.0, 1e-6, 1.0) == doctest::Approx(1e-6).epsilon(1e-5));
  CHECK(heating_infidelity(1.0, 1e6, 1.0) == doctest::Approx(0.625));
}

TEST_CASE("quadratic detuning sensitivity matches finite differences") {
  const auto b = base();
  const auto seq = ModulationSequence::phase_modulated(b, 1.2 * kTwoPi / b.delta0, {0.0, 1.0, 2.5, 1.0});
  const cplx q = quadratic_sensitivity(seq, mode()).total();
  const double h = b.delta0 * 1e-3;
  auto end = [&](double d) {
    ModeSpec m = mode();
    m.detuning_offset = d;
    return pst_integrals(seq, m).alpha_end;
  };
  const cplx fd = (end(h) - 2.0 * end(0.0) + end(-h)) / (h * h);
  CHECK(std::abs(q - fd) < 1e-4 * std::abs(fd));
}

TEST_CASE("cat probability") {
  CHECK(cat_probability(cplx(0.0), 3.0) == 0.0);
  const cplx a(0.3, -0.2);
  CHECK(cat_probability(a, 0.5) == doctest::Approx(0.5 * (1.0 - std::exp(-2.0 * std::norm(a) * 2.0))));
  CHECK(cat_probability(cplx(100.0), 0.0) == doctest::Approx(0.5));
}

TEST_CASE("Lamb-Dicke residuals and phase errors in the PST infidelity") {
  const auto b = base();
  const double tau = kTwoPi / b.delta0;
  const auto closed = compute_pst(ModulationSequence::primitive(b, tau), mode(), {0.0, tau, 100});
  CHECK(pst_infidelity({closed}, {kPi / 2}, {kPi / 2}) < 1e-20);
  CHECK(pst_infidelity({closed}, {kPi / 2}, {kPi / 2 + 0.01}) ==
        doctest::Approx(1.0 - std::pow(std::cos(0.01), 2)).epsilon(1e-10));
  const auto open = compute_pst(ModulationSequence::primitive(b, 0.5 * tau), mode(), {0.0, 0.5 * tau, 100});
  const double a2 = std::norm(open.alpha.back());
  CHECK(pst_infidelity({open}, {0.0}, {0.0}) == doctest::Approx(1.0 - std::pow(1.0 - 2.0 * a2 * 0.5, 2)));
}

TEST_CASE("time rescaling keeps the shape") {
  const auto b = base();
  const auto seq = ModulationSequence::phase_modulated(b, kTwoPi / b.delta0, {0.0, 0.5, 1.0});
  const auto big = rescale_time(seq, 2.0);
  CHECK(big.duration() == doctest::Approx(2.0 * seq.duration()));
  CHECK(entangling_phase(big, mode()) == doctest::Approx(4.0 * entangling_phase(seq, mode())));
  CHECK(std::abs(pst_integrals(big, mode()).alpha_end - 2.0 * pst_integrals(seq, mode()).alpha_end) < 1e-12);
}

TEST_CASE("modulation JSON round trip") {
  const auto b = base();
  ModulationSequence seq = ModulationSequence::phase_modulated(b, 1e-3, {0.0, 0.25, -1.5});
  seq.segments[1].amplitude = 0.5;
  seq.segments[2].detuning = 123.0;
  const auto back = modulation_from_json(modulation_to_json(seq));
  REQUIRE(back.segments.size() == 3);
  CHECK(back.kind == seq.kind);
  CHECK(back.base.delta0 == seq.base.delta0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.segments[i].duration == seq.segments[i].duration);
    CHECK(back.segments[i].phase == seq.segments[i].phase);
    CHECK(back.segments[i].detuning == seq.segments[i].detuning);
    CHECK(back.segments[i].amplitude == seq.segments[i].amplitude);
  }
  const auto path = std::filesystem::temp_directory_path() / "msgate_mod_test.json";
  save_modulation(seq, path.string());
  CHECK(load_modulation(path.string()).segments.size() == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(modulation_from_json("{\"segments\": 3}"), Error);
}

TEST_CASE("simulator drive follows the trajectory") {
  const auto b = base();
  const auto seq = ModulationSequence::phase_modulated(b, 1e-3, {0.0, 1.0});
  const auto d = to_drive(seq, kEta);
  CHECK(d.duration == doctest::Approx(1e-3));
  REQUIRE(d.breakpoints.size() == 1);
  CHECK(d.breakpoints[0] == doctest::Approx(0.5e-3));
  CHECK(std::abs(d.coupling(0.0) - cplx(kEta * b.omega0, 0.0)) < 1e-12);
  CHECK(std::abs(d.coupling(0.75e-3)) == doctest::Approx(kEta * b.omega0));
}

TEST_CASE("invalid sequences are rejected") {
  ModulationSequence seq;
  CHECK_THROWS_AS(seq.validate(), Error);
  seq = ModulationSequence::primitive(base(), 1e-3);
  seq.segments[0].duration = -1.0;
  CHECK_THROWS_AS(seq.validate(), Error);
}
