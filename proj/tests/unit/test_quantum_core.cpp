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

#include "msgate/quantum_core.hpp"

using namespace msgate;

TEST_CASE("space dimensions follow the basis layout") {
  SpaceSpec s;
  CHECK(s.spin_dim() == 4);
  CHECK(s.dim() == 48);
  s.levels_per_ion = 4;
  CHECK(s.dim() == 16 * 12);
  s.fock_cutoff = 0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("Pauli and ladder algebra") {
  const Mat x = ops::sigma_x(), y = ops::sigma_y(), z = ops::sigma_z();
  CHECK((x * y - y * x - 2.0 * kI * z).norm() < 1e-14);
  const Mat a = ops::annihilation(6);
  const Mat comm = a * a.adjoint() - a.adjoint() * a;
  // [a, a^dag] = 1 except at the truncation edge.
  for (int n = 0; n < 5; ++n) CHECK(std::abs(comm(n, n) - 1.0) < 1e-14);
  CHECK(std::abs(a(1, 2) - std::sqrt(2.0)) < 1e-14);
  const Mat k = ops::kron(ops::identity(2), a);
  CHECK(k.rows() == 12);
  CHECK((ops::on_ion(z, 0, 2) - ops::kron(z, ops::identity(2))).norm() < 1e-14);
  CHECK((ops::collective(z, 2) - ops::on_ion(z, 0, 2) - ops::on_ion(z, 1, 2)).norm() < 1e-14);
}

TEST_CASE("thermal state populations are geometric") {
  const ThermalState th = thermal_state(0.5, 40);
  double sum = 0.0, mean = 0.0;
  for (std::size_t n = 0; n < th.populations.size(); ++n) {
    sum += th.populations[n];
    mean += n * th.populations[n];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(th.populations[1] / th.populations[0] == doctest::Approx(0.5 / 1.5));
  CHECK_THROWS_AS(thermal_state(5.0, 10), Error);
  CHECK_NOTHROW(thermal_state(5.0, 10, true));
}

TEST_CASE("Fock cutoff keeps the thermal tail below tolerance") {
  CHECK(default_fock_cutoff(0.0) == 12);
  CHECK(default_fock_cutoff(0.5) == 13);
  const int c = default_fock_cutoff(5.0);
  CHECK(std::pow(5.0 / 6.0, c) < 1e-6);
  CHECK(std::pow(5.0 / 6.0, c - 1) >= 1e-6);
}

TEST_CASE("state validation") {
  Vec v = Vec::Zero(2);
  v(0) = 1.0;
  CHECK_NOTHROW(QuantumState::ket(v).validate());
  v(1) = 1.0;
  CHECK_THROWS_AS(QuantumState::ket(v).validate(), Error);
  Mat rho = Mat::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(QuantumState::density(rho).validate());
  rho(0, 0) = -0.5;
  rho(1, 1) = 1.5;
  CHECK_THROWS_AS(QuantumState::density(rho).validate(), Error);
}

TEST_CASE("RK4 Rabi oscillation against the closed form") {
  const double omega = kTwoPi * 1e3;
  const HamiltonianFn h = [&](double) -> Operator { return 0.5 * omega * ops::sigma_x(); };
  Vec psi(2);
  psi << 1.0, 0.0;
  const double t = 0.37e-3;
  const auto ev = evolve_unitary(h, QuantumState::ket(psi), {0.0, t, 400});
  const Vec out = ev.states.back().data.col(0);
  CHECK(std::abs(out(0) - std::cos(0.5 * omega * t)) < 1e-10);
  CHECK(std::abs(out(1) - (-kI * std::sin(0.5 * omega * t))) < 1e-10);
  for (const auto& s : ev.states) CHECK(std::abs(s.data.norm() - 1.0) < 1e-10);
}

TEST_CASE("Richardson estimate is small for a resolved grid") {
  const HamiltonianFn h = [](double t) -> Operator { return 2e3 * std::cos(1e3 * t) * ops::sigma_z() + 1e3 * ops::sigma_x(); };
  Vec psi(2);
  psi << 1.0, 0.0;
  IntegratorOptions opt;
  opt.richardson_check = true;
  const auto ev = evolve_unitary(h, QuantumState::ket(psi), {0.0, 1e-2, 2000}, opt);
  CHECK(ev.richardson_error < 1e-8);
}

TEST_CASE("Lindblad amplitude damping") {
  const double gamma = 300.0;
  const HamiltonianFn h = [](double) -> Operator { return Mat::Zero(2, 2); };
  Mat rho = Mat::Zero(2, 2);
  rho(1, 1) = 1.0;
  const std::vector<CollapseOp> c{{ops::ket_bra(2, 0, 1), gamma}};
  const double t = 4e-3;
  const auto ev = evolve_lindblad(h, c, QuantumState::density(rho), {0.0, t, 400});
  const Mat out = ev.states.back().data;
  CHECK(out(1, 1).real() == doctest::Approx(std::exp(-gamma * t)).epsilon(1e-8));
  for (const auto& s : ev.states) CHECK(std::abs(s.data.trace() - cplx(1.0)) < 1e-12);
}

TEST_CASE("Bell target and fidelity") {
  const Vec phi = bell_target(kPi / 2);
  CHECK(phi.norm() == doctest::Approx(1.0));
  // |dd> is index 3, |uu> index 0.
  CHECK(std::abs(phi(3) - std::cos(kPi / 4)) < 1e-14);
  CHECK(std::abs(phi(0) - kI * std::sin(kPi / 4)) < 1e-14);
  CHECK(bell_fidelity(QuantumState::ket(phi), kPi / 2) == doctest::Approx(1.0));
  CHECK(bell_fidelity(QuantumState::ket(phi), -kPi / 2) == doctest::Approx(0.0).epsilon(1e-12));
  const Vec phi4 = bell_target(kPi / 2, 4);
  CHECK(phi4.size() == 16);
  CHECK(phi4.norm() == doctest::Approx(1.0));
}

TEST_CASE("dressed-state qubit embedding") {
  const Vec up = levels::qubit_up(4);
  CHECK(std::abs(up(levels::kMinus) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(up(levels::kPlus) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(levels::qubit_down(4)(levels::kZeroPrime) - 1.0) < 1e-14);
}

TEST_CASE("Hamiltonians are Hermitian") {
  HamiltonianParams p;
  p.omega0 = kTwoPi * 30e3;
  p.delta = 2.0 * p.eta * p.omega0;
  p.omega_c = 10.0 * p.delta;
  p.static_shift = 0.1 * p.delta;
  for (Scheme s : {Scheme::Primitive, Scheme::Cdd, Scheme::Mlcdd}) {
    const Operator h = build_hamiltonian(s, p, 1.3e-4);
    CHECK(h.rows() == space_for(s, p).dim());
    CHECK((h - h.adjoint()).norm() < 1e-9 * h.norm());
  }
}

TEST_CASE("scheme names round trip") {
  for (Scheme s : {Scheme::Primitive, Scheme::Pdd, Scheme::Cdd, Scheme::Mlcdd}) CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("xdd"), Error);
}
