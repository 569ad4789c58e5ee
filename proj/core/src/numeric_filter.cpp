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

#include <algorithm>
#include <cmath>
#include <functional>

#include "msgate/filter.hpp"

namespace msgate {

namespace {

using SpinHamiltonian = std::function<void(double t, Mat& h)>;

Mat rk4_unitary(const SpinHamiltonian& hfun, int d, double tau, double max_dt) {
  const int steps = std::max(1, static_cast<int>(std::ceil(tau / max_dt)));
  const double dt = tau / steps;
  Mat u = ops::identity(d);
  Mat h(d, d), k1, k2, k3, k4;
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    hfun(t, h);
    k1 = -kI * (h * u);
    hfun(t + 0.5 * dt, h);
    k2 = -kI * (h * (u + 0.5 * dt * k1));
    k3 = -kI * (h * (u + 0.5 * dt * k2));
    hfun(t + dt, h);
    k4 = -kI * (h * (u + dt * k3));
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

/// Entanglement infidelity of `u` against `u0` restricted to the qubit
/// subspace spanned by the columns of `basis`; trace norms remove the
/// integrator's common-mode norm drift.
double subspace_infidelity(const Mat& u, const Mat& u0, const Mat& basis) {
  const Mat a = basis.adjoint() * u * basis;
  const Mat b = basis.adjoint() * u0 * basis;
  const double norm = (a.adjoint() * a).trace().real() * (b.adjoint() * b).trace().real();
  return std::max(0.0, 1.0 - std::norm((b.adjoint() * a).trace()) / norm);
}

struct Injection {
  int dim = 2;
  Mat drive;    // generator multiplied by omega_c
  Mat noise;    // operator multiplied by the injected tone
  Mat basis;    // qubit subspace
  double scale = 1.0;  // tone amplitude -> effective noise amplitude
};

Injection make_injection(Scheme scheme, double omega_c, NoiseChannel channel) {
  Injection in;
  if (scheme == Scheme::Cdd) {
    in.dim = 2;
    in.drive = 0.5 * omega_c * ops::sigma_x();
    in.basis = ops::identity(2);
    if (channel == NoiseChannel::Dephasing) {
      in.noise = 0.5 * ops::sigma_z();
    } else {
      in.noise = 0.5 * omega_c * ops::sigma_x();
      in.scale = omega_c;
    }
    return in;
  }
  require(scheme == Scheme::Mlcdd, "numeric_filter_function: scheme must be cdd or mlcdd");
  require(channel == NoiseChannel::Dephasing, "numeric_filter_function: mlcdd supports the dephasing channel only");
  using namespace levels;
  in.dim = 4;
  in.drive = 0.5 * omega_c *
             (ops::ket_bra(4, kZero, kMinus) - ops::ket_bra(4, kZero, kPlus) + ops::ket_bra(4, kMinus, kZero) -
              ops::ket_bra(4, kPlus, kZero));
  in.noise = 0.5 * (ops::ket_bra(4, kPlus, kPlus) - ops::ket_bra(4, kMinus, kMinus));
  in.basis.resize(4, 2);
  in.basis.col(0) = qubit_up(4);
  in.basis.col(1) = qubit_down(4);
  return in;
}

}  // namespace

FilterFunction numeric_filter_function(Scheme scheme, double omega_c, double tau, const std::vector<double>& omega,
                                       const NumericFilterOptions& opt) {
  require(omega_c > 0.0, "numeric_filter_function: omega_c must be > 0");
  require(tau > 0.0, "numeric_filter_function: tau must be > 0");
  const Injection in = make_injection(scheme, omega_c, opt.channel);
  const double w_max = std::max(omega_c, *std::max_element(omega.begin(), omega.end()));
  const double max_dt = kTwoPi / (std::max(w_max, kTwoPi / tau) * opt.steps_per_period);

  auto noiseless = [&](double, Mat& h) { h = in.drive; };
  const Mat u0 = rk4_unitary(noiseless, in.dim, tau, max_dt);

  // Phase-averaged response to a tone A cos(w t + phi); two quadratures give the
  // exact uniform-phase average of a quadratic response.
  auto response = [&](double w, double amp) {
    double sum = 0.0;
    for (double phi : {0.0, 0.5 * kPi}) {
      auto h = [&](double t, Mat& out) { out = in.drive + (amp * std::cos(w * t + phi)) * in.noise; };
      sum += subspace_infidelity(rk4_unitary(h, in.dim, tau, max_dt), u0, in.basis);
    }
    return 0.5 * sum;
  };

  FilterFunction out;
  out.omega = omega;
  out.values.reserve(omega.size());
  const double base_amp = opt.amplitude > 0.0 ? opt.amplitude : 0.2 / (tau * in.scale);
  for (double w : omega) {
    require(w >= 0.0, "numeric_filter_function: frequencies must be >= 0");
    double amp = base_amp;
    double r_full = response(w, amp);
    bool ok = false;
    for (int k = 0; k <= opt.max_reductions; ++k) {
      const double r_half = response(w, 0.5 * amp);
      if (r_full < 1e-13 || std::abs(r_full / std::max(r_half, 1e-300) / 4.0 - 1.0) <= opt.quadratic_tol) {
        ok = true;
        break;
      }
      amp *= 0.5;
      r_full = r_half;
    }
    if (!ok) throw ConvergenceError("numeric_filter_function: response is not quadratic in the noise amplitude");
    const double eff = amp * in.scale;
    out.values.push_back(8.0 * w * w * r_full / (eff * eff));
  }
  return out;
}

}  // namespace msgate
