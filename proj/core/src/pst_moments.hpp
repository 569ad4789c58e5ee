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

#pragma once

#include <cmath>

#include "msgate/common.hpp"

namespace msgate::detail {

inline constexpr double kSeriesX = 1e-2;

// Moment integrals over one segment, x = delta h:
//   e1 = int_0^h e^{i d u} du, e2 = int_0^h u e^{i d u} du, e3 = int_0^h u^2 e^{i d u} du,
//   g  = int_0^h |e1(s)|^2 ds.
struct Moments {
  cplx e1, e2, e3;
  double g;
};

inline Moments moments(double d, double h) {
  const double x = d * h;
  const cplx ix(0.0, x);
  Moments m;
  if (std::abs(x) < kSeriesX) {
    const double x2 = x * x, x4 = x2 * x2;
    m.e1 = h * cplx(1.0 - x2 / 6.0 + x4 / 120.0, x / 2.0 - x * x2 / 24.0);
    m.e2 = h * h * cplx(0.5 - x2 / 8.0 + x4 / 144.0, x / 3.0 - x * x2 / 30.0);
    m.e3 = h * h * h * cplx(1.0 / 3.0 - x2 / 10.0 + x4 / 168.0, x / 4.0 - x * x2 / 36.0);
    m.g = h * h * h / 3.0 * (1.0 - x2 / 20.0 + x4 / 840.0);
    return m;
  }
  const cplx ex = std::exp(ix);
  const cplx q1 = (ex - 1.0) / ix;
  const cplx q2 = ex / ix + (ex - 1.0) / (x * x);
  const cplx q3 = ex / ix - 2.0 / ix * q2;
  m.e1 = h * q1;
  m.e2 = h * h * q2;
  m.e3 = h * h * h * q3;
  m.g = 2.0 * (x - std::sin(x)) / (d * d * d);
  return m;
}

}  // namespace msgate::detail
