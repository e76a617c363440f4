// Copyright 2026 The dpdm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>

namespace dpdm {

// Composite Simpson integral of f over [a, b], starting at min_panels
// and bisecting every panel until the estimate changes by less than
// rel_tol in relative terms.
template <std::invocable<double> F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-8,
                 std::size_t min_panels = 64) {
  if (a == b) return 0.0;

  auto simpson = [&](std::size_t n) {
    double h = (b - a) / static_cast<double>(n);
    double sum = f(a) + f(b);
    for (std::size_t k = 1; k < n; ++k) {
      sum += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
    }
    return sum * h / 3.0;
  };

  std::size_t n = min_panels;
  double prev = simpson(n);
  for (; n <= (1u << 20); ) {
    n *= 2;
    double cur = simpson(n);
    double scale = std::max(std::abs(cur), 1e-300);
    if (std::abs(cur - prev) <= rel_tol * scale) return cur;
    prev = cur;
  }
  return prev;
}

// Fixed-step midpoint Riemann sum; kept deliberately simple so it can
// serve as an independent check on the adaptive route.
template <std::invocable<double> F>
double riemann(F&& f, double a, double b, std::size_t panels = 10000) {
  if (a == b) return 0.0;
  double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    sum += f(a + h * (static_cast<double>(k) + 0.5));
  }
  return sum * h;
}

}  // namespace dpdm
