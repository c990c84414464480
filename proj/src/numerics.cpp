// Copyright 2026 The qcapax Authors
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

#include "qcapax/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcapax/errors.hpp"

namespace qcapax::numerics {

double bisect(const ScalarFn& f, double lo, double hi, double xtol) {
  double flo = f(lo);
  if (flo == 0.0) return lo;
  const double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw InvalidInput("bisect: interval does not bracket a root");
  while (std::abs(hi - lo) > xtol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_section_max(const ScalarFn& f, double a, double b, double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Maximum grid_golden_max(const ScalarFn& f, double a, double b, double grid_step, double xtol) {
  const int cells = std::max(1, static_cast<int>(std::ceil((b - a) / grid_step - 1e-9)));
  const double h = (b - a) / cells;
  int best = 0;
  double best_value = f(a);
  for (int i = 1; i <= cells; ++i) {
    const double v = f(i == cells ? b : a + h * i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = std::max(a, a + h * (best - 1));
  const double hi = std::min(b, a + h * (best + 1));
  const double x = golden_section_max(f, lo, hi, xtol);
  const double fx = f(x);
  // The refined point can only replace the grid point if it is better.
  if (fx >= best_value) return {x, fx};
  return {best == cells ? b : a + h * best, best_value};
}

namespace {

struct SimpsonCell {
  double a, m, b, fa, fm, fb, whole;
};

double simpson_recurse(const ScalarFn& f, const SimpsonCell& c, double tol, int depth) {
  const double lm = 0.5 * (c.a + c.m);
  const double rm = 0.5 * (c.m + c.b);
  const double flm = f(lm);
  const double frm = f(rm);
  if (!std::isfinite(flm) || !std::isfinite(frm)) {
    throw NumericalFailure("adaptive_simpson: integrand is not finite");
  }
  const double left = (c.m - c.a) / 6.0 * (c.fa + 4.0 * flm + c.fm);
  const double right = (c.b - c.m) / 6.0 * (c.fm + 4.0 * frm + c.fb);
  const double delta = left + right - c.whole;
  // Below this the refinement only chases rounding noise.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(left) + std::abs(right) + (c.b - c.a) * std::abs(c.fm));
  if (depth <= 0 || std::abs(delta) <= 15.0 * std::max(tol, floor)) return left + right + delta / 15.0;
  return simpson_recurse(f, {c.a, lm, c.m, c.fa, flm, c.fm, left}, 0.5 * tol, depth - 1) +
         simpson_recurse(f, {c.m, rm, c.b, c.fm, frm, c.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
    throw NumericalFailure("adaptive_simpson: integrand is not finite");
  }
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, {a, m, b, fa, fm, fb, whole}, tol, max_depth);
}

}  // namespace qcapax::numerics
