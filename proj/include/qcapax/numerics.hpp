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

// Scalar root finding, 1-D maximization and quadrature shared by the
// capacity and dynamics modules.

#ifndef QCAPAX_NUMERICS_HPP
#define QCAPAX_NUMERICS_HPP

#include <functional>

namespace qcapax::numerics {

using ScalarFn = std::function<double(double)>;

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign. Runs until
/// the bracket is narrower than `xtol` or can no longer be split.
double bisect(const ScalarFn& f, double lo, double hi, double xtol);

/// Golden-section maximization on [a, b]; stops when b - a < `xtol`.
/// Returns the argmax.
double golden_section_max(const ScalarFn& f, double a, double b, double xtol);

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Global grid scan with spacing <= `grid_step`, then golden refinement on the
/// two cells around the best grid point.
Maximum grid_golden_max(const ScalarFn& f, double a, double b, double grid_step, double xtol);

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
/// Throws NumericalFailure if the integrand returns a non-finite value.
double adaptive_simpson(const ScalarFn& f, double a, double b, double tol, int max_depth = 48);

}  // namespace qcapax::numerics

#endif  // QCAPAX_NUMERICS_HPP
