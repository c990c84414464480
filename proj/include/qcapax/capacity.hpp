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

// Holevo and entanglement-assisted capacities of GADC channels, bounds on the
// classical capacity, and time sweeps over GADC dynamical maps.
//
// All capacities are in bits.

#ifndef QCAPAX_CAPACITY_HPP
#define QCAPAX_CAPACITY_HPP

#include <string>
#include <vector>

#include "qcapax/core.hpp"
#include "qcapax/dynamics.hpp"

namespace qcapax {

/// H2(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

/// f(x) = (1+x) log2(1+x) + (1-x) log2(1-x) on |x| <= 1.
double f_entropy(double x);

/// f'(x) = log2((1+x)/(1-x)), diverging at |x| = 1.
double f_prime(double x);

/// χ of the unital channel (λ, λ², 0): f(λ)/2. Throws InvalidInput if |λ| > 1.
double holevo_unital(double lambda);

/// C_E of the unital channel: f(λ) = 2·holevo_unital(λ).
double ce_unital(double lambda);

struct HolevoSolve {
  double q = 0.0;     // z-coordinate of the averaged output state
  double r = 0.0;     // Bloch radius of the ensemble's output states
  double chi = 0.0;
  double residual = 0.0;  // |g(q)| at the returned root
  int roots = 0;          // sign changes (or exact zeros) found by the scan
  bool lowConfidence = false;
};

/// χ of gadc(λ, p) from the implicit equation
///   g(q) = f'(r)(q - p)(1 - λ²) + rλ² f'(q) = 0,
///   r² = λ² + q² - ((q - p)/λ + pλ)²,
/// searched over the physical range q = p(1 - λ²) + λ²u, |u| <= 1, clamped
/// to |q| <= 1 - 1e-12. All roots are bracketed by a 2001-point scan and
/// bisected; the root with the largest χ = [f(r) - f(q)]/2 is returned. With
/// no sign change, the minimizer of |g| on the scan is returned and flagged.
HolevoSolve holevo_gadc(double lambda, double p);

/// Objective F(λ, p, z) of the C_E maximization over diagonal inputs
/// ρ = diag((1+z)/2, (1-z)/2).
struct CEObjective {
  double z = 0.0;
  double value = 0.0;
  double hPlus = 0.0;
  double hMinus = 0.0;
  double deltaPlus = 0.0;
  double deltaMinus = 0.0;
};

CEObjective ce_objective(double lambda, double p, double z);

struct CEResult {
  double value = 0.0;
  double argmax = 0.0;  // z for ce_gadc, π for ce_ad
};

/// max over z in [-1, 1] of F: grid step 1e-3 then golden-section to 1e-8.
CEResult ce_gadc(double lambda, double p);

/// max over π in [0, 1] of H2(π) + H2(πλ²) - H2(π(1 - λ²)), the p = ±1 case.
CEResult ce_ad(double lambda);

struct CapacityBounds {
  double lower = 0.0;  // χ
  double upper = 0.0;  // C_E
  double p = 0.0;
  bool exact = false;  // lower equals C (unital case)
};

/// χ <= C <= C_E for gadc(λ, p); closed forms at p = 0, ce_ad at |p| = 1.
CapacityBounds capacity_bounds(double lambda, double p);

/// Recovers p when ch = gadc(λ1, p) within `tol`; throws ShapeMismatch
/// otherwise.
double gadc_mixing_parameter(const PhaseCovariantChannel& ch, double tol = 1e-9);

/// capacity_bounds after gadc_mixing_parameter; throws ShapeMismatch for
/// channels outside the GADC family.
CapacityBounds capacity_bounds(const PhaseCovariantChannel& ch);

struct Interval {
  double start = 0.0;
  double end = 0.0;
};

/// Windows where χ(λ(t), p) > C_E of the unital channel with the same λ(t).
/// Sampled on t = 0, dt, ..., T; endpoints are bisected to dt/100. A window
/// still open at T is closed at T.
std::vector<Interval> crossing_windows(const GadcFamily& fam, double T, double dt);

struct CapacityPoint {
  double t = 0.0;
  double lambda = 0.0;
  double p = 0.0;
  double chi = 0.0;
  double cE = 0.0;
  double chiUnital = 0.0;
  double cEUnital = 0.0;
  bool ok = true;
  std::string error;  // set when ok is false
};

/// Capacities on the uniform grid t_i = T·i/(steps - 1). A failing row is
/// flagged and the sweep continues. Throws InvalidInput for steps < 2 or T <= 0.
std::vector<CapacityPoint> trajectory(const GadcFamily& fam, double T, int steps);

}  // namespace qcapax

#endif  // QCAPAX_CAPACITY_HPP
