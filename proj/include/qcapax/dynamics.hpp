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

// Phase-covariant dynamical maps: time-local generators, memory kernels,
// kernel construction recipes, the Volterra solver for the kernel master
// equation, and the three-route mixture comparison for GADC families.

#ifndef QCAPAX_DYNAMICS_HPP
#define QCAPAX_DYNAMICS_HPP

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qcapax/core.hpp"

namespace qcapax {

using ScalarFn = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Superoperators
// ---------------------------------------------------------------------------

/// Superoperator as a real 4x4 matrix on affine Bloch coordinates (1, x, y, z).
using AffineMatrix = std::array<std::array<double, 4>, 4>;

/// Matrix of a trace-preserving-or-annihilating qubit superoperator in the
/// basis (I, σ1, σ2, σ3)/2 -> Bloch coefficients.
AffineMatrix affine_matrix(const QubitMap& op);

/// L+[X] = σ+ X σ- - ½{σ-σ+, X}, L-[X] = σ- X σ+ - ½{σ+σ-, X},
/// L3[X] = ¼(σ3 X σ3 - X).
struct SuperOpBasis {
  QubitMap plus;
  QubitMap minus;
  QubitMap three;
  AffineMatrix plusAffine;
  AffineMatrix minusAffine;
  AffineMatrix threeAffine;
};

const SuperOpBasis& superop_basis();

// ---------------------------------------------------------------------------
// Time-local generators
// ---------------------------------------------------------------------------

enum class Rate { Plus, Minus, Three };

/// L(t) = γ+(t) L+ + γ-(t) L- + γ3(t) L3.
struct GeneratorSpec {
  ScalarFn gammaPlus;
  ScalarFn gammaMinus;
  ScalarFn gamma3;

  double rate(Rate which, double t) const;
  /// Γ_μ(t) = ∫₀ᵗ γ_μ, adaptive quadrature (tol 1e-10).
  double cumulative(Rate which, double t) const;
};

GeneratorSpec constant_rates(double gammaPlus, double gammaMinus, double gamma3);

/// Convex combination of generators (rates mixed pointwise).
GeneratorSpec mix_generators(std::span<const GeneratorSpec> generators,
                             std::span<const double> weights);

/// λ1 = exp{-½[Γ+ + Γ- + Γ3]}, λ3 = exp[-Γ+ - Γ-],
/// λ* = λ3 ∫₀ᵗ (γ+ - γ-) exp[Γ+ + Γ-] dτ.
/// Throws NumericalFailure on non-finite rate samples.
PhaseCovariantChannel eigenvalues_from_rates(const GeneratorSpec& g, double t);

/// Solution of the generator equation started at `anchor` from `initial`,
/// evaluated at ascending `times` (each >= anchor). This is the composition
/// V(t, anchor) ∘ initial with V the generator propagator.
std::vector<PhaseCovariantChannel> propagate_rates(const GeneratorSpec& g, double anchor,
                                                   const PhaseCovariantChannel& initial,
                                                   std::span<const double> times);

// ---------------------------------------------------------------------------
// Memory kernels
// ---------------------------------------------------------------------------

/// One scalar kernel function: deltaWeight·δ(t) + smooth(t).
struct KernelComponent {
  double deltaWeight = 0.0;
  ScalarFn smooth;   // empty means identically zero
  ScalarFn laplace;  // optional closed form of deltaWeight + L[smooth](s)

  bool has_smooth() const { return static_cast<bool>(smooth); }
  bool has_laplace() const { return static_cast<bool>(laplace); }
  double smooth_at(double t) const { return smooth ? smooth(t) : 0.0; }
};

KernelComponent operator+(const KernelComponent& a, const KernelComponent& b);
KernelComponent operator*(double s, const KernelComponent& a);

/// κ1, κ3, κ* as in K[σ1] = κ1 σ1, K[σ3] = κ3 σ3, K[I] = κ* σ3.
struct KernelSpec {
  KernelComponent kappa1;
  KernelComponent kappa3;
  KernelComponent kappaStar;
};

/// Coefficients of K(t) = k+(t) L+ + k-(t) L- + k3(t) L3.
struct KernelRates {
  KernelComponent kPlus;
  KernelComponent kMinus;
  KernelComponent k3;
};

/// κ1 = -½(k+ + k- + k3), κ3 = -(k+ + k-), κ* = k+ - k-.
KernelSpec kernel_from_k(const KernelRates& k);
/// k± = (-κ3 ± κ*)/2, k3 = κ3 - 2κ1.
KernelRates k_from_kernel(const KernelSpec& kernel);

KernelSpec mix_kernels(std::span<const KernelSpec> kernels, std::span<const double> weights);

/// deltaWeight + ∫₀^horizon e^{-st} smooth(t) dt by adaptive quadrature.
double numeric_kernel_laplace(const KernelComponent& c, double s, double horizon = 40.0);

// ---------------------------------------------------------------------------
// ℓ-parameterization and kernel recipes
// ---------------------------------------------------------------------------

/// A scalar function ℓ(t) with optional closed forms. Missing pieces are
/// computed numerically: integral by adaptive quadrature, derivative by
/// finite differences, Laplace transform by truncated integration to t = 40
/// plus an exponential tail estimate.
struct EllFunction {
  ScalarFn value;
  ScalarFn integral;
  ScalarFn derivative;
  ScalarFn laplace;

  double at(double t) const;
  double integral_at(double t) const;
  double derivative_at(double t) const;
  double laplace_at(double s) const;
};

EllFunction zero_ell();
/// ℓ(t) = amplitude·e^{-rate·t} with every closed form attached.
EllFunction exponential_ell(double amplitude, double rate);
EllFunction scale_ell(const EllFunction& ell, double factor);

/// λ_j(t) = 1 - ∫₀ᵗ ℓ_j for j = 1, 3 and λ*(t) = -∫₀ᵗ ℓ*.
struct EllParameterization {
  EllFunction ell1;
  EllFunction ell3;
  EllFunction ellStar;

  PhaseCovariantChannel channel_at(double t) const;
};

struct KernelBuildOptions {
  double horizon = 10.0;  // tabulation range for numerically built kernels
  double dt = 1e-3;       // tabulation step
  int conditionSamples = 201;
};

/// Sampled check of the sufficient legitimacy conditions
/// (C1) |∫ℓ*| <= ∫ℓ3 and (C2) ½(∫ℓ3 + |∫ℓ*|) <= ∫ℓ1 <= 2 - ½(∫ℓ3 + |∫ℓ*|).
struct ConditionReport {
  bool c1 = true;
  bool c2 = true;
  double c1Margin = 0.0;  // min over samples of ∫ℓ3 - |∫ℓ*|
  double c2Margin = 0.0;  // min over samples of both C2 slacks
  double firstViolation = -1.0;
  std::vector<double> sampleTimes;

  bool legitimate() const { return c1 && c2; }
};

ConditionReport check_theorem1_conditions(const EllParameterization& ell,
                                          std::span<const double> sample_times);

struct Theorem1Result {
  KernelSpec kernel;
  ConditionReport conditions;
};

/// Kernel with κ̃_j = -sℓ̃_j/(1 - ℓ̃_j) (j = 1, 3) and κ̃* = -sℓ̃*/(1 - ℓ̃3).
///
/// Time domain: κ_j = -ℓ_j(0)δ + k_j with k_j the solution of
/// k_j = -ℓ̇_j - ℓ_j(0)ℓ_j + k_j∗ℓ_j, and κ* = -ℓ*(0)δ + k* with
/// k* = -ℓ̇* - ℓ3(0)ℓ* + k3∗ℓ*. The smooth parts are tabulated on
/// [0, horizon] with step dt and linearly interpolated.
/// A failed condition check does not suppress the kernel.
Theorem1Result theorem1_kernel(const EllParameterization& ell, const KernelBuildOptions& opts = {});

struct ClosedFormTrajectory {
  ScalarFn lambda1;
  ScalarFn lambda3;
  ScalarFn lambdaStar;

  PhaseCovariantChannel at(double t) const;
};

struct Example1Result {
  KernelSpec kernel;
  ClosedFormTrajectory closedForm;
  EllParameterization ell;
};

/// ℓ_μ(t) = η e^{-ξ_μ t}. Requires ξ* >= ξ3 >= ξ1 >= η >= 0 (InvalidInput
/// otherwise).
Example1Result example1_kernel(double eta, double xi1, double xi3, double xiStar);

struct AdmissibilityReport {
  bool nonnegativeIntegral = true;  // ∫₀ᵗ ℓ >= 0 at every sample
  bool a3LeAStar = true;            // a3 <= a*
  bool a1Bound = true;              // a1 <= 2 a3 a* / (a3 + a*)
  bool integralBound = true;        // ∫₀ᵗ ℓ <= 4 (2/a1 + 1/a3 + 1/a*)^{-1}
  double integralBoundMargin = 0.0;

  bool admissible() const { return nonnegativeIntegral && a3LeAStar && a1Bound && integralBound; }
};

struct SingleFunctionResult {
  KernelSpec kernel;
  AdmissibilityReport admissibility;
  ConditionReport conditions;
  ClosedFormTrajectory closedForm;  // λ_j = 1 - ∫ℓ/a_j, λ* = sign·∫ℓ/a*
};

/// Single-function recipe: ℓ_j = ℓ/a_j, ℓ* = -sign·ℓ/a*. Throws InvalidInput
/// for non-positive a's or sign not in {-1, +1}; admissibility failures are
/// reported, not thrown.
SingleFunctionResult single_function_kernel(double a1, double a3, double aStar,
                                            const EllFunction& ell, int sign,
                                            const KernelBuildOptions& opts = {});

// ---------------------------------------------------------------------------
// GADC dynamical maps
// ---------------------------------------------------------------------------

/// Natural cubic spline through (t_i, λ_i) samples.
class TabulatedProfile {
 public:
  /// Requires >= 3 strictly increasing times starting at 0, λ(0) = 1 (tol
  /// 1e-9) and |λ| <= 1.
  TabulatedProfile(std::vector<double> times, std::vector<double> values);
  /// Two-column CSV "t,lambda" with optional header.
  static TabulatedProfile from_csv(const std::string& path);

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  double t_max() const { return times_.back(); }
  std::span<const double> times() const { return times_; }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t segment(double t) const;

  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> second_;  // spline second derivatives at the knots
};

enum class Profile { Exp, Cos, Tabulated };

/// λ(t) with λ(0) = 1 and a constant mixing parameter p: the trajectory
/// (λ, λ², p(1 - λ²)).
struct GadcFamily {
  Profile profile = Profile::Exp;
  double p = 0.0;
  std::shared_ptr<const TabulatedProfile> table;

  double lambda(double t) const;
  double lambda_dot(double t) const;
  double lambda_ddot(double t) const;
  PhaseCovariantChannel channel(double t) const;
  /// Zeros of λ(t) in (0, horizon].
  std::vector<double> zeros(double horizon) const;
  std::string profile_name() const;
};

GadcFamily exp_family(double p);
GadcFamily cos_family(double p);
GadcFamily tabulated_family(std::shared_ptr<const TabulatedProfile> table, double p);

struct GeneratorRates {
  double gammaPlus = 0.0;
  double gammaMinus = 0.0;
  double gamma3 = 0.0;
};

/// γ± = -(λ̇/λ)(1 ± p), γ3 = 0. Throws DegenerateInput where λ(t) = 0.
GeneratorRates gadc_generator(const GadcFamily& fam, double t);
GeneratorSpec gadc_generator_spec(const GadcFamily& fam);

/// Closed forms for exp (κ1 = -δ, κ3 = -2δ) and cos (κ1 = -1,
/// κ3 = -2cos(√2 t)) profiles, κ* = -p κ3; tabulated profiles go through
/// theorem1_kernel with ℓ1 = -λ̇, ℓ3 = -2λλ̇, ℓ* = 2pλλ̇.
KernelSpec gadc_kernel(const GadcFamily& fam, const KernelBuildOptions& opts = {});

/// K_U = -(κ3/2)(L+ + L-) + (κ3 - 2κ1) L3 for the family's λ(t).
KernelSpec unital_kernel(const GadcFamily& fam, const KernelBuildOptions& opts = {});
/// K_NU± = -κ3 L± + (κ3 - 2κ1) L3, sign = ±1.
KernelSpec nonunital_kernel(const GadcFamily& fam, int sign, const KernelBuildOptions& opts = {});

// ---------------------------------------------------------------------------
// Volterra solver
// ---------------------------------------------------------------------------

struct Trajectory {
  std::vector<double> t;
  std::vector<double> lambda1;
  std::vector<double> lambda3;
  std::vector<double> lambdaStar;

  std::size_t size() const { return t.size(); }
  PhaseCovariantChannel at(std::size_t i) const;
};

/// Solves λ̇1 = κ1∗λ1, λ̇3 = κ3∗λ3, λ̇* = κ3∗λ* + ∫₀ᵗκ* from (1, 1, 0) on the
/// grid t_n = n·dt, n = 0..ceil(T/dt). Delta parts act with full weight:
/// (cδ + k)∗f = c·f(t) + ∫₀ᵗ k(t-τ) f(τ) dτ. Trapezoidal quadrature for the
/// memory integral, trapezoidal time stepping with the (linear) corrector
/// solved exactly. Throws NumericalFailure if any |λ| exceeds 10 and
/// InvalidInput for dt <= 0 or T/dt > 1e7.
Trajectory volterra_solve(const KernelSpec& kernel, double T, double dt);

/// max_n |λ*(t_n) - (K*∗λ3)(t_n)| with K*(t) = ∫₀ᵗ κ*, trapezoidal on the
/// trajectory grid.
double convolution_identity_check(const KernelSpec& kernel, const Trajectory& traj);

/// Trapezoidal ∫ e^{-st} f(t) dt over the sampled grid.
double numeric_laplace(std::span<const double> t, std::span<const double> f, double s);

struct MixtureReport {
  Trajectory mapRoute;        // convex mix of Λ_U(t), Λ_NU±(t)
  Trajectory generatorRoute;  // mixed time-local generator, integrated
  Trajectory kernelRoute;     // mixed memory kernel, Volterra-solved
  double mapVsGenerator = 0.0;
  double mapVsKernel = 0.0;
  double generatorVsKernel = 0.0;
  double maxDeviation = 0.0;
  std::vector<double> singularities;  // zeros of λ where the generator blows up

  bool passes(double dt) const { return maxDeviation < 100.0 * dt; }
};

/// The generator is singular at zeros of λ(t); between zeros it is integrated
/// on each open interval, re-anchored 1e-4 after each zero to the map-route
/// value, and grid points within 1e-4 of a zero take the map value there.
MixtureReport mixture_equivalence(const GadcFamily& fam, double T, double dt);

}  // namespace qcapax

#endif  // QCAPAX_DYNAMICS_HPP
