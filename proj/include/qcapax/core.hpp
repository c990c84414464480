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

#ifndef QCAPAX_CORE_HPP
#define QCAPAX_CORE_HPP

#include <functional>
#include <span>
#include <vector>

#include "qcapax/linalg.hpp"

namespace qcapax {

/// Tolerance for the complete-positivity inequalities.
inline constexpr double kCpTol = 1e-12;
/// Choi eigenvalues below this are dropped when extracting Kraus operators.
inline constexpr double kKrausCutoff = 1e-12;

namespace pauli {
SmallMatrix identity();
SmallMatrix sigma1();
SmallMatrix sigma2();
SmallMatrix sigma3();
/// (σ1 + iσ2)/2 = |0><1|
SmallMatrix sigma_plus();
/// (σ1 - iσ2)/2 = |1><0|
SmallMatrix sigma_minus();
}  // namespace pauli

/// Qubit state in coordinates ρ = ½(I + xσ1 + yσ2 + zσ3).
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// Validated 2x2 density operator. BlochVector is the canonical form;
/// conversions in both directions are exact linear maps.
class DensityMatrix {
 public:
  /// Maximally mixed state.
  DensityMatrix();
  /// Throws InvalidInput when |r| > 1 + 1e-12 or a component is not finite.
  static DensityMatrix from_bloch(const BlochVector& r);
  /// Throws InvalidInput unless Hermitian, unit trace and PSD (tol 1e-12).
  static DensityMatrix from_matrix(const SmallMatrix& m);

  const BlochVector& bloch() const { return bloch_; }
  SmallMatrix matrix() const;

 private:
  explicit DensityMatrix(const BlochVector& r) : bloch_(r) {}
  BlochVector bloch_;
};

/// Phase-covariant qubit map: Bloch action (x, y, z) -> (λ1 x, λ1 y, λ3 z + λ*).
///
/// `valid` records whether the complete-positivity conditions hold; channels
/// outside the CP set are representable so sweeps can map invalid regions.
struct PhaseCovariantChannel {
  double lambda1 = 1.0;
  double lambda3 = 1.0;
  double lambdaStar = 0.0;
  bool valid = true;
};

/// Throws InvalidInput on non-finite parameters.
PhaseCovariantChannel make_channel(double lambda1, double lambda3, double lambdaStar);

struct CpReport {
  bool cp = false;
  double absoluteMargin = 0.0;   // 1 - |λ*| - |λ3|
  double quadraticMargin = 0.0;  // (1 + λ3)^2 - 4λ1^2 - λ*^2
};

CpReport is_cp(const PhaseCovariantChannel& ch);

/// Sufficient-only linear CP test: λ3 + |λ*| <= 1 and 1 - 2|λ1| + λ3 - |λ*| >= 0.
/// λ3 enters without absolute value, as in the kernel-construction setting
/// where λ3 >= 0.
bool is_cp_linear(const PhaseCovariantChannel& ch, double tol = kCpTol);

BlochVector apply(const PhaseCovariantChannel& ch, const BlochVector& r);
/// Throws InvalidInput for a channel not flagged valid.
DensityMatrix apply(const PhaseCovariantChannel& ch, const DensityMatrix& rho);
/// Linear extension of the channel to arbitrary 2x2 operators.
SmallMatrix apply_operator(const PhaseCovariantChannel& ch, const SmallMatrix& x);

/// ρ* = ½[I + λ*/(1-λ3) σ3]. Throws DegenerateInput for λ3 = 1 with λ* != 0,
/// and returns I/2 for λ3 = 1, λ* = 0 (every diagonal state is then fixed).
DensityMatrix stationary_state(const PhaseCovariantChannel& ch);

/// |λ*| / (1 - |λ3|). Throws DegenerateInput when |λ3| = 1.
double non_unitality(const PhaseCovariantChannel& ch);

/// Generalized amplitude damping: (λ, λ², p(1-λ²)), λ, p in [-1, 1].
PhaseCovariantChannel gadc(double lambda, double p);

/// Parameter-wise convex combination. Throws InvalidInput if weights are
/// negative, do not sum to 1 (tol 1e-12), sizes differ or a channel is invalid.
PhaseCovariantChannel mix(std::span<const PhaseCovariantChannel> channels,
                          std::span<const double> weights);

/// (a ∘ b): apply b first, then a.
PhaseCovariantChannel compose(const PhaseCovariantChannel& a, const PhaseCovariantChannel& b);

/// (Λ ⊗ id)[|Ω><Ω|] with |Ω> = (|00> + |11>)/√2; index (out, in) -> 2*out + in.
struct ChoiMatrix {
  SmallMatrix m = SmallMatrix(4);
};

/// Σ K_i^† K_i = I.
struct KrausSet {
  std::vector<SmallMatrix> operators;

  double completeness_residual() const;
};

ChoiMatrix choi(const PhaseCovariantChannel& ch);
/// Kraus operators from the Choi eigendecomposition. Throws InvalidInput if
/// the channel is not flagged valid or the Choi matrix is not PSD.
KrausSet kraus(const PhaseCovariantChannel& ch);

/// (Λ^c[ρ])_ij = Tr(K_i ρ K_j^†), an n x n state with n = number of Kraus operators.
SmallMatrix complementary_apply(const KrausSet& ks, const DensityMatrix& rho);
SmallMatrix complementary_apply(const PhaseCovariantChannel& ch, const DensityMatrix& rho);

/// Von Neumann entropy in bits with 0 log 0 = 0. Throws InvalidInput when the
/// matrix has an eigenvalue below -1e-10 or its trace is not 1 (tol 1e-10).
double entropy(const SmallMatrix& rho);
double entropy(const DensityMatrix& rho);

/// Linear map on 2x2 operators.
using QubitMap = std::function<SmallMatrix(const SmallMatrix&)>;

/// U(φ) = exp(-iσ3 φ).
SmallMatrix phase_rotation(double phi);

/// Checks Λ[U X U^†] = U Λ[X] U^† (tol 1e-10) on the matrix units for every φ.
bool covariance_check(const QubitMap& map, std::span<const double> phi_samples);
bool covariance_check(const PhaseCovariantChannel& ch, std::span<const double> phi_samples);

}  // namespace qcapax

#endif  // QCAPAX_CORE_HPP
