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

#include "qcapax/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcapax/errors.hpp"

namespace qcapax {

namespace pauli {
SmallMatrix identity() { return SmallMatrix::identity(2); }
SmallMatrix sigma1() { return SmallMatrix::of2(0.0, 1.0, 1.0, 0.0); }
SmallMatrix sigma2() { return SmallMatrix::of2(0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0); }
SmallMatrix sigma3() { return SmallMatrix::of2(1.0, 0.0, 0.0, -1.0); }
SmallMatrix sigma_plus() { return SmallMatrix::of2(0.0, 1.0, 0.0, 0.0); }
SmallMatrix sigma_minus() { return SmallMatrix::of2(0.0, 0.0, 1.0, 0.0); }
}  // namespace pauli

namespace {

constexpr double kStateTol = 1e-12;
constexpr double kEntropyPsdTol = 1e-10;

void require_valid(const PhaseCovariantChannel& ch, const char* op) {
  if (!ch.valid) {
    throw InvalidInput(std::string(op) + ": channel violates complete positivity");
  }
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix() : bloch_{0.0, 0.0, 0.0} {}

DensityMatrix DensityMatrix::from_bloch(const BlochVector& r) {
  if (!finite(r.x) || !finite(r.y) || !finite(r.z)) {
    throw InvalidInput("Bloch vector has non-finite components");
  }
  if (r.x * r.x + r.y * r.y + r.z * r.z > 1.0 + kStateTol) {
    throw InvalidInput("Bloch vector lies outside the unit ball");
  }
  return DensityMatrix(r);
}

DensityMatrix DensityMatrix::from_matrix(const SmallMatrix& m) {
  if (m.dim() != 2) throw InvalidInput("density matrix must be 2x2");
  if (m.hermiticity_defect() > kStateTol) throw InvalidInput("density matrix is not Hermitian");
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > kStateTol) {
    throw InvalidInput("density matrix trace differs from 1");
  }
  // x = 2 Re ρ01, y = -2 Im ρ01, z = ρ00 - ρ11
  const BlochVector r{2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
  const auto ev = hermitian_eigenvalues(m);
  if (ev[0] < -kStateTol) throw InvalidInput("density matrix is not positive semidefinite");
  return DensityMatrix(r);
}

SmallMatrix DensityMatrix::matrix() const {
  const auto& r = bloch_;
  return SmallMatrix::of2(0.5 * (1.0 + r.z), cplx(0.5 * r.x, -0.5 * r.y), cplx(0.5 * r.x, 0.5 * r.y),
                          0.5 * (1.0 - r.z));
}

PhaseCovariantChannel make_channel(double lambda1, double lambda3, double lambdaStar) {
  if (!finite(lambda1) || !finite(lambda3) || !finite(lambdaStar)) {
    throw InvalidInput("channel parameters must be finite");
  }
  PhaseCovariantChannel ch{lambda1, lambda3, lambdaStar, false};
  ch.valid = is_cp(ch).cp;
  return ch;
}

CpReport is_cp(const PhaseCovariantChannel& ch) {
  CpReport r;
  r.absoluteMargin = 1.0 - std::abs(ch.lambdaStar) - std::abs(ch.lambda3);
  r.quadraticMargin = (1.0 + ch.lambda3) * (1.0 + ch.lambda3) - 4.0 * ch.lambda1 * ch.lambda1 -
                      ch.lambdaStar * ch.lambdaStar;
  r.cp = r.absoluteMargin >= -kCpTol && r.quadraticMargin >= -kCpTol;
  return r;
}

bool is_cp_linear(const PhaseCovariantChannel& ch, double tol) {
  const double first = 1.0 - ch.lambda3 - std::abs(ch.lambdaStar);
  const double second = 1.0 - 2.0 * std::abs(ch.lambda1) + ch.lambda3 - std::abs(ch.lambdaStar);
  return first >= -tol && second >= -tol;
}

BlochVector apply(const PhaseCovariantChannel& ch, const BlochVector& r) {
  return {ch.lambda1 * r.x, ch.lambda1 * r.y, ch.lambda3 * r.z + ch.lambdaStar};
}

DensityMatrix apply(const PhaseCovariantChannel& ch, const DensityMatrix& rho) {
  require_valid(ch, "apply");
  return DensityMatrix::from_bloch(apply(ch, rho.bloch()));
}

SmallMatrix apply_operator(const PhaseCovariantChannel& ch, const SmallMatrix& x) {
  if (x.dim() != 2) throw InvalidInput("apply_operator: operator must be 2x2");
  const cplx tr = x.trace();
  const cplx t1 = (x * pauli::sigma1()).trace();
  const cplx t2 = (x * pauli::sigma2()).trace();
  const cplx t3 = (x * pauli::sigma3()).trace();
  SmallMatrix out = tr * (pauli::identity() + ch.lambdaStar * pauli::sigma3());
  out += (ch.lambda1 * t1) * pauli::sigma1();
  out += (ch.lambda1 * t2) * pauli::sigma2();
  out += (ch.lambda3 * t3) * pauli::sigma3();
  return 0.5 * out;
}

DensityMatrix stationary_state(const PhaseCovariantChannel& ch) {
  if (ch.lambda3 == 1.0) {
    if (ch.lambdaStar != 0.0) {
      throw DegenerateInput("stationary_state: λ3 = 1 with λ* != 0 has no fixed point");
    }
    return DensityMatrix();
  }
  const double z = ch.lambdaStar / (1.0 - ch.lambda3);
  if (!finite(z) || std::abs(z) > 1.0 + kStateTol) {
    throw DegenerateInput("stationary_state: fixed point lies outside the Bloch ball");
  }
  return DensityMatrix::from_bloch({0.0, 0.0, std::clamp(z, -1.0, 1.0)});
}

double non_unitality(const PhaseCovariantChannel& ch) {
  const double denom = 1.0 - std::abs(ch.lambda3);
  if (denom == 0.0) throw DegenerateInput("non_unitality undefined for |λ3| = 1");
  return std::abs(ch.lambdaStar) / denom;
}

PhaseCovariantChannel gadc(double lambda, double p) {
  if (!finite(lambda) || !finite(p) || std::abs(lambda) > 1.0 || std::abs(p) > 1.0) {
    throw InvalidInput("gadc: λ and p must lie in [-1, 1]");
  }
  const double l2 = lambda * lambda;
  return make_channel(lambda, l2, p * (1.0 - l2));
}

PhaseCovariantChannel mix(std::span<const PhaseCovariantChannel> channels,
                          std::span<const double> weights) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw InvalidInput("mix: need one weight per channel");
  }
  double total = 0.0;
  PhaseCovariantChannel out{0.0, 0.0, 0.0, true};
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const double w = weights[i];
    if (!finite(w) || w < 0.0) throw InvalidInput("mix: weights must be nonnegative");
    require_valid(channels[i], "mix");
    total += w;
    out.lambda1 += w * channels[i].lambda1;
    out.lambda3 += w * channels[i].lambda3;
    out.lambdaStar += w * channels[i].lambdaStar;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("mix: weights must sum to 1");
  return make_channel(out.lambda1, out.lambda3, out.lambdaStar);
}

PhaseCovariantChannel compose(const PhaseCovariantChannel& a, const PhaseCovariantChannel& b) {
  return make_channel(a.lambda1 * b.lambda1, a.lambda3 * b.lambda3,
                      a.lambda3 * b.lambdaStar + a.lambdaStar);
}

double KrausSet::completeness_residual() const {
  SmallMatrix sum(2);
  for (const auto& k : operators) sum += k.adjoint() * k;
  return (sum - SmallMatrix::identity(2)).frobenius_norm();
}

ChoiMatrix choi(const PhaseCovariantChannel& ch) {
  ChoiMatrix c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      SmallMatrix unit(2);
      unit(i, j) = 1.0;
      const SmallMatrix img = apply_operator(ch, unit);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) c.m(2 * a + i, 2 * b + j) = 0.5 * img(a, b);
    }
  return c;
}

KrausSet kraus(const PhaseCovariantChannel& ch) {
  require_valid(ch, "kraus");
  const auto eig = hermitian_eig(choi(ch).m);
  if (eig.values[0] < -kEntropyPsdTol) throw InvalidInput("kraus: Choi matrix is not PSD");
  KrausSet ks;
  // Choi has unit trace, so K = sqrt(2μ) unvec(v).
  for (int k = 3; k >= 0; --k) {
    const double mu = eig.values[static_cast<std::size_t>(k)];
    if (mu < kKrausCutoff) continue;
    const double scale = std::sqrt(2.0 * mu);
    SmallMatrix op(2);
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < 2; ++i) op(a, i) = scale * eig.vectors(2 * a + i, k);
    ks.operators.push_back(op);
  }
  return ks;
}

SmallMatrix complementary_apply(const KrausSet& ks, const DensityMatrix& rho) {
  const int n = static_cast<int>(ks.operators.size());
  const SmallMatrix r = rho.matrix();
  SmallMatrix env(n);
  for (int i = 0; i < n; ++i) {
    const SmallMatrix kr = ks.operators[static_cast<std::size_t>(i)] * r;
    for (int j = i; j < n; ++j) {
      const SmallMatrix& kj = ks.operators[static_cast<std::size_t>(j)];
      // Tr(K_i ρ K_j^†) = Σ_ab (K_i ρ)_ab conj(K_j)_ab
      cplx v = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) v += kr(a, b) * std::conj(kj(a, b));
      env(i, j) = v;
      env(j, i) = std::conj(v);
    }
  }
  return env;
}

SmallMatrix complementary_apply(const PhaseCovariantChannel& ch, const DensityMatrix& rho) {
  return complementary_apply(kraus(ch), rho);
}

double entropy(const SmallMatrix& rho) {
  if (std::abs(rho.trace() - cplx(1.0, 0.0)) > kEntropyPsdTol) {
    throw InvalidInput("entropy: state must have unit trace");
  }
  const auto ev = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (int k = 0; k < rho.dim(); ++k) {
    const double mu = ev[static_cast<std::size_t>(k)];
    if (mu < -kEntropyPsdTol) throw InvalidInput("entropy: state is not positive semidefinite");
    if (mu > 0.0) s -= mu * std::log2(mu);
  }
  return std::max(s, 0.0);
}

double entropy(const DensityMatrix& rho) { return entropy(rho.matrix()); }

SmallMatrix phase_rotation(double phi) {
  return SmallMatrix::of2(std::polar(1.0, -phi), 0.0, 0.0, std::polar(1.0, phi));
}

bool covariance_check(const QubitMap& map, std::span<const double> phi_samples) {
  constexpr double kTol = 1e-10;
  for (const double phi : phi_samples) {
    const SmallMatrix u = phase_rotation(phi);
    const SmallMatrix ud = u.adjoint();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        SmallMatrix x(2);
        x(i, j) = 1.0;
        const SmallMatrix lhs = map(u * x * ud);
        const SmallMatrix rhs = u * map(x) * ud;
        if ((lhs - rhs).frobenius_norm() > kTol) return false;
      }
  }
  return true;
}

bool covariance_check(const PhaseCovariantChannel& ch, std::span<const double> phi_samples) {
  return covariance_check([&ch](const SmallMatrix& x) { return apply_operator(ch, x); },
                          phi_samples);
}

}  // namespace qcapax
