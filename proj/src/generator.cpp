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

#include <algorithm>
#include <cmath>
#include <string>

#include "qcapax/dynamics.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/numerics.hpp"

namespace qcapax {

namespace {

constexpr double kRateTol = 1e-10;
constexpr double kStepTol = 1e-12;
constexpr double kMaxSubstep = 0.01;
constexpr double kMinSubstep = 1e-12;
constexpr double kStepBudget = 0.1;

SmallMatrix anticommutator(const SmallMatrix& a, const SmallMatrix& b) { return a * b + b * a; }

SuperOpBasis build_basis() {
  using namespace pauli;
  SuperOpBasis b;
  b.plus = [](const SmallMatrix& x) {
    return sigma_plus() * x * sigma_minus() - 0.5 * anticommutator(sigma_minus() * sigma_plus(), x);
  };
  b.minus = [](const SmallMatrix& x) {
    return sigma_minus() * x * sigma_plus() - 0.5 * anticommutator(sigma_plus() * sigma_minus(), x);
  };
  b.three = [](const SmallMatrix& x) { return 0.25 * (sigma3() * x * sigma3() - x); };
  b.plusAffine = affine_matrix(b.plus);
  b.minusAffine = affine_matrix(b.minus);
  b.threeAffine = affine_matrix(b.three);
  return b;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalFailure(std::string("non-integrable rate: ") + what);
}

}  // namespace

AffineMatrix affine_matrix(const QubitMap& op) {
  const std::array<SmallMatrix, 4> basis{pauli::identity(), pauli::sigma1(), pauli::sigma2(),
                                         pauli::sigma3()};
  AffineMatrix m{};
  for (std::size_t j = 0; j < 4; ++j) {
    const SmallMatrix image = op(0.5 * basis[j]);
    for (std::size_t i = 0; i < 4; ++i) m[i][j] = (basis[i] * image).trace().real();
  }
  return m;
}

const SuperOpBasis& superop_basis() {
  static const SuperOpBasis basis = build_basis();
  return basis;
}

double GeneratorSpec::rate(Rate which, double t) const {
  const ScalarFn& f = which == Rate::Plus ? gammaPlus : which == Rate::Minus ? gammaMinus : gamma3;
  return f ? f(t) : 0.0;
}

double GeneratorSpec::cumulative(Rate which, double t) const {
  const ScalarFn f = [this, which](double tau) { return rate(which, tau); };
  double total = 0.0;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(t))));
  for (int i = 0; i < pieces; ++i) {
    total += numerics::adaptive_simpson(f, t * i / pieces, t * (i + 1) / pieces, kRateTol / pieces);
  }
  return total;
}

GeneratorSpec constant_rates(double gammaPlus, double gammaMinus, double gamma3) {
  return {[gammaPlus](double) { return gammaPlus; }, [gammaMinus](double) { return gammaMinus; },
          [gamma3](double) { return gamma3; }};
}

GeneratorSpec mix_generators(std::span<const GeneratorSpec> generators,
                             std::span<const double> weights) {
  if (generators.empty() || generators.size() != weights.size()) {
    throw InvalidInput("mix_generators: need one weight per generator");
  }
  std::vector<GeneratorSpec> gs(generators.begin(), generators.end());
  std::vector<double> ws(weights.begin(), weights.end());
  auto mixed = [gs, ws](Rate which) -> ScalarFn {
    return [gs, ws, which](double t) {
      double v = 0.0;
      for (std::size_t i = 0; i < gs.size(); ++i)
        if (ws[i] != 0.0) v += ws[i] * gs[i].rate(which, t);
      return v;
    };
  };
  return {mixed(Rate::Plus), mixed(Rate::Minus), mixed(Rate::Three)};
}

std::vector<PhaseCovariantChannel> propagate_rates(const GeneratorSpec& g, double anchor,
                                                   const PhaseCovariantChannel& initial,
                                                   std::span<const double> times) {
  const ScalarFn all = [&g](double t) {
    return g.rate(Rate::Plus, t) + g.rate(Rate::Minus, t) + g.rate(Rate::Three, t);
  };
  const ScalarFn longitudinal = [&g](double t) {
    return g.rate(Rate::Plus, t) + g.rate(Rate::Minus, t);
  };
  const ScalarFn pumping = [&g](double t) {
    return g.rate(Rate::Plus, t) - g.rate(Rate::Minus, t);
  };

  double l1 = initial.lambda1;
  double l3 = initial.lambda3;
  double ls = initial.lambdaStar;
  double cur = anchor;
  std::vector<PhaseCovariantChannel> out;
  out.reserve(times.size());
  for (const double target : times) {
    if (target < cur) throw InvalidInput("propagate_rates: times must be ascending from the anchor");
    while (cur < target) {
      const double a = cur;
      double b = std::min(target, a + kMaxSubstep);
      // Shrink the step until the rates change little across it; this keeps
      // each quadrature cheap when a rate grows without bound.
      const double ra = std::abs(all(a)) + std::abs(pumping(a));
      while (b - a > kMinSubstep) {
        const double rb = std::abs(all(b)) + std::abs(pumping(b));
        if ((b - a) * std::max(ra, rb) <= kStepBudget) break;
        b = a + 0.5 * (b - a);
      }
      if (target - b < kMinSubstep) b = target;
      const double d_all = numerics::adaptive_simpson(all, a, b, kStepTol);
      const double d_long = numerics::adaptive_simpson(longitudinal, a, b, kStepTol);
      // ∫_a^b (γ+ - γ-)(τ) exp(-∫_τ^b (γ+ + γ-)) dτ
      const double source = numerics::adaptive_simpson(
          [&](double tau) {
            return pumping(tau) * std::exp(-numerics::adaptive_simpson(longitudinal, tau, b, kStepTol));
          },
          a, b, kStepTol);
      require_finite(d_all, "Γ");
      require_finite(source, "λ* source");
      l1 *= std::exp(-0.5 * d_all);
      l3 *= std::exp(-d_long);
      ls = ls * std::exp(-d_long) + source;
      cur = b;
    }
    out.push_back(make_channel(l1, l3, ls));
  }
  return out;
}

PhaseCovariantChannel eigenvalues_from_rates(const GeneratorSpec& g, double t) {
  if (!(t >= 0.0)) throw InvalidInput("eigenvalues_from_rates: t must be >= 0");
  const double times[] = {t};
  return propagate_rates(g, 0.0, make_channel(1.0, 1.0, 0.0), times).front();
}

}  // namespace qcapax
