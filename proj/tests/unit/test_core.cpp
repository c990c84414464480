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

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qcapax/core.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/linalg.hpp"

using namespace qcapax;

namespace {

double ref_h2(double x) { return -x * std::log2(x) - (1 - x) * std::log2(1 - x); }

}  // namespace

TEST_CASE("entropy of a diagonal state is the binary entropy") {
  SmallMatrix rho(2);
  rho(0, 0) = 0.75;
  rho(1, 1) = 0.25;
  CHECK(entropy(rho) == doctest::Approx(0.8112781244591328).epsilon(1e-13));
  CHECK(entropy(DensityMatrix()) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(entropy(DensityMatrix::from_bloch({0, 0, 1})) == doctest::Approx(0.0));
}

TEST_CASE("hermitian eigenvalues of a Pauli combination") {
  const SmallMatrix m = 0.3 * pauli::sigma1() + 0.4 * pauli::sigma3();
  const auto ev = hermitian_eigenvalues(m);
  CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("density matrices reject non-physical input") {
  CHECK_THROWS_AS(DensityMatrix::from_bloch({0.8, 0.8, 0.0}), InvalidInput);
  SmallMatrix bad(2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad), InvalidInput);
  CHECK_THROWS_AS(make_channel(std::nan(""), 0.0, 0.0), InvalidInput);
}

TEST_CASE("GADC parameters, stationary state and non-unitality") {
  const PhaseCovariantChannel ch = gadc(0.5, 0.4);
  CHECK(ch.lambda1 == 0.5);
  CHECK(ch.lambda3 == 0.25);
  CHECK(ch.lambdaStar == doctest::Approx(0.3));
  CHECK(ch.valid);
  CHECK(stationary_state(ch).bloch().z == doctest::Approx(0.4));
  CHECK(non_unitality(ch) == doctest::Approx(0.4));
  CHECK(non_unitality(gadc(0.5, 0.0)) == 0.0);
  CHECK_THROWS_AS(non_unitality(make_channel(1.0, 1.0, 0.0)), DegenerateInput);
}

TEST_CASE("channel action on Bloch vectors") {
  const PhaseCovariantChannel ch = make_channel(0.6, 0.3, 0.2);
  const BlochVector out = apply(ch, BlochVector{0.5, -0.5, 0.4});
  CHECK(out.x == doctest::Approx(0.3));
  CHECK(out.y == doctest::Approx(-0.3));
  CHECK(out.z == doctest::Approx(0.32));
}

TEST_CASE("CP conditions on the boundary and outside") {
  CHECK(is_cp(make_channel(0.0, -1.0, 0.0)).cp);
  CHECK(is_cp(gadc(0.7, 1.0)).cp);
  CHECK_FALSE(is_cp(make_channel(1.0, 0.5, 0.0)).cp);
  CHECK_FALSE(make_channel(1.0, 0.5, 0.0).valid);
  CHECK(is_cp_linear(make_channel(0.0, 0.0, 0.0)));
  CHECK_FALSE(is_cp_linear(make_channel(0.9, 0.7, 0.0)));
}

TEST_CASE("Kraus operators are complete and reproduce the channel") {
  for (const auto& ch : {gadc(0.5, 0.3), gadc(0.9, -1.0), make_channel(0.2, -0.4, 0.1)}) {
    const KrausSet ks = kraus(ch);
    CHECK(ks.completeness_residual() < 1e-12);
    const DensityMatrix rho = DensityMatrix::from_bloch({0.3, 0.1, -0.5});
    SmallMatrix out(2);
    for (const auto& k : ks.operators) out += k * rho.matrix() * k.adjoint();
    CHECK((out - apply(ch, rho).matrix()).frobenius_norm() < 1e-12);
  }
}

TEST_CASE("complementary channel has the same entropy on pure inputs") {
  const PhaseCovariantChannel ch = gadc(0.6, 0.5);
  for (double theta = 0.0; theta < std::numbers::pi; theta += 0.4) {
    const DensityMatrix psi = DensityMatrix::from_bloch({std::sin(theta), 0.0, std::cos(theta)});
    CHECK(entropy(apply(ch, psi)) == doctest::Approx(entropy(complementary_apply(ch, psi))).epsilon(1e-10));
  }
}

TEST_CASE("amplitude damping output entropy matches the binary entropy") {
  const PhaseCovariantChannel ch = gadc(0.6, 1.0);
  const DensityMatrix out = apply(ch, DensityMatrix::from_bloch({0, 0, -1}));
  const double z = out.bloch().z;
  CHECK(entropy(out) == doctest::Approx(ref_h2(0.5 * (1 + z))).epsilon(1e-12));
}

TEST_CASE("composition multiplies eigenvalues and mixing is convex") {
  const PhaseCovariantChannel a = gadc(0.5, 0.2);
  const PhaseCovariantChannel b = gadc(0.8, -0.3);
  const PhaseCovariantChannel c = compose(a, b);
  CHECK(c.lambda1 == doctest::Approx(0.4));
  CHECK(c.lambda3 == doctest::Approx(a.lambda3 * b.lambda3));
  CHECK(c.lambdaStar == doctest::Approx(a.lambdaStar + a.lambda3 * b.lambdaStar));

  const std::vector<PhaseCovariantChannel> chans{a, b};
  const std::vector<double> w{0.25, 0.75};
  const PhaseCovariantChannel m = mix(chans, w);
  CHECK(m.lambdaStar == doctest::Approx(0.25 * a.lambdaStar + 0.75 * b.lambdaStar));
  const std::vector<double> bad{0.5, 0.6};
  CHECK_THROWS_AS(mix(chans, bad), InvalidInput);
}

TEST_CASE("phase-covariant channels commute with z rotations") {
  const std::vector<double> phis{0.1, 1.3, 2.9};
  CHECK(covariance_check(gadc(0.4, 0.7), phis));
  const QubitMap flip_x = [](const SmallMatrix& x) { return pauli::sigma1() * x * pauli::sigma1(); };
  CHECK_FALSE(covariance_check(flip_x, phis));
}
