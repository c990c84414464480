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
#include <vector>

#include "doctest.h"
#include "qcapax/capacity.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/oracle.hpp"

using namespace qcapax;

TEST_CASE("unital closed forms at frozen points") {
  CHECK(binary_entropy(0.75) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CHECK(holevo_unital(0.5) == doctest::Approx(0.18872187554086717).epsilon(1e-14));
  CHECK(ce_unital(0.5) == doctest::Approx(0.37744375108173435).epsilon(1e-14));
  CHECK(holevo_unital(-0.5) == holevo_unital(0.5));
  CHECK(holevo_unital(1.0) == 1.0);
  CHECK(ce_unital(0.0) == 0.0);
  CHECK_THROWS_AS(holevo_unital(1.5), InvalidInput);
}

TEST_CASE("Holevo capacity of the GADC") {
  const HolevoSolve s = holevo_gadc(0.5, 1.0);
  CHECK(s.chi == doctest::Approx(0.26982074).epsilon(1e-7));
  CHECK_FALSE(s.lowConfidence);
  CHECK(std::abs(s.residual) < 1e-12);
  CHECK(holevo_gadc(0.5, 0.0).chi == doctest::Approx(holevo_unital(0.5)).epsilon(1e-12));
  CHECK(holevo_gadc(0.5, -0.4).chi == doctest::Approx(holevo_gadc(0.5, 0.4).chi).epsilon(1e-12));
  CHECK(holevo_gadc(0.0, 0.7).chi == 0.0);
  CHECK(holevo_gadc(1.0, 0.7).chi == 1.0);
}

TEST_CASE("entanglement-assisted capacity of the GADC") {
  CHECK(ce_gadc(0.5, 1e-6).value == doctest::Approx(ce_unital(0.5)).epsilon(1e-6));
  CHECK(ce_ad(0.5).value == doctest::Approx(0.59264886).epsilon(1e-7));
  CHECK(std::abs(ce_gadc(0.5, 1.0 - 1e-4).value - ce_ad(0.5).value) < 1e-3);
  const CEObjective o = ce_objective(0.4, 0.3, 0.2);
  CHECK(o.hPlus + o.hMinus + o.deltaPlus + o.deltaMinus == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ce_objective(0.4, 0.3, 1.5), InvalidInput);
}

TEST_CASE("capacity bounds dispatch and the GADC shape guard") {
  const CapacityBounds b = capacity_bounds(gadc(0.5, 1.0 / 3.0));
  CHECK(b.p == doctest::Approx(1.0 / 3.0));
  CHECK(b.lower <= b.upper);
  const CapacityBounds id = capacity_bounds(1.0, 0.2);
  CHECK(id.lower == 1.0);
  CHECK(id.upper == 2.0);
  CHECK_THROWS_AS(gadc_mixing_parameter(make_channel(0.5, 0.3, 0.1)), ShapeMismatch);
  CHECK_THROWS_AS(capacity_bounds(make_channel(0.5, 0.3, 0.1)), InvalidInput);
}

TEST_CASE("crossing windows for amplitude damping") {
  const auto w = crossing_windows(exp_family(1.0), 10.0, 1e-3);
  REQUIRE(w.size() == 1);
  CHECK(w[0].start == doctest::Approx(1.37707).epsilon(1e-4));
  CHECK(w[0].end == 10.0);
  CHECK(crossing_windows(exp_family(0.5), 10.0, 1e-3).empty());
}

TEST_CASE("capacity trajectory stays within the physical ranges") {
  const auto rows = trajectory(cos_family(2.0 / 3.0), 2.0 * 3.141592653589793, 64);
  REQUIRE(rows.size() == 64);
  for (const auto& r : rows) {
    CHECK(r.ok);
    CHECK(r.chi >= 0.0);
    CHECK(r.chi <= 1.0 + 1e-12);
    CHECK(r.cE >= r.chi - 1e-12);
    CHECK(r.cE <= 2.0 + 1e-12);
  }
  CHECK_THROWS_AS(trajectory(exp_family(0.0), 1.0, 1), InvalidInput);
}

TEST_CASE("oracles agree with the formulas") {
  const PhaseCovariantChannel ch = gadc(0.6, 2.0 / 3.0);
  const OracleReport chi = chi_bruteforce(ch, 4, 7);
  CHECK(chi.value == doctest::Approx(holevo_gadc(0.6, 2.0 / 3.0).chi).epsilon(5e-3));
  CHECK(holevo_of_ensemble(ch, chi.argmax) == doctest::Approx(chi.value).epsilon(1e-12));
  const OracleReport ce = ce_bruteforce(ch, 7);
  CHECK(ce.value == doctest::Approx(ce_gadc(0.6, 2.0 / 3.0).value).epsilon(1e-6));
  CHECK_FALSE(ce.offAxis);
}

TEST_CASE("Holevo oracle is reproducible and monotone in the ensemble size") {
  const PhaseCovariantChannel ch = gadc(0.3, 0.9);
  CHECK(chi_bruteforce(ch, 3, 5).value == chi_bruteforce(ch, 3, 5).value);
  CHECK(chi_bruteforce(ch, 3, 5).value <= chi_bruteforce(ch, 4, 5).value);
}

TEST_CASE("ensemble and input validation") {
  const PhaseCovariantChannel ch = gadc(0.5, 0.0);
  const Ensemble bad{{BlochVector{0, 0, 1}}, {0.5}};
  CHECK_THROWS_AS(holevo_of_ensemble(ch, bad), InvalidInput);
  const Ensemble equator{{BlochVector{1, 0, 0}, BlochVector{-1, 0, 0}}, {0.5, 0.5}};
  CHECK(holevo_of_ensemble(ch, equator) == doctest::Approx(holevo_unital(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(chi_bruteforce(make_channel(1.0, 0.5, 0.0)), InvalidInput);
}
