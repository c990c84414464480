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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qcapax/dynamics.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/recipe.hpp"

using namespace qcapax;

namespace {

double max_error(const Trajectory& tr, const ClosedFormTrajectory& exact) {
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const PhaseCovariantChannel e = exact.at(tr.t[i]);
    worst = std::max({worst, std::abs(tr.lambda1[i] - e.lambda1), std::abs(tr.lambda3[i] - e.lambda3),
                      std::abs(tr.lambdaStar[i] - e.lambdaStar)});
  }
  return worst;
}

}  // namespace

TEST_CASE("constant rates give the semigroup closed form") {
  const double gp = 0.7, gm = 0.2, g3 = 0.4;
  const GeneratorSpec g = constant_rates(gp, gm, g3);
  for (const double t : {0.0, 0.5, 2.0}) {
    const PhaseCovariantChannel ch = eigenvalues_from_rates(g, t);
    const double big = gp + gm;
    CHECK(ch.lambda1 == doctest::Approx(std::exp(-0.5 * (big + g3) * t)).epsilon(1e-10));
    CHECK(ch.lambda3 == doctest::Approx(std::exp(-big * t)).epsilon(1e-10));
    CHECK(ch.lambdaStar == doctest::Approx((gp - gm) / big * (1.0 - std::exp(-big * t))).epsilon(1e-10));
  }
  const PhaseCovariantChannel a = eigenvalues_from_rates(g, 0.8);
  const PhaseCovariantChannel b = eigenvalues_from_rates(g, 1.1);
  const PhaseCovariantChannel ab = eigenvalues_from_rates(g, 1.9);
  const PhaseCovariantChannel c = compose(a, b);
  CHECK(c.lambda1 == doctest::Approx(ab.lambda1).epsilon(1e-10));
  CHECK(c.lambda3 == doctest::Approx(ab.lambda3).epsilon(1e-10));
  CHECK(c.lambdaStar == doctest::Approx(ab.lambdaStar).epsilon(1e-10));
}

TEST_CASE("GADC generator reproduces the exponential family") {
  const GadcFamily fam = exp_family(0.6);
  const GeneratorRates r = gadc_generator(fam, 1.3);
  CHECK(r.gammaPlus == doctest::Approx(1.6));
  CHECK(r.gammaMinus == doctest::Approx(0.4));
  const GeneratorSpec g = gadc_generator_spec(fam);
  for (const double t : {0.3, 1.0, 3.0}) {
    const PhaseCovariantChannel num = eigenvalues_from_rates(g, t);
    const PhaseCovariantChannel exact = fam.channel(t);
    CHECK(num.lambda1 == doctest::Approx(exact.lambda1).epsilon(1e-9));
    CHECK(num.lambda3 == doctest::Approx(exact.lambda3).epsilon(1e-9));
    CHECK(num.lambdaStar == doctest::Approx(exact.lambdaStar).epsilon(1e-9));
  }
}

TEST_CASE("cosine family zeros and generator singularity") {
  const GadcFamily fam = cos_family(0.5);
  const auto z = fam.zeros(7.0);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(std::numbers::pi / 2));
  CHECK(z[1] == doctest::Approx(3 * std::numbers::pi / 2));
  CHECK_THROWS_AS(gadc_generator(fam, std::numbers::pi / 2), DegenerateInput);
  CHECK_THROWS_AS(cos_family(1.5), InvalidInput);
}

TEST_CASE("kernel and rate parameterizations invert each other") {
  KernelRates k;
  k.kPlus.deltaWeight = 0.3;
  k.kMinus.deltaWeight = 0.5;
  k.k3.deltaWeight = 0.2;
  const KernelSpec spec = kernel_from_k(k);
  CHECK(spec.kappa1.deltaWeight == doctest::Approx(-0.5));
  CHECK(spec.kappa3.deltaWeight == doctest::Approx(-0.8));
  CHECK(spec.kappaStar.deltaWeight == doctest::Approx(-0.2));
  const KernelRates back = k_from_kernel(spec);
  CHECK(back.kPlus.deltaWeight == doctest::Approx(0.3));
  CHECK(back.kMinus.deltaWeight == doctest::Approx(0.5));
  CHECK(back.k3.deltaWeight == doctest::Approx(0.2));
}

TEST_CASE("Volterra solver on delta kernels matches exponentials") {
  KernelSpec kernel;
  kernel.kappa1.deltaWeight = -1.0;
  kernel.kappa3.deltaWeight = -2.0;
  kernel.kappaStar.deltaWeight = 1.0;
  const Trajectory tr = volterra_solve(kernel, 3.0, 1e-3);
  const std::size_t last = tr.size() - 1;
  CHECK(tr.t[last] == doctest::Approx(3.0));
  CHECK(tr.lambda1[last] == doctest::Approx(std::exp(-3.0)).epsilon(1e-6));
  CHECK(tr.lambda3[last] == doctest::Approx(std::exp(-6.0)).epsilon(1e-6));
  CHECK(tr.lambdaStar[last] == doctest::Approx(0.5 * (1 - std::exp(-6.0))).epsilon(1e-6));
  CHECK_THROWS_AS(volterra_solve(kernel, 1.0, 0.0), InvalidInput);
}

TEST_CASE("exponential-memory kernel matches its closed form") {
  const Example1Result ex = example1_kernel(0.3, 0.5, 0.8, 1.2);
  const Trajectory tr = volterra_solve(ex.kernel, 4.0, 1e-3);
  CHECK(max_error(tr, ex.closedForm) < 1e-5);
  CHECK(convolution_identity_check(ex.kernel, tr) < 1e-5);
  std::vector<double> samples;
  for (int i = 0; i <= 40; ++i) samples.push_back(0.1 * i);
  CHECK(check_theorem1_conditions(ex.ell, samples).legitimate());
  CHECK_THROWS_AS(example1_kernel(2.0, 0.5, 0.8, 1.2), InvalidInput);
}

TEST_CASE("kernel reconstructed from exponential ell functions") {
  const EllParameterization ell{exponential_ell(0.8, 1.0), exponential_ell(1.0, 1.0), exponential_ell(-0.5, 1.0)};
  KernelBuildOptions opts;
  opts.horizon = 3.0;
  opts.dt = 1e-3;
  const Theorem1Result res = theorem1_kernel(ell, opts);
  CHECK(res.conditions.legitimate());
  const Trajectory tr = volterra_solve(res.kernel, 3.0, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.size(); i += 50) {
    const PhaseCovariantChannel e = ell.channel_at(tr.t[i]);
    worst = std::max({worst, std::abs(tr.lambda1[i] - e.lambda1), std::abs(tr.lambda3[i] - e.lambda3),
                      std::abs(tr.lambdaStar[i] - e.lambdaStar)});
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("single-function recipe admissibility") {
  const SingleFunctionResult ok = single_function_kernel(1.0, 1.0, 1.0, exponential_ell(1.0, 1.0), 1);
  CHECK(ok.admissibility.admissible());
  const SingleFunctionResult bad = single_function_kernel(1.0, 2.0, 1.0, exponential_ell(1.0, 1.0), 1);
  CHECK_FALSE(bad.admissibility.a3LeAStar);
  CHECK_FALSE(bad.admissibility.admissible());
  CHECK_THROWS_AS(single_function_kernel(1.0, 1.0, 1.0, exponential_ell(1.0, 1.0), 0), InvalidInput);
}

TEST_CASE("kernel recipes parse and report") {
  const KernelRecipe r = parse_kernel_recipe(R"({"recipe": "example1", "eta": 0.5, "xi1": 1, "xi3": 1, "xiStar": 1})");
  CHECK(r.kind == KernelRecipe::Kind::Example1);
  CHECK(parse_kernel_recipe(to_json(r)).eta == 0.5);
  const BuiltKernel built = build_kernel(r);
  CHECK(built.acceptable());
  CHECK(report_json(r, built).find("\"acceptable\": true") != std::string::npos);
  CHECK_THROWS_AS(parse_kernel_recipe("{"), InvalidInput);
  CHECK_THROWS_AS(parse_kernel_recipe(R"({"recipe": "example2"})"), InvalidInput);
  CHECK_THROWS_AS(parse_kernel_recipe(R"({"recipe": "example1", "eta": "x"})"), InvalidInput);
  CHECK_THROWS_AS(parse_kernel_recipe(R"({"recipe": "single", "a1": 1, "a3": 1, "aStar": 1, "rate": 1, "sign": 2})"),
                  InvalidInput);
}

TEST_CASE("tabulated profile interpolates and loads from CSV") {
  std::vector<double> ts, vs;
  for (int i = 0; i <= 400; ++i) {
    ts.push_back(0.01 * i);
    vs.push_back(std::cos(0.01 * i));
  }
  const TabulatedProfile prof(ts, vs);
  CHECK(prof.value(1.234) == doctest::Approx(std::cos(1.234)).epsilon(1e-7));
  CHECK(prof.derivative(1.234) == doctest::Approx(-std::sin(1.234)).epsilon(1e-4));
  CHECK_THROWS_AS(prof.value(5.0), InvalidInput);
  CHECK_THROWS_AS(TabulatedProfile({0.0, 1.0}, {1.0, 0.5}), InvalidInput);

  const auto path = std::filesystem::temp_directory_path() / "qcapax_profile_test.csv";
  {
    std::ofstream out(path);
    out << "t,lambda\n";
    for (std::size_t i = 0; i < ts.size(); ++i) out << ts[i] << ',' << vs[i] << '\n';
  }
  const auto table = std::make_shared<const TabulatedProfile>(TabulatedProfile::from_csv(path.string()));
  const GadcFamily fam = tabulated_family(table, 0.5);
  const auto zeros = fam.zeros(4.0);
  REQUIRE(zeros.size() == 1);
  CHECK(zeros[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
  std::filesystem::remove(path);
}

TEST_CASE("mixture routes agree for the exponential family") {
  const MixtureReport r = mixture_equivalence(exp_family(0.5), 3.0, 1e-3);
  CHECK(r.passes(1e-3));
  CHECK(r.maxDeviation < 1e-6);
  CHECK(r.singularities.empty());
}
