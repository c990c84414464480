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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcapax/capacity.hpp"
#include "qcapax/core.hpp"
#include "qcapax/dynamics.hpp"
#include "qcapax/linalg.hpp"
#include "qcapax/oracle.hpp"

namespace {

using namespace qcapax;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Independent reference: (1+x)log2(1+x) + (1-x)log2(1-x).
double ref_f(double x) {
  auto term = [](double y) { return y > 0.0 ? y * std::log2(y) : 0.0; };
  return term(1.0 + x) + term(1.0 - x);
}

const std::vector<double> kLambdaGrid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
const std::vector<double> kPGrid{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};

Outcome criterion1() {
  double worst_chi = 0.0;
  double worst_ce = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double l = i / 99.0;
    const double chi = holevo_unital(l);
    worst_chi = std::max(worst_chi, std::abs(chi - 0.5 * ref_f(l)));
    worst_ce = std::max(worst_ce, std::abs(ce_unital(l) - 2.0 * chi));
  }
  const bool ends = holevo_unital(1.0) == 1.0 && ce_unital(1.0) == 2.0 && holevo_unital(0.0) == 0.0 &&
                    ce_unital(0.0) == 0.0;
  return {worst_chi <= 1e-12 && worst_ce <= 1e-12 && ends,
          "max |chi - f/2| = " + fmt("%.2e", worst_chi) + ", max |C_E - 2 chi| = " + fmt("%.2e", worst_ce) +
              (ends ? ", endpoints exact" : ", endpoints NOT exact")};
}

struct OracleGrid {
  double worstChi = 0.0;
  double worstCe = 0.0;
  std::string worstChiAt;
  std::string worstCeAt;
};

const OracleGrid& oracle_grid() {
  static const OracleGrid grid = [] {
    OracleGrid g;
    for (const double l : kLambdaGrid) {
      for (const double p : kPGrid) {
        const PhaseCovariantChannel ch = gadc(l, p);
        const double chi = holevo_gadc(l, p).chi;
        const double ce = p == 1.0 ? ce_ad(l).value : ce_gadc(l, p).value;
        const double dchi = std::abs(chi - chi_bruteforce(ch, 4, 1).value);
        const double dce = std::abs(ce - ce_bruteforce(ch, 1).value);
        const std::string at = "(" + fmt("%.1f", l) + ", " + fmt("%.4f", p) + ")";
        if (dchi >= g.worstChi) {
          g.worstChi = dchi;
          g.worstChiAt = at;
        }
        if (dce >= g.worstCe) {
          g.worstCe = dce;
          g.worstCeAt = at;
        }
      }
    }
    return g;
  }();
  return grid;
}

Outcome criterion2() {
  const OracleGrid& g = oracle_grid();
  return {g.worstChi <= 5e-3, "36 points, max |chi - oracle| = " + fmt("%.2e", g.worstChi) + " at " + g.worstChiAt};
}

Outcome criterion3() {
  const OracleGrid& g = oracle_grid();
  return {g.worstCe <= 1e-4, "36 points, max |C_E - oracle| = " + fmt("%.2e", g.worstCe) + " at " + g.worstCeAt};
}

Outcome criterion4() {
  double d_chi = 0.0;
  double d_ce_u = 0.0;
  double d_ce_ad = 0.0;
  for (const double l : kLambdaGrid) {
    d_chi = std::max(d_chi, std::abs(holevo_gadc(l, 0.0).chi - holevo_unital(l)));
    d_ce_u = std::max(d_ce_u, std::abs(ce_gadc(l, 1e-6).value - ce_unital(l)));
    d_ce_ad = std::max(d_ce_ad, std::abs(ce_gadc(l, 1.0 - 1e-4).value - ce_ad(l).value));
  }
  return {d_chi <= 1e-9 && d_ce_u <= 1e-4 && d_ce_ad <= 1e-3,
          "chi(p=0) " + fmt("%.2e", d_chi) + ", C_E(p=1e-6) " + fmt("%.2e", d_ce_u) + ", C_E(p=1-1e-4) vs AD " +
              fmt("%.2e", d_ce_ad)};
}

Outcome criterion5() {
  const std::vector<double> ps{0.0, 1.0 / 3.0, 2.0 / 3.0, 0.9, 1.0};
  double worst_drop = 0.0;
  for (const double l : {0.3, 0.5, 0.7}) {
    double prev_chi = -1.0;
    double prev_ce = -1.0;
    for (const double p : ps) {
      const CapacityBounds b = capacity_bounds(l, p);
      if (prev_chi >= 0.0) {
        worst_drop = std::max({worst_drop, prev_chi - b.lower, prev_ce - b.upper});
      }
      prev_chi = b.lower;
      prev_ce = b.upper;
    }
  }
  return {worst_drop <= 1e-6, "largest decrease along p = " + fmt("%.2e", std::max(worst_drop, 0.0))};
}

Outcome criterion6() {
  const auto exp1 = crossing_windows(exp_family(1.0), 10.0, 1e-3);
  const auto exp09 = crossing_windows(exp_family(0.9), 10.0, 1e-3);
  const auto cos1 = crossing_windows(cos_family(1.0), 10.0, 1e-3);
  double drift = 0.0;
  for (std::size_t i = 1; i < cos1.size(); ++i) {
    const bool closed = cos1[i].end < 10.0;
    drift = std::max(drift, std::abs(cos1[i].start - cos1[i - 1].start - std::numbers::pi));
    if (closed) drift = std::max(drift, std::abs(cos1[i].end - cos1[i - 1].end - std::numbers::pi));
  }
  const bool periodic = cos1.size() >= 2 && drift < 1e-2;
  std::ostringstream d;
  d << "exp p=1: " << exp1.size() << " window(s)";
  if (!exp1.empty()) d << " [" << fmt("%.5f", exp1[0].start) << ", " << fmt("%.5f", exp1[0].end) << "]";
  d << "; exp p=0.9: " << exp09.size() << " window(s)";
  d << "; cos p=1: " << cos1.size() << " windows, period drift " << fmt("%.2e", drift);
  return {!exp1.empty() && !exp09.empty() && periodic, d.str()};
}

Outcome criterion7() {
  struct Params {
    double eta, xi1, xi3, xiStar;
  };
  const std::vector<Params> sets{{0.5, 1.0, 1.0, 1.0}, {0.3, 0.5, 0.8, 1.2}};
  double worst = 0.0;
  bool conditions = true;
  bool linear = true;
  std::vector<double> samples;
  for (int i = 0; i <= 200; ++i) samples.push_back(10.0 * i / 200.0);
  for (const auto& s : sets) {
    const Example1Result ex = example1_kernel(s.eta, s.xi1, s.xi3, s.xiStar);
    const Trajectory tr = volterra_solve(ex.kernel, 10.0, 1e-3);
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const PhaseCovariantChannel exact = ex.closedForm.at(tr.t[i]);
      worst = std::max({worst, std::abs(tr.lambda1[i] - exact.lambda1), std::abs(tr.lambda3[i] - exact.lambda3),
                        std::abs(tr.lambdaStar[i] - exact.lambdaStar)});
      linear = linear && is_cp_linear(tr.at(i));
    }
    conditions = conditions && check_theorem1_conditions(ex.ell, samples).legitimate();
  }
  return {worst < 1e-4 && conditions && linear,
          "max closed-form error " + fmt("%.2e", worst) + (conditions ? ", conditions hold" : ", conditions FAIL") +
              (linear ? ", linear CP test holds" : ", linear CP test FAILS")};
}

Outcome criterion8() {
  KernelSpec exp_kernel;
  exp_kernel.kappa1.deltaWeight = -1.0;
  exp_kernel.kappa3.deltaWeight = -2.0;
  const Trajectory e = volterra_solve(exp_kernel, 10.0, 1e-3);
  double err_exp = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    err_exp = std::max({err_exp, std::abs(e.lambda1[i] - std::exp(-e.t[i])),
                        std::abs(e.lambda3[i] - std::exp(-2.0 * e.t[i]))});
  }

  KernelSpec cos_kernel;
  cos_kernel.kappa3.smooth = [](double t) { return -2.0 * std::cos(std::numbers::sqrt2 * t); };
  const Trajectory c = volterra_solve(cos_kernel, 5.0, 1e-3);
  double err_cos = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double ct = std::cos(c.t[i]);
    err_cos = std::max(err_cos, std::abs(c.lambda3[i] - ct * ct));
  }
  return {err_exp <= 1e-6 && err_cos <= 1e-4,
          "delta kernel error " + fmt("%.2e", err_exp) + ", cosine kernel error " + fmt("%.2e", err_cos)};
}

Outcome criterion9() {
  const double dt = 1e-3;
  double worst = 0.0;
  std::string at;
  bool pass = true;
  for (const bool cosine : {false, true}) {
    for (const double p : {0.0, 2.0 / 3.0, 0.9, 1.0}) {
      const MixtureReport r = mixture_equivalence(cosine ? cos_family(p) : exp_family(p), 10.0, dt);
      pass = pass && r.passes(dt);
      if (r.maxDeviation >= worst) {
        worst = r.maxDeviation;
        at = std::string(cosine ? "cos" : "exp") + " p=" + fmt("%.4f", p);
      }
    }
  }
  return {pass, "max pairwise deviation " + fmt("%.2e", worst) + " at " + at + " (threshold " + fmt("%.0e", 100 * dt) +
                    ")"};
}

Outcome criterion10() {
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  int choi_mismatch = 0;
  int implication_fail = 0;
  int covariance_fail = 0;
  int valid = 0;
  for (int i = 0; i < 10000; ++i) {
    const PhaseCovariantChannel ch = make_channel(u(rng), u(rng), u(rng));
    const double min_eig = hermitian_eigenvalues(choi(ch).m)[0];
    const bool psd = min_eig >= -kCpTol;
    const bool quadratic = is_cp(ch).cp;
    if (psd != quadratic) ++choi_mismatch;
    if (is_cp_linear(ch) && !quadratic) ++implication_fail;
    if (ch.valid) {
      ++valid;
      const std::vector<double> phis{angle(rng), angle(rng), angle(rng)};
      if (!covariance_check(ch, phis)) ++covariance_fail;
    }
  }
  double worst_norm = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double l = u(rng);
    const double p = u(rng);
    const double z = u(rng);
    const CEObjective o = ce_objective(l, p, z);
    worst_norm = std::max(worst_norm, std::abs(o.hPlus + o.hMinus + o.deltaPlus + o.deltaMinus - 1.0));
  }
  std::ostringstream d;
  d << "Choi/quadratic mismatches " << choi_mismatch << ", linear=>quadratic failures " << implication_fail
    << ", covariance failures " << covariance_fail << "/" << valid << ", weight normalization "
    << fmt("%.2e", worst_norm);
  return {choi_mismatch == 0 && implication_fail == 0 && covariance_fail == 0 && worst_norm <= 1e-10, d.str()};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2zu: %s  %s  [%.2f s]\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
