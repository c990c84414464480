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
#include <memory>
#include <string>

#include "qcapax/dynamics.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/numerics.hpp"

namespace qcapax {

namespace {

constexpr double kLaplaceHorizon = 40.0;
constexpr double kConditionTol = 1e-12;

// ∫_a^b split into unit-length pieces so oscillating integrands stay resolved.
double piecewise_integral(const ScalarFn& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a))));
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    total += numerics::adaptive_simpson(f, a + (b - a) * i / pieces, a + (b - a) * (i + 1) / pieces,
                                        tol / pieces);
  }
  return total;
}

// (1 - e^{-ξt})/ξ with the ξ -> 0 limit t.
double saturating(double xi, double t) {
  if (xi == 0.0) return t;
  return -std::expm1(-xi * t) / xi;
}

std::vector<double> sample(const ScalarFn& f, std::size_t n, double h) {
  std::vector<double> v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) v[i] = f(h * static_cast<double>(i));
  return v;
}

// Piecewise-linear interpolant of a table on a uniform grid starting at 0.
ScalarFn interpolant(std::vector<double> table, double h) {
  auto data = std::make_shared<const std::vector<double>>(std::move(table));
  return [data, h](double t) {
    const double x = t / h;
    const auto last = static_cast<double>(data->size() - 1);
    if (x < 0.0 || x > last * (1.0 + 1e-12) + 1e-9) {
      throw InvalidInput("kernel evaluated beyond its tabulated horizon (t = " + std::to_string(t) + ")");
    }
    const double clamped = std::min(x, last);
    const auto i = std::min(static_cast<std::size_t>(clamped), data->size() - 2);
    const double frac = clamped - static_cast<double>(i);
    return (*data)[i] + frac * ((*data)[i + 1] - (*data)[i]);
  };
}

// Solves k = b + k∗ℓ (trapezoidal convolution) on the grid.
std::vector<double> solve_resolvent(const std::vector<double>& forcing, const std::vector<double>& ell,
                                    double h) {
  const std::size_t n = forcing.size();
  std::vector<double> k(n, 0.0);
  k[0] = forcing[0];
  const double denom = 1.0 - 0.5 * h * ell[0];
  if (std::abs(denom) < 1e-12) throw NumericalFailure("theorem1_kernel: resolvent step is singular");
  for (std::size_t m = 1; m < n; ++m) {
    double conv = 0.5 * k[0] * ell[m];
    for (std::size_t i = 1; i < m; ++i) conv += k[i] * ell[m - i];
    k[m] = (forcing[m] + h * conv) / denom;
  }
  return k;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(std::max(n, 2)));
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(v.size() - 1);
  }
  return v;
}

}  // namespace

KernelComponent operator+(const KernelComponent& a, const KernelComponent& b) {
  KernelComponent c;
  c.deltaWeight = a.deltaWeight + b.deltaWeight;
  if (a.has_smooth() && b.has_smooth()) {
    c.smooth = [fa = a.smooth, fb = b.smooth](double t) { return fa(t) + fb(t); };
  } else if (a.has_smooth()) {
    c.smooth = a.smooth;
  } else if (b.has_smooth()) {
    c.smooth = b.smooth;
  }
  if (a.has_laplace() && b.has_laplace()) {
    c.laplace = [la = a.laplace, lb = b.laplace](double s) { return la(s) + lb(s); };
  }
  return c;
}

KernelComponent operator*(double s, const KernelComponent& a) {
  KernelComponent c;
  if (s == 0.0) {
    c.laplace = [](double) { return 0.0; };
    return c;
  }
  c.deltaWeight = s * a.deltaWeight;
  if (a.has_smooth()) c.smooth = [s, f = a.smooth](double t) { return s * f(t); };
  if (a.has_laplace()) c.laplace = [s, f = a.laplace](double x) { return s * f(x); };
  return c;
}

KernelSpec kernel_from_k(const KernelRates& k) {
  return {-0.5 * (k.kPlus + k.kMinus + k.k3), -1.0 * (k.kPlus + k.kMinus),
          k.kPlus + (-1.0) * k.kMinus};
}

KernelRates k_from_kernel(const KernelSpec& kernel) {
  return {0.5 * ((-1.0) * kernel.kappa3 + kernel.kappaStar),
          0.5 * ((-1.0) * kernel.kappa3 + (-1.0) * kernel.kappaStar),
          kernel.kappa3 + (-2.0) * kernel.kappa1};
}

KernelSpec mix_kernels(std::span<const KernelSpec> kernels, std::span<const double> weights) {
  if (kernels.empty() || kernels.size() != weights.size()) {
    throw InvalidInput("mix_kernels: need one weight per kernel");
  }
  KernelSpec out = {weights[0] * kernels[0].kappa1, weights[0] * kernels[0].kappa3,
                    weights[0] * kernels[0].kappaStar};
  for (std::size_t i = 1; i < kernels.size(); ++i) {
    out.kappa1 = out.kappa1 + weights[i] * kernels[i].kappa1;
    out.kappa3 = out.kappa3 + weights[i] * kernels[i].kappa3;
    out.kappaStar = out.kappaStar + weights[i] * kernels[i].kappaStar;
  }
  return out;
}

double numeric_kernel_laplace(const KernelComponent& c, double s, double horizon) {
  if (!c.has_smooth()) return c.deltaWeight;
  return c.deltaWeight +
         piecewise_integral([&](double t) { return std::exp(-s * t) * c.smooth(t); }, 0.0, horizon,
                            1e-12);
}

// ---------------------------------------------------------------------------
// EllFunction

double EllFunction::at(double t) const { return value ? value(t) : 0.0; }

double EllFunction::integral_at(double t) const {
  if (integral) return integral(t);
  if (!value) return 0.0;
  return piecewise_integral(value, 0.0, t, 1e-12);
}

double EllFunction::derivative_at(double t) const {
  if (derivative) return derivative(t);
  if (!value) return 0.0;
  const double h = 1e-5 * std::max(1.0, std::abs(t));
  if (t < 2.0 * h) {
    return (-3.0 * value(t) + 4.0 * value(t + h) - value(t + 2.0 * h)) / (2.0 * h);
  }
  return (value(t + h) - value(t - h)) / (2.0 * h);
}

double EllFunction::laplace_at(double s) const {
  if (laplace) return laplace(s);
  if (!value) return 0.0;
  const double body =
      piecewise_integral([&](double t) { return std::exp(-s * t) * value(t); }, 0.0, kLaplaceHorizon, 1e-12);
  // Tail: continue ℓ past the horizon with its local exponential decay rate.
  const double end = value(kLaplaceHorizon);
  const double before = value(kLaplaceHorizon - 1.0);
  double decay = 0.0;
  if (end != 0.0 && before != 0.0 && (end > 0.0) == (before > 0.0)) {
    decay = std::max(0.0, std::log(before / end));
  }
  return body + end * std::exp(-s * kLaplaceHorizon) / (s + decay);
}

EllFunction zero_ell() {
  EllFunction e;
  e.value = [](double) { return 0.0; };
  e.integral = [](double) { return 0.0; };
  e.derivative = [](double) { return 0.0; };
  e.laplace = [](double) { return 0.0; };
  return e;
}

EllFunction exponential_ell(double amplitude, double rate) {
  EllFunction e;
  e.value = [=](double t) { return amplitude * std::exp(-rate * t); };
  e.integral = [=](double t) { return amplitude * saturating(rate, t); };
  e.derivative = [=](double t) { return -rate * amplitude * std::exp(-rate * t); };
  e.laplace = [=](double s) { return amplitude / (s + rate); };
  return e;
}

EllFunction scale_ell(const EllFunction& ell, double factor) {
  auto scaled = [factor](const ScalarFn& f) -> ScalarFn {
    if (!f) return {};
    return [factor, f](double x) { return factor * f(x); };
  };
  return {scaled(ell.value), scaled(ell.integral), scaled(ell.derivative), scaled(ell.laplace)};
}

PhaseCovariantChannel EllParameterization::channel_at(double t) const {
  return make_channel(1.0 - ell1.integral_at(t), 1.0 - ell3.integral_at(t), -ellStar.integral_at(t));
}

PhaseCovariantChannel ClosedFormTrajectory::at(double t) const {
  return make_channel(lambda1(t), lambda3(t), lambdaStar(t));
}

// ---------------------------------------------------------------------------
// Recipes

ConditionReport check_theorem1_conditions(const EllParameterization& ell,
                                          std::span<const double> sample_times) {
  ConditionReport r;
  r.sampleTimes.assign(sample_times.begin(), sample_times.end());
  r.c1Margin = INFINITY;
  r.c2Margin = INFINITY;
  for (const double t : sample_times) {
    const double i1 = ell.ell1.integral_at(t);
    const double i3 = ell.ell3.integral_at(t);
    const double istar = std::abs(ell.ellStar.integral_at(t));
    const double c1 = i3 - istar;
    const double half = 0.5 * (i3 + istar);
    const double c2 = std::min(i1 - half, 2.0 - half - i1);
    r.c1Margin = std::min(r.c1Margin, c1);
    r.c2Margin = std::min(r.c2Margin, c2);
    const bool ok1 = c1 >= -kConditionTol;
    const bool ok2 = c2 >= -kConditionTol;
    if ((!ok1 || !ok2) && r.firstViolation < 0.0) r.firstViolation = t;
    r.c1 = r.c1 && ok1;
    r.c2 = r.c2 && ok2;
  }
  return r;
}

Theorem1Result theorem1_kernel(const EllParameterization& ell, const KernelBuildOptions& opts) {
  if (!(opts.dt > 0.0) || !(opts.horizon > 0.0)) {
    throw InvalidInput("theorem1_kernel: horizon and dt must be positive");
  }
  const auto n = static_cast<std::size_t>(std::ceil(opts.horizon / opts.dt - 1e-9));
  const double h = opts.dt;

  const ScalarFn l1 = [&](double t) { return ell.ell1.at(t); };
  const ScalarFn l3 = [&](double t) { return ell.ell3.at(t); };
  const ScalarFn ls = [&](double t) { return ell.ellStar.at(t); };
  const auto ell1 = sample(l1, n, h);
  const auto ell3 = sample(l3, n, h);
  const auto ellS = sample(ls, n, h);
  const auto d1 = sample([&](double t) { return ell.ell1.derivative_at(t); }, n, h);
  const auto d3 = sample([&](double t) { return ell.ell3.derivative_at(t); }, n, h);
  const auto dS = sample([&](double t) { return ell.ellStar.derivative_at(t); }, n, h);

  const double c1 = -ell1[0];
  const double c3 = -ell3[0];
  const double cS = -ellS[0];

  std::vector<double> f1(n + 1), f3(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    f1[i] = -d1[i] + c1 * ell1[i];
    f3[i] = -d3[i] + c3 * ell3[i];
  }
  const auto k1 = solve_resolvent(f1, ell1, h);
  const auto k3 = solve_resolvent(f3, ell3, h);

  std::vector<double> kS(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    double conv = 0.0;
    if (m > 0) {
      conv = 0.5 * (k3[0] * ellS[m] + k3[m] * ellS[0]);
      for (std::size_t i = 1; i < m; ++i) conv += k3[i] * ellS[m - i];
      conv *= h;
    }
    kS[m] = -dS[m] + c3 * ellS[m] + conv;
  }

  Theorem1Result out;
  auto lap1 = [e = ell.ell1](double s) {
    const double l = e.laplace_at(s);
    return -s * l / (1.0 - l);
  };
  auto lap3 = [e = ell.ell3](double s) {
    const double l = e.laplace_at(s);
    return -s * l / (1.0 - l);
  };
  auto lapS = [e3 = ell.ell3, eS = ell.ellStar](double s) {
    return -s * eS.laplace_at(s) / (1.0 - e3.laplace_at(s));
  };
  out.kernel.kappa1 = {c1, interpolant(k1, h), lap1};
  out.kernel.kappa3 = {c3, interpolant(k3, h), lap3};
  out.kernel.kappaStar = {cS, interpolant(kS, h), lapS};
  const auto samples = linspace(0.0, opts.horizon, opts.conditionSamples);
  out.conditions = check_theorem1_conditions(ell, samples);
  return out;
}

Example1Result example1_kernel(double eta, double xi1, double xi3, double xiStar) {
  for (const double v : {eta, xi1, xi3, xiStar}) {
    if (!std::isfinite(v)) throw InvalidInput("example1_kernel: parameters must be finite");
  }
  if (!(xiStar >= xi3 && xi3 >= xi1 && xi1 >= eta && eta >= 0.0)) {
    throw InvalidInput("example1_kernel: requires xiStar >= xi3 >= xi1 >= eta >= 0");
  }
  Example1Result r;
  r.ell = {exponential_ell(eta, xi1), exponential_ell(eta, xi3), exponential_ell(eta, xiStar)};
  r.closedForm.lambda1 = [=](double t) { return 1.0 - eta * saturating(xi1, t); };
  r.closedForm.lambda3 = [=](double t) { return 1.0 - eta * saturating(xi3, t); };
  r.closedForm.lambdaStar = [=](double t) { return -eta * saturating(xiStar, t); };

  auto diagonal = [eta](double xi) {
    KernelComponent c;
    c.deltaWeight = -eta;
    const double decay = xi - eta;
    if (eta != 0.0 && decay != 0.0) {
      c.smooth = [=](double t) { return eta * decay * std::exp(-decay * t); };
    }
    c.laplace = [=](double s) { return -s * eta / (s + decay); };
    return c;
  };
  r.kernel.kappa1 = diagonal(xi1);
  r.kernel.kappa3 = diagonal(xi3);

  KernelComponent& ks = r.kernel.kappaStar;
  ks.deltaWeight = -eta;
  if (eta != 0.0) {
    const double norm = eta + xiStar - xi3;
    const double a = eta * (xi3 - eta) / norm;
    const double b = xiStar * (xiStar - xi3) / norm;
    ks.smooth = [=](double t) {
      return eta * (a * std::exp(-(xi3 - eta) * t) + b * std::exp(-xiStar * t));
    };
  }
  ks.laplace = [=](double s) {
    return -eta * s * (s + xi3) / ((s + xiStar) * (s + xi3 - eta));
  };
  return r;
}

SingleFunctionResult single_function_kernel(double a1, double a3, double aStar,
                                            const EllFunction& ell, int sign,
                                            const KernelBuildOptions& opts) {
  for (const double a : {a1, a3, aStar}) {
    if (!std::isfinite(a) || a <= 0.0) {
      throw InvalidInput("single_function_kernel: a1, a3, aStar must be positive");
    }
  }
  if (sign != 1 && sign != -1) throw InvalidInput("single_function_kernel: sign must be +1 or -1");

  const EllParameterization params{scale_ell(ell, 1.0 / a1), scale_ell(ell, 1.0 / a3),
                                   scale_ell(ell, -static_cast<double>(sign) / aStar)};
  auto built = theorem1_kernel(params, opts);

  SingleFunctionResult r;
  r.kernel = std::move(built.kernel);
  r.conditions = std::move(built.conditions);
  r.kernel.kappaStar.laplace = [=](double s) {
    const double l = ell.laplace_at(s);
    return sign * s * a3 * l / (a3 * aStar - aStar * l);
  };

  AdmissibilityReport& adm = r.admissibility;
  adm.a3LeAStar = a3 <= aStar;
  adm.a1Bound = a1 <= 2.0 * a3 * aStar / (a3 + aStar);
  const double bound = 4.0 / (2.0 / a1 + 1.0 / a3 + 1.0 / aStar);
  adm.integralBoundMargin = INFINITY;
  for (const double t : r.conditions.sampleTimes) {
    const double integral = ell.integral_at(t);
    adm.nonnegativeIntegral = adm.nonnegativeIntegral && integral >= -kConditionTol;
    adm.integralBoundMargin = std::min(adm.integralBoundMargin, bound - integral);
  }
  adm.integralBound = adm.integralBoundMargin >= -kConditionTol;

  r.closedForm.lambda1 = [=](double t) { return 1.0 - ell.integral_at(t) / a1; };
  r.closedForm.lambda3 = [=](double t) { return 1.0 - ell.integral_at(t) / a3; };
  r.closedForm.lambdaStar = [=](double t) { return sign * ell.integral_at(t) / aStar; };
  return r;
}

}  // namespace qcapax
