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
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "qcapax/dynamics.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/numerics.hpp"

namespace qcapax {

namespace {

constexpr double kZeroGuard = 1e-4;
constexpr double kSingularLambda = 1e-15;

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double trajectory_distance(const Trajectory& a, const Trajectory& b) {
  return std::max({max_abs_diff(a.lambda1, b.lambda1), max_abs_diff(a.lambda3, b.lambda3),
                   max_abs_diff(a.lambdaStar, b.lambdaStar)});
}

void push(Trajectory& tr, double t, const PhaseCovariantChannel& ch) {
  tr.t.push_back(t);
  tr.lambda1.push_back(ch.lambda1);
  tr.lambda3.push_back(ch.lambda3);
  tr.lambdaStar.push_back(ch.lambdaStar);
}

GadcFamily with_p(const GadcFamily& fam, double p) {
  GadcFamily g = fam;
  g.p = p;
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// TabulatedProfile

TabulatedProfile::TabulatedProfile(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  const std::size_t n = times_.size();
  if (n < 3 || values_.size() != n) {
    throw InvalidInput("tabulated profile needs at least 3 (t, lambda) samples");
  }
  if (times_[0] != 0.0) throw InvalidInput("tabulated profile must start at t = 0");
  if (std::abs(values_[0] - 1.0) > 1e-9) throw InvalidInput("tabulated profile must have lambda(0) = 1");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) {
      throw InvalidInput("tabulated profile has non-finite samples");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw InvalidInput("tabulated profile times must be strictly increasing");
    }
    if (std::abs(values_[i]) > 1.0 + 1e-12) throw InvalidInput("tabulated profile needs |lambda| <= 1");
  }

  // Natural spline: tridiagonal system for the interior second derivatives.
  second_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = times_[i] - times_[i - 1];
    const double hr = times_[i + 1] - times_[i];
    diag[i] = 2.0 * (hl + hr);
    upper[i] = hr;
    rhs[i] = 6.0 * ((values_[i + 1] - values_[i]) / hr - (values_[i] - values_[i - 1]) / hl);
    if (i > 1) {
      const double w = hl / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
  }
}

TabulatedProfile TabulatedProfile::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open profile file: " + path);
  std::vector<double> ts, vs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double t = 0.0, v = 0.0;
    if (!(row >> t >> v)) {
      if (ts.empty() && lineno == 1) continue;  // header
      throw InvalidInput("malformed profile row " + std::to_string(lineno) + " in " + path);
    }
    ts.push_back(t);
    vs.push_back(v);
  }
  return TabulatedProfile(std::move(ts), std::move(vs));
}

std::size_t TabulatedProfile::segment(double t) const {
  if (!(t >= 0.0) || t > times_.back() * (1.0 + 1e-12)) {
    throw InvalidInput("tabulated profile evaluated outside [0, " + std::to_string(times_.back()) + "]");
  }
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto idx = static_cast<std::size_t>(std::distance(times_.begin(), it));
  return std::clamp<std::size_t>(idx, 1, times_.size() - 1) - 1;
}

double TabulatedProfile::value(double t) const {
  const std::size_t i = segment(t);
  const double h = times_[i + 1] - times_[i];
  const double a = (times_[i + 1] - t) / h;
  const double b = (t - times_[i]) / h;
  return a * values_[i] + b * values_[i + 1] +
         ((a * a * a - a) * second_[i] + (b * b * b - b) * second_[i + 1]) * h * h / 6.0;
}

double TabulatedProfile::derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = times_[i + 1] - times_[i];
  const double a = (times_[i + 1] - t) / h;
  const double b = (t - times_[i]) / h;
  return (values_[i + 1] - values_[i]) / h - (3.0 * a * a - 1.0) / 6.0 * h * second_[i] +
         (3.0 * b * b - 1.0) / 6.0 * h * second_[i + 1];
}

double TabulatedProfile::second_derivative(double t) const {
  const std::size_t i = segment(t);
  const double h = times_[i + 1] - times_[i];
  const double a = (times_[i + 1] - t) / h;
  return a * second_[i] + (1.0 - a) * second_[i + 1];
}

// ---------------------------------------------------------------------------
// GadcFamily

double GadcFamily::lambda(double t) const {
  switch (profile) {
    case Profile::Exp:
      return std::exp(-t);
    case Profile::Cos:
      return std::cos(t);
    case Profile::Tabulated:
      return table->value(t);
  }
  return 0.0;
}

double GadcFamily::lambda_dot(double t) const {
  switch (profile) {
    case Profile::Exp:
      return -std::exp(-t);
    case Profile::Cos:
      return -std::sin(t);
    case Profile::Tabulated:
      return table->derivative(t);
  }
  return 0.0;
}

double GadcFamily::lambda_ddot(double t) const {
  switch (profile) {
    case Profile::Exp:
      return std::exp(-t);
    case Profile::Cos:
      return -std::cos(t);
    case Profile::Tabulated:
      return table->second_derivative(t);
  }
  return 0.0;
}

PhaseCovariantChannel GadcFamily::channel(double t) const { return gadc(lambda(t), p); }

std::vector<double> GadcFamily::zeros(double horizon) const {
  std::vector<double> out;
  if (profile == Profile::Exp) return out;
  if (profile == Profile::Cos) {
    for (double z = std::numbers::pi / 2; z <= horizon; z += std::numbers::pi) out.push_back(z);
    return out;
  }
  const auto ts = table->times();
  const double end = std::min(horizon, table->t_max());
  const ScalarFn f = [this](double t) { return table->value(t); };
  // Knot sampling refined 8x per segment so spline wiggles are not missed.
  double prev_t = 0.0;
  double prev_v = f(0.0);
  for (std::size_t i = 1; i < ts.size() && prev_t < end; ++i) {
    for (int k = 1; k <= 8; ++k) {
      const double t = std::min(end, ts[i - 1] + (ts[i] - ts[i - 1]) * k / 8.0);
      if (t <= prev_t) continue;
      const double v = f(t);
      if (v == 0.0) {
        out.push_back(t);
      } else if (prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0)) {
        out.push_back(numerics::bisect(f, prev_t, t, 1e-14));
      }
      prev_t = t;
      prev_v = v;
    }
  }
  return out;
}

std::string GadcFamily::profile_name() const {
  switch (profile) {
    case Profile::Exp:
      return "exp";
    case Profile::Cos:
      return "cos";
    case Profile::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

static void check_p(double p) {
  if (!std::isfinite(p) || std::abs(p) > 1.0) throw InvalidInput("GADC mixing parameter needs |p| <= 1");
}

GadcFamily exp_family(double p) {
  check_p(p);
  return {Profile::Exp, p, nullptr};
}

GadcFamily cos_family(double p) {
  check_p(p);
  return {Profile::Cos, p, nullptr};
}

GadcFamily tabulated_family(std::shared_ptr<const TabulatedProfile> table, double p) {
  check_p(p);
  if (!table) throw InvalidInput("tabulated family needs samples");
  return {Profile::Tabulated, p, std::move(table)};
}

// ---------------------------------------------------------------------------
// Generators and kernels

GeneratorRates gadc_generator(const GadcFamily& fam, double t) {
  const double l = fam.lambda(t);
  if (std::abs(l) < kSingularLambda) {
    throw DegenerateInput("gadc_generator: lambda(t) = 0 at t = " + std::to_string(t) +
                          ", the time-local generator is singular");
  }
  const double r = -fam.lambda_dot(t) / l;
  return {r * (1.0 + fam.p), r * (1.0 - fam.p), 0.0};
}

GeneratorSpec gadc_generator_spec(const GadcFamily& fam) {
  return {[fam](double t) { return gadc_generator(fam, t).gammaPlus; },
          [fam](double t) { return gadc_generator(fam, t).gammaMinus; },
          [](double) { return 0.0; }};
}

KernelSpec gadc_kernel(const GadcFamily& fam, const KernelBuildOptions& opts) {
  const double p = fam.p;
  KernelSpec k;
  switch (fam.profile) {
    case Profile::Exp:
      k.kappa1 = {-1.0, {}, [](double) { return -1.0; }};
      k.kappa3 = {-2.0, {}, [](double) { return -2.0; }};
      break;
    case Profile::Cos:
      k.kappa1 = {0.0, [](double) { return -1.0; }, [](double s) { return -1.0 / s; }};
      k.kappa3 = {0.0, [](double t) { return -2.0 * std::cos(std::numbers::sqrt2 * t); },
                  [](double s) { return -2.0 * s / (s * s + 2.0); }};
      break;
    case Profile::Tabulated: {
      auto tab = fam.table;
      auto ell_of = [&tab](double scale, bool squared) {
        EllFunction e;
        if (squared) {
          e.value = [tab, scale](double t) { return scale * 2.0 * tab->value(t) * tab->derivative(t); };
          e.integral = [tab, scale](double t) {
            const double l = tab->value(t);
            return scale * (l * l - 1.0);
          };
          e.derivative = [tab, scale](double t) {
            const double d = tab->derivative(t);
            return scale * 2.0 * (d * d + tab->value(t) * tab->second_derivative(t));
          };
        } else {
          e.value = [tab, scale](double t) { return scale * tab->derivative(t); };
          e.integral = [tab, scale](double t) { return scale * (tab->value(t) - 1.0); };
          e.derivative = [tab, scale](double t) { return scale * tab->second_derivative(t); };
        }
        // Laplace transform truncated at the end of the table.
        e.laplace = [value = e.value, tmax = tab->t_max()](double s) {
          const int pieces = std::max(1, static_cast<int>(std::ceil(tmax)));
          double total = 0.0;
          for (int i = 0; i < pieces; ++i) {
            total += numerics::adaptive_simpson([&](double t) { return std::exp(-s * t) * value(t); },
                                                tmax * i / pieces, tmax * (i + 1) / pieces, 1e-12 / pieces);
          }
          return total;
        };
        return e;
      };
      KernelBuildOptions o = opts;
      o.horizon = std::min(opts.horizon, tab->t_max());
      const EllParameterization ell{ell_of(-1.0, false), ell_of(-1.0, true), ell_of(p, true)};
      return theorem1_kernel(ell, o).kernel;
    }
  }
  k.kappaStar = (-p) * k.kappa3;
  return k;
}

KernelSpec unital_kernel(const GadcFamily& fam, const KernelBuildOptions& opts) {
  const KernelSpec base = gadc_kernel(with_p(fam, 0.0), opts);
  const KernelComponent half = (-0.5) * base.kappa3;
  return kernel_from_k({half, half, base.kappa3 + (-2.0) * base.kappa1});
}

KernelSpec nonunital_kernel(const GadcFamily& fam, int sign, const KernelBuildOptions& opts) {
  if (sign != 1 && sign != -1) throw InvalidInput("nonunital_kernel: sign must be +1 or -1");
  const KernelSpec base = gadc_kernel(with_p(fam, 0.0), opts);
  const KernelComponent pump = (-1.0) * base.kappa3;
  const KernelComponent none = 0.0 * base.kappa3;
  const KernelComponent dephasing = base.kappa3 + (-2.0) * base.kappa1;
  return sign > 0 ? kernel_from_k({pump, none, dephasing}) : kernel_from_k({none, pump, dephasing});
}

// ---------------------------------------------------------------------------
// Three-route mixture comparison

MixtureReport mixture_equivalence(const GadcFamily& fam, double T, double dt) {
  check_p(fam.p);
  if (!(dt > 0.0) || !(T >= 0.0)) throw InvalidInput("mixture_equivalence: need dt > 0 and T >= 0");
  const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  const double p = fam.p;
  const double weight = std::abs(p);
  const int sign = p < 0.0 ? -1 : 1;
  const double weights[] = {1.0 - weight, weight};

  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = dt * static_cast<double>(i);

  MixtureReport r;
  r.singularities = fam.zeros(grid.back());

  // (a) maps: (1-|p|) Λ_U + |p| Λ_NU±
  auto map_at = [&](double t) {
    const double l = fam.lambda(t);
    const PhaseCovariantChannel parts[] = {make_channel(l, l * l, 0.0),
                                           make_channel(l, l * l, sign * (1.0 - l * l))};
    return mix(parts, weights);
  };
  for (const double t : grid) push(r.mapRoute, t, map_at(t));

  // (b) generators, integrated between zeros of λ
  const GeneratorSpec gens[] = {gadc_generator_spec(with_p(fam, 0.0)),
                                gadc_generator_spec(with_p(fam, static_cast<double>(sign)))};
  const GeneratorSpec mixed = mix_generators(gens, weights);
  std::vector<double> anchors{0.0};
  for (const double z : r.singularities) anchors.push_back(z + kZeroGuard);
  std::size_t next = 0;
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const double anchor = anchors[k];
    const double stop = k < r.singularities.size() ? r.singularities[k] - kZeroGuard : INFINITY;
    std::vector<double> times;
    while (next <= n && grid[next] <= stop) {
      if (grid[next] >= anchor) {
        times.push_back(grid[next]);
      } else {
        push(r.generatorRoute, grid[next], map_at(grid[next]));
      }
      ++next;
    }
    const auto start = anchor == 0.0 ? make_channel(1.0, 1.0, 0.0) : map_at(anchor);
    const auto vals = propagate_rates(mixed, anchor, start, times);
    for (std::size_t i = 0; i < times.size(); ++i) push(r.generatorRoute, times[i], vals[i]);
    // Points inside the guard band around the next zero take the map value.
    const double resume = k + 1 < anchors.size() ? anchors[k + 1] : INFINITY;
    while (next <= n && grid[next] < resume) {
      push(r.generatorRoute, grid[next], map_at(grid[next]));
      ++next;
    }
  }

  // (c) kernels
  KernelBuildOptions opts;
  opts.horizon = std::max(grid.back(), dt);
  opts.dt = dt;
  const KernelSpec kernels[] = {unital_kernel(fam, opts), nonunital_kernel(fam, sign, opts)};
  r.kernelRoute = volterra_solve(mix_kernels(kernels, weights), T, dt);

  r.mapVsGenerator = trajectory_distance(r.mapRoute, r.generatorRoute);
  r.mapVsKernel = trajectory_distance(r.mapRoute, r.kernelRoute);
  r.generatorVsKernel = trajectory_distance(r.generatorRoute, r.kernelRoute);
  r.maxDeviation = std::max({r.mapVsGenerator, r.mapVsKernel, r.generatorVsKernel});
  return r;
}

}  // namespace qcapax
