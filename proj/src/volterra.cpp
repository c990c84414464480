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

namespace qcapax {

namespace {

constexpr double kBlowUp = 10.0;

struct Sampled {
  double delta = 0.0;
  std::vector<double> smooth;  // empty when the component has no smooth part
};

Sampled sample_component(const KernelComponent& c, std::size_t n, double h) {
  Sampled s;
  s.delta = c.deltaWeight;
  if (c.has_smooth()) {
    s.smooth.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) s.smooth[i] = c.smooth(h * static_cast<double>(i));
  }
  return s;
}

// y' = c·y + ∫₀ᵗ k(t-τ) y(τ) dτ + f(t), y(0) = y0.
std::vector<double> integrate(const Sampled& kern, const std::vector<double>* forcing, double y0,
                              std::size_t n, double h, const char* name) {
  std::vector<double> y(n + 1, 0.0);
  y[0] = y0;
  const bool memory = !kern.smooth.empty();
  const double k0 = memory ? kern.smooth[0] : 0.0;
  const double implicit = kern.delta + 0.5 * h * k0;
  const double denom = 1.0 - 0.5 * h * implicit;
  if (std::abs(denom) < 1e-14) throw NumericalFailure("volterra_solve: singular time step");
  auto f_at = [&](std::size_t i) { return forcing ? (*forcing)[i] : 0.0; };

  double rhs_prev = kern.delta * y0 + f_at(0);
  for (std::size_t m = 1; m <= n; ++m) {
    double history = 0.0;
    if (memory) {
      history = 0.5 * kern.smooth[m] * y[0];
      for (std::size_t j = 1; j < m; ++j) history += kern.smooth[m - j] * y[j];
      history *= h;
    }
    const double explicit_part = history + f_at(m);
    y[m] = (y[m - 1] + 0.5 * h * (rhs_prev + explicit_part)) / denom;
    if (!std::isfinite(y[m]) || std::abs(y[m]) > kBlowUp) {
      throw NumericalFailure(std::string("volterra_solve: ") + name + " left [-10, 10] at t = " +
                             std::to_string(h * static_cast<double>(m)));
    }
    rhs_prev = implicit * y[m] + explicit_part;
  }
  return y;
}

}  // namespace

PhaseCovariantChannel Trajectory::at(std::size_t i) const {
  return make_channel(lambda1.at(i), lambda3.at(i), lambdaStar.at(i));
}

Trajectory volterra_solve(const KernelSpec& kernel, double T, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("volterra_solve: dt must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw InvalidInput("volterra_solve: T must be >= 0");
  if (T / dt > 1e7) throw InvalidInput("volterra_solve: T/dt exceeds 1e7");
  const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));

  const Sampled k1 = sample_component(kernel.kappa1, n, dt);
  const Sampled k3 = sample_component(kernel.kappa3, n, dt);
  const Sampled ks = sample_component(kernel.kappaStar, n, dt);

  // K*(t) = c* + ∫₀ᵗ k*, cumulative trapezoid.
  std::vector<double> cumulative(n + 1, ks.delta);
  if (!ks.smooth.empty()) {
    for (std::size_t i = 1; i <= n; ++i) {
      cumulative[i] = cumulative[i - 1] + 0.5 * dt * (ks.smooth[i - 1] + ks.smooth[i]);
    }
  }

  Trajectory out;
  out.t.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.t[i] = dt * static_cast<double>(i);
  out.lambda1 = integrate(k1, nullptr, 1.0, n, dt, "lambda1");
  out.lambda3 = integrate(k3, nullptr, 1.0, n, dt, "lambda3");
  out.lambdaStar = integrate(k3, &cumulative, 0.0, n, dt, "lambdaStar");
  return out;
}

double convolution_identity_check(const KernelSpec& kernel, const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n == 0) return 0.0;
  const double h = n > 1 ? traj.t[1] - traj.t[0] : 0.0;
  const Sampled ks = sample_component(kernel.kappaStar, n - 1, h);
  std::vector<double> cumulative(n, ks.delta);
  if (!ks.smooth.empty()) {
    for (std::size_t i = 1; i < n; ++i) {
      cumulative[i] = cumulative[i - 1] + 0.5 * h * (ks.smooth[i - 1] + ks.smooth[i]);
    }
  }
  double worst = std::abs(traj.lambdaStar[0]);
  for (std::size_t m = 1; m < n; ++m) {
    double conv = 0.5 * (cumulative[m] * traj.lambda3[0] + cumulative[0] * traj.lambda3[m]);
    for (std::size_t j = 1; j < m; ++j) conv += cumulative[m - j] * traj.lambda3[j];
    worst = std::max(worst, std::abs(traj.lambdaStar[m] - h * conv));
  }
  return worst;
}

double numeric_laplace(std::span<const double> t, std::span<const double> f, double s) {
  if (t.size() != f.size()) throw InvalidInput("numeric_laplace: size mismatch");
  double total = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    total += 0.5 * (t[i] - t[i - 1]) * (std::exp(-s * t[i - 1]) * f[i - 1] + std::exp(-s * t[i]) * f[i]);
  }
  return total;
}

}  // namespace qcapax
