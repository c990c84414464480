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

#include "qcapax/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcapax/errors.hpp"
#include "qcapax/numerics.hpp"
#include "qcapax/parallel.hpp"

namespace qcapax {

namespace {

constexpr int kScanPoints = 2001;
constexpr double kEdge = 1e-12;
constexpr double kCeGrid = 1e-3;
constexpr double kCeTol = 1e-8;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void require_lambda(double lambda, const char* who) {
  if (!std::isfinite(lambda) || std::abs(lambda) > 1.0) {
    throw InvalidInput(std::string(who) + ": |lambda| must be <= 1");
  }
}

void require_p(double p, const char* who) {
  if (!std::isfinite(p) || std::abs(p) > 1.0) throw InvalidInput(std::string(who) + ": |p| must be <= 1");
}

// Implicit-equation pieces for fixed (λ², p).
struct HolevoEquation {
  double l2;
  double p;
  double c;  // p(1 - λ²), centre of the output ellipsoid

  double q_of(double u) const { return std::clamp(c + l2 * u, -1.0 + kEdge, 1.0 - kEdge); }

  double radius(double q) const {
    const double u = std::clamp((q - c) / l2, -1.0, 1.0);
    const double r2 = q * q + l2 * (1.0 - u * u);
    return std::min(std::sqrt(std::max(r2, 0.0)), 1.0 - kEdge);
  }

  double g(double q) const {
    const double r = radius(q);
    return f_prime(r) * (q - p) * (1.0 - l2) + r * l2 * f_prime(q);
  }

  double chi(double q) const { return 0.5 * (f_entropy(radius(q)) - f_entropy(q)); }
};

}  // namespace

double binary_entropy(double x) {
  if (!(x >= -1e-15 && x <= 1.0 + 1e-15)) throw InvalidInput("binary_entropy: argument outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  return -xlog2x(x) - xlog2x(1.0 - x);
}

double f_entropy(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-15)) throw InvalidInput("f_entropy: |x| must be <= 1");
  x = std::clamp(x, -1.0, 1.0);
  return xlog2x(1.0 + x) + xlog2x(1.0 - x);
}

double f_prime(double x) { return std::log2((1.0 + x) / (1.0 - x)); }

double holevo_unital(double lambda) {
  require_lambda(lambda, "holevo_unital");
  return 0.5 * f_entropy(lambda);
}

double ce_unital(double lambda) { return 2.0 * holevo_unital(lambda); }

HolevoSolve holevo_gadc(double lambda, double p) {
  require_lambda(lambda, "holevo_gadc");
  require_p(p, "holevo_gadc");
  const double l = std::abs(lambda);
  HolevoSolve out;
  if (l == 0.0) {
    out.q = p;
    out.r = std::abs(p);
    return out;
  }
  if (l == 1.0) {
    out.q = 0.0;
    out.r = 1.0;
    out.chi = 1.0;
    return out;
  }

  const HolevoEquation eq{l * l, p, p * (1.0 - l * l)};
  const ScalarFn g = [&eq](double q) { return eq.g(q); };

  std::vector<double> qs(kScanPoints), gs(kScanPoints);
  const int half = (kScanPoints - 1) / 2;
  for (int i = 0; i < kScanPoints; ++i) {
    qs[i] = eq.q_of(static_cast<double>(i - half) / half);
    gs[i] = eq.g(qs[i]);
  }

  std::vector<double> roots;
  for (int i = 0; i < kScanPoints; ++i) {
    if (gs[i] == 0.0) {
      roots.push_back(qs[i]);
    } else if (i > 0 && gs[i - 1] != 0.0 && (gs[i] > 0.0) != (gs[i - 1] > 0.0) && qs[i] > qs[i - 1]) {
      roots.push_back(numerics::bisect(g, qs[i - 1], qs[i], 0.0));
    }
  }
  out.roots = static_cast<int>(roots.size());

  if (roots.empty()) {
    out.lowConfidence = true;
    const auto best = std::min_element(gs.begin(), gs.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
    roots.push_back(qs[static_cast<std::size_t>(best - gs.begin())]);
  }

  out.chi = -INFINITY;
  for (const double q : roots) {
    const double chi = eq.chi(q);
    if (chi > out.chi) {
      out.chi = chi;
      out.q = q;
    }
  }
  out.r = eq.radius(out.q);
  out.residual = std::abs(eq.g(out.q));
  return out;
}

CEObjective ce_objective(double lambda, double p, double z) {
  require_lambda(lambda, "ce_objective");
  require_p(p, "ce_objective");
  if (!(std::abs(z) <= 1.0)) throw InvalidInput("ce_objective: |z| must be <= 1");
  const double l2 = lambda * lambda;
  const double damp = 1.0 - l2;

  CEObjective o;
  o.z = z;
  o.hPlus = (1.0 + z) / 4.0 * damp * (1.0 - p);
  o.hMinus = (1.0 - z) / 4.0 * damp * (1.0 + p);
  const double radicand = 4.0 * (l2 + z * p * damp) + damp * damp * (p - z) * (p - z);
  const double root = std::sqrt(std::max(radicand, 0.0));
  const double base = 1.0 + l2 + z * p * damp;
  o.deltaPlus = 0.25 * (base + root);
  o.deltaMinus = 0.25 * (base - root);

  const double out_z = p + l2 * (z - p);
  o.value = binary_entropy(0.5 * (1.0 + z)) + binary_entropy(std::clamp(0.5 * (1.0 + out_z), 0.0, 1.0)) +
            xlog2x(o.hPlus) + xlog2x(o.hMinus) + xlog2x(o.deltaPlus) + xlog2x(std::max(o.deltaMinus, 0.0));
  return o;
}

CEResult ce_gadc(double lambda, double p) {
  require_lambda(lambda, "ce_gadc");
  require_p(p, "ce_gadc");
  const auto best = numerics::grid_golden_max([&](double z) { return ce_objective(lambda, p, z).value; },
                                              -1.0, 1.0, kCeGrid, kCeTol);
  return {best.value, best.argmax};
}

CEResult ce_ad(double lambda) {
  require_lambda(lambda, "ce_ad");
  const double l2 = lambda * lambda;
  const auto best = numerics::grid_golden_max(
      [l2](double pi) {
        return binary_entropy(pi) + binary_entropy(pi * l2) - binary_entropy(pi * (1.0 - l2));
      },
      0.0, 1.0, kCeGrid, kCeTol);
  return {best.value, best.argmax};
}

CapacityBounds capacity_bounds(double lambda, double p) {
  require_lambda(lambda, "capacity_bounds");
  require_p(p, "capacity_bounds");
  CapacityBounds b;
  b.p = p;
  if (std::abs(lambda) == 1.0) {
    b.lower = 1.0;
    b.upper = 2.0;
    b.exact = true;
  } else if (p == 0.0) {
    b.lower = holevo_unital(lambda);
    b.upper = ce_unital(lambda);
    b.exact = true;
  } else {
    b.lower = holevo_gadc(lambda, p).chi;
    b.upper = std::abs(p) == 1.0 ? ce_ad(lambda).value : ce_gadc(lambda, p).value;
  }
  return b;
}

double gadc_mixing_parameter(const PhaseCovariantChannel& ch, double tol) {
  const double l2 = ch.lambda1 * ch.lambda1;
  if (std::abs(ch.lambda3 - l2) > tol) {
    throw ShapeMismatch("channel is not in the GADC family: lambda3 = " + std::to_string(ch.lambda3) +
                        " but lambda1^2 = " + std::to_string(l2));
  }
  const double damp = 1.0 - l2;
  if (damp <= tol) {
    if (std::abs(ch.lambdaStar) > tol) {
      throw ShapeMismatch("channel is not in the GADC family: lambda1 = 1 requires lambdaStar = 0");
    }
    return 0.0;
  }
  const double p = ch.lambdaStar / damp;
  if (std::abs(p) > 1.0 + tol) {
    throw ShapeMismatch("channel is not in the GADC family: |lambdaStar| exceeds 1 - lambda1^2");
  }
  return std::clamp(p, -1.0, 1.0);
}

CapacityBounds capacity_bounds(const PhaseCovariantChannel& ch) {
  const double p = gadc_mixing_parameter(ch);
  return capacity_bounds(std::clamp(ch.lambda1, -1.0, 1.0), p);
}

std::vector<Interval> crossing_windows(const GadcFamily& fam, double T, double dt) {
  if (!(dt > 0.0) || !(T > 0.0)) throw InvalidInput("crossing_windows: need T > 0 and dt > 0");
  const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  const double p = fam.p;
  const ScalarFn gap = [&fam, p](double t) {
    const double l = std::clamp(fam.lambda(t), -1.0, 1.0);
    return holevo_gadc(l, p).chi - ce_unital(l);
  };

  std::vector<double> ts(n + 1), ds(n + 1);
  for (std::size_t i = 0; i <= n; ++i) ts[i] = std::min(T, dt * static_cast<double>(i));
  parallel_for(n + 1, [&](std::size_t i) { ds[i] = gap(ts[i]); });

  // Boundary between a non-positive and a positive sample.
  auto edge = [&](std::size_t i) {
    return numerics::bisect([&](double t) { return gap(t) > 0.0 ? 1.0 : -1.0; }, ts[i - 1], ts[i],
                            dt / 100.0);
  };

  std::vector<Interval> windows;
  bool open = ds[0] > 0.0;
  double start = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const bool above = ds[i] > 0.0;
    if (above && !open) {
      start = edge(i);
      open = true;
    } else if (!above && open) {
      windows.push_back({start, edge(i)});
      open = false;
    }
  }
  if (open) windows.push_back({start, ts[n]});
  return windows;
}

std::vector<CapacityPoint> trajectory(const GadcFamily& fam, double T, int steps) {
  if (steps < 2) throw InvalidInput("trajectory: steps must be >= 2");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("trajectory: T must be > 0");
  std::vector<CapacityPoint> rows(static_cast<std::size_t>(steps));
  parallel_for(rows.size(), [&](std::size_t i) {
    CapacityPoint& row = rows[i];
    row.t = T * static_cast<double>(i) / static_cast<double>(steps - 1);
    row.p = fam.p;
    try {
      row.lambda = std::clamp(fam.lambda(row.t), -1.0, 1.0);
      const CapacityBounds b = capacity_bounds(row.lambda, fam.p);
      row.chi = b.lower;
      row.cE = b.upper;
      row.chiUnital = holevo_unital(row.lambda);
      row.cEUnital = ce_unital(row.lambda);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });
  return rows;
}

}  // namespace qcapax
