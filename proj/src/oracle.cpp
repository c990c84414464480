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

#include "qcapax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qcapax/errors.hpp"
#include "qcapax/numerics.hpp"
#include "qcapax/parallel.hpp"

namespace qcapax {

namespace {

constexpr int kMeridianAngles = 180;
constexpr int kWeightCells = 50;  // probability grid step 0.02
constexpr int kChiRestarts = 200;
constexpr int kCeRestarts = 100;
constexpr double kAxisStep = 1e-3;
constexpr double kStopGain = 1e-8;
constexpr double kMinStep = 1e-6;
constexpr int kMaxSweeps = 20000;

std::mt19937_64 derived_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

BlochVector pure_state(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

SmallMatrix output_of(const PhaseCovariantChannel& ch, const BlochVector& r) {
  return DensityMatrix::from_bloch(apply(ch, r)).matrix();
}

// Result of one coordinate ascent.
struct Ascent {
  std::vector<double> x;
  double value = -INFINITY;
  double residual = 0.0;
};

// Compass search with step halving on an objective that may reject points by
// returning -inf.
template <typename Objective>
Ascent coordinate_ascent(std::vector<double> x, double step, const Objective& objective) {
  Ascent a;
  a.value = objective(x);
  a.x = x;
  double last_gain = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && step >= kMinStep; ++sweep) {
    double gain = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      for (const double dir : {1.0, -1.0}) {
        std::vector<double> trial = a.x;
        trial[j] += dir * step;
        const double v = objective(trial);
        if (v > a.value) {
          gain += v - a.value;
          a.value = v;
          a.x = std::move(trial);
          break;
        }
      }
    }
    if (gain > 0.0) last_gain = gain;
    if (gain < kStopGain) step *= 0.5;
  }
  a.residual = last_gain;
  return a;
}

// Ensemble of n pure states packed as (θ_k, φ_k, a_k); weights are a_k / Σa.
struct ChiObjective {
  const PhaseCovariantChannel& ch;
  std::size_t n;

  Ensemble unpack(const std::vector<double>& x) const {
    Ensemble e;
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += std::max(0.0, x[3 * k + 2]);
    for (std::size_t k = 0; k < n; ++k) {
      e.states.push_back(pure_state(x[3 * k], x[3 * k + 1]));
      e.probs.push_back(total > 0.0 ? std::max(0.0, x[3 * k + 2]) / total : 1.0 / static_cast<double>(n));
    }
    return e;
  }

  double operator()(const std::vector<double>& x) const {
    for (std::size_t k = 0; k < n; ++k) {
      if (x[3 * k + 2] < 0.0) return -INFINITY;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += x[3 * k + 2];
    if (!(total > 0.0)) return -INFINITY;
    SmallMatrix mixture(2);
    double average = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double w = x[3 * k + 2] / total;
      if (w == 0.0) continue;
      const SmallMatrix out = output_of(ch, pure_state(x[3 * k], x[3 * k + 1]));
      mixture += w * out;
      average += w * entropy(out);
    }
    return entropy(mixture) - average;
  }
};

// Best two-state ensemble on the x-z meridian by exhaustive grid.
std::vector<double> meridian_seed(const PhaseCovariantChannel& ch, double& best_value) {
  std::vector<SmallMatrix> outs;
  std::vector<double> ents;
  for (int i = 0; i < kMeridianAngles; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / kMeridianAngles;
    outs.push_back(output_of(ch, pure_state(angle, 0.0)));
    ents.push_back(entropy(outs.back()));
  }
  best_value = 0.0;
  std::vector<double> best{0.0, 0.0, 1.0, std::numbers::pi, 0.0, 1.0};
  for (int i = 0; i < kMeridianAngles; ++i) {
    for (int j = i + 1; j < kMeridianAngles; ++j) {
      for (int k = 1; k < kWeightCells; ++k) {
        const double w = static_cast<double>(k) / kWeightCells;
        const double v = entropy(w * outs[i] + (1.0 - w) * outs[j]) - w * ents[i] - (1.0 - w) * ents[j];
        if (v > best_value) {
          best_value = v;
          best = {2.0 * std::numbers::pi * i / kMeridianAngles, 0.0, w,
                  2.0 * std::numbers::pi * j / kMeridianAngles, 0.0, 1.0 - w};
        }
      }
    }
  }
  return best;
}

void require_valid(const PhaseCovariantChannel& ch, const char* who) {
  if (!ch.valid) throw InvalidInput(std::string(who) + ": channel is not completely positive");
}

}  // namespace

double holevo_of_ensemble(const PhaseCovariantChannel& ch, const Ensemble& ens) {
  require_valid(ch, "holevo_of_ensemble");
  if (ens.states.empty() || ens.states.size() != ens.probs.size()) {
    throw InvalidInput("holevo_of_ensemble: need one probability per state");
  }
  double total = 0.0;
  for (const double p : ens.probs) {
    if (!(p >= 0.0)) throw InvalidInput("holevo_of_ensemble: probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidInput("holevo_of_ensemble: probabilities must sum to 1");
  SmallMatrix mixture(2);
  double average = 0.0;
  for (std::size_t k = 0; k < ens.states.size(); ++k) {
    const SmallMatrix out = apply(ch, DensityMatrix::from_bloch(ens.states[k])).matrix();
    mixture += ens.probs[k] * out;
    average += ens.probs[k] * entropy(out);
  }
  return entropy(mixture) - average;
}

OracleReport chi_bruteforce(const PhaseCovariantChannel& ch, int maxStates, std::uint64_t seed) {
  require_valid(ch, "chi_bruteforce");
  if (maxStates < 1) throw InvalidInput("chi_bruteforce: maxStates must be >= 1");

  OracleReport report;
  report.argmax = Ensemble{{BlochVector{0.0, 0.0, 1.0}}, {1.0}};
  if (maxStates == 1) return report;

  double coarse_value = 0.0;
  std::vector<double> previous = meridian_seed(ch, coarse_value);
  report.value = coarse_value;
  report.argmax = ChiObjective{ch, 2}.unpack(previous);

  for (int n = 2; n <= maxStates; ++n) {
    const ChiObjective objective{ch, static_cast<std::size_t>(n)};
    std::vector<Ascent> runs(kChiRestarts);
    parallel_for(runs.size(), [&](std::size_t r) {
      std::vector<double> start;
      if (r == 0) {
        start = previous;
        while (start.size() < 3 * static_cast<std::size_t>(n)) start.insert(start.end(), {0.0, 0.0, 0.0});
      } else {
        auto rng = derived_rng(seed, static_cast<std::uint64_t>(n), r);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int k = 0; k < n; ++k) {
          start.push_back(std::acos(1.0 - 2.0 * unit(rng)));
          start.push_back(2.0 * std::numbers::pi * unit(rng));
          start.push_back(unit(rng));
        }
      }
      runs[r] = coordinate_ascent(std::move(start), 0.5, objective);
    });
    std::size_t winner = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
      if (runs[r].value > runs[winner].value) winner = r;
    }
    report.restarts += kChiRestarts;
    if (runs[winner].value > report.value) {
      report.value = runs[winner].value;
      report.residual = runs[winner].residual;
      report.argmax = objective.unpack(runs[winner].x);
    }
    previous = runs[winner].x;
  }
  return report;
}

double mutual_information(const PhaseCovariantChannel& ch, const DensityMatrix& rho) {
  require_valid(ch, "mutual_information");
  return entropy(rho) + entropy(apply(ch, rho)) - entropy(complementary_apply(ch, rho));
}

OracleReport ce_bruteforce(const PhaseCovariantChannel& ch, std::uint64_t seed) {
  require_valid(ch, "ce_bruteforce");
  const KrausSet ks = kraus(ch);
  auto info = [&](const BlochVector& r) {
    const DensityMatrix rho = DensityMatrix::from_bloch(r);
    return entropy(rho) + entropy(apply(ch, rho)) - entropy(complementary_apply(ks, rho));
  };
  const numerics::ScalarFn on_axis = [&](double z) { return info({0.0, 0.0, std::clamp(z, -1.0, 1.0)}); };

  OracleReport report;
  const auto axis = numerics::grid_golden_max(on_axis, -1.0, 1.0, kAxisStep, 1e-10);
  report.axisValue = axis.value;
  report.value = axis.value;
  report.argmax = Ensemble{{BlochVector{0.0, 0.0, axis.argmax}}, {1.0}};

  auto objective = [&](const std::vector<double>& x) -> double {
    const BlochVector r{x[0], x[1], x[2]};
    if (r.norm() > 1.0) return -INFINITY;
    return info(r);
  };
  std::vector<Ascent> runs(kCeRestarts);
  parallel_for(runs.size(), [&](std::size_t r) {
    auto rng = derived_rng(seed, 0xCE, r);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const BlochVector dir = pure_state(std::acos(1.0 - 2.0 * unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    const double radius = std::cbrt(unit(rng));
    runs[r] = coordinate_ascent({radius * dir.x, radius * dir.y, radius * dir.z}, 0.25, objective);
  });
  report.restarts = kCeRestarts;
  for (const Ascent& run : runs) {
    const double transverse = std::hypot(run.x[0], run.x[1]);
    if (transverse > 1e-6 && run.value > report.axisValue + 1e-6) report.offAxis = true;
    if (run.value > report.value) {
      report.value = run.value;
      report.residual = run.residual;
      report.argmax = Ensemble{{BlochVector{run.x[0], run.x[1], run.x[2]}}, {1.0}};
    }
  }
  return report;
}

}  // namespace qcapax
