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

// Brute-force capacities computed directly from the entropic definitions,
// used to check the closed forms in capacity.hpp.

#ifndef QCAPAX_ORACLE_HPP
#define QCAPAX_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "qcapax/core.hpp"

namespace qcapax {

struct Ensemble {
  std::vector<BlochVector> states;
  std::vector<double> probs;
};

struct OracleReport {
  double value = 0.0;
  Ensemble argmax;         // optimal ensemble; a single state for C_E
  int restarts = 0;
  double residual = 0.0;   // last accepted improvement of the winning ascent
  double axisValue = 0.0;  // C_E only: best value on the z-axis
  bool offAxis = false;    // C_E only: an off-axis input beat the axis by > 1e-6
};

/// S(Σ p_k Λ[ρ_k]) - Σ p_k S(Λ[ρ_k]). Throws InvalidInput for an invalid
/// channel or ensemble.
double holevo_of_ensemble(const PhaseCovariantChannel& ch, const Ensemble& ens);

/// Maximizes holevo_of_ensemble over ensembles of up to `maxStates` pure
/// states: a two-state grid on the x-z meridian, then 200 seeded restarts of
/// coordinate ascent over all Bloch angles and weights for every ensemble
/// size up to maxStates. Nondecreasing in maxStates for a fixed seed.
OracleReport chi_bruteforce(const PhaseCovariantChannel& ch, int maxStates = 4,
                            std::uint64_t seed = 1);

/// S(ρ) + S(Λ[ρ]) - S(Λ^c[ρ]).
double mutual_information(const PhaseCovariantChannel& ch, const DensityMatrix& rho);

/// Maximizes mutual_information over the Bloch ball: z-axis grid (step 1e-3,
/// golden refinement) plus 100 seeded off-axis restarts of coordinate ascent.
OracleReport ce_bruteforce(const PhaseCovariantChannel& ch, std::uint64_t seed = 1);

}  // namespace qcapax

#endif  // QCAPAX_ORACLE_HPP
