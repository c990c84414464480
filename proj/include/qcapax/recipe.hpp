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

// JSON kernel recipes.
//
//   {"recipe": "example1", "eta": 0.5, "xi1": 1, "xi3": 1, "xiStar": 1}
//   {"recipe": "single", "a1": 1, "a3": 1, "aStar": 1, "ell": "exp",
//    "rate": 1, "sign": 1}
//   {"recipe": "theorem1",
//    "ell1": {"amplitude": 0.5, "rate": 1}, "ell3": {...}, "ellStar": {...}}
//
// In "single", ℓ(t) = e^{-rate·t}. In "theorem1" each ℓ is
// amplitude·e^{-rate·t}.

#ifndef QCAPAX_RECIPE_HPP
#define QCAPAX_RECIPE_HPP

#include <optional>
#include <string>

#include "qcapax/dynamics.hpp"

namespace qcapax {

struct ExpTerm {
  double amplitude = 0.0;
  double rate = 0.0;
};

struct KernelRecipe {
  enum class Kind { Example1, Single, Theorem1 };
  Kind kind = Kind::Example1;

  // example1
  double eta = 0.0;
  double xi1 = 0.0;
  double xi3 = 0.0;
  double xiStar = 0.0;

  // single
  double a1 = 1.0;
  double a3 = 1.0;
  double aStar = 1.0;
  double rate = 1.0;
  int sign = 1;

  // theorem1
  ExpTerm ell1;
  ExpTerm ell3;
  ExpTerm ellStar;
};

/// Throws InvalidInput on malformed JSON, unknown recipe names, missing or
/// non-numeric fields.
KernelRecipe parse_kernel_recipe(const std::string& json_text);
std::string to_json(const KernelRecipe& recipe);

struct BuiltKernel {
  KernelSpec kernel;
  ConditionReport conditions;
  std::optional<AdmissibilityReport> admissibility;  // single recipe only
  std::optional<ClosedFormTrajectory> closedForm;

  /// Conditions hold and, when present, the recipe is admissible.
  bool acceptable() const {
    return conditions.legitimate() && (!admissibility || admissibility->admissible());
  }
};

/// Constructs the kernel. Parameter ordering violations throw InvalidInput.
BuiltKernel build_kernel(const KernelRecipe& recipe, const KernelBuildOptions& opts = {});

/// Machine-readable condition and admissibility report.
std::string report_json(const KernelRecipe& recipe, const BuiltKernel& built);

}  // namespace qcapax

#endif  // QCAPAX_RECIPE_HPP
