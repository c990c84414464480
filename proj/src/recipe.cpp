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

#include "qcapax/recipe.hpp"

#include <cmath>
#include <vector>

#include "json.hpp"
#include "qcapax/errors.hpp"

namespace qcapax {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("recipe is missing \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number()) throw InvalidInput(std::string("recipe field \"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(std::string("recipe field \"") + key + "\" must be finite");
  return x;
}

ExpTerm exp_term(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    throw InvalidInput(std::string("recipe field \"") + key + "\" must be an object");
  }
  return {number(j.at(key), "amplitude"), number(j.at(key), "rate")};
}

json exp_term_json(const ExpTerm& e) { return {{"amplitude", e.amplitude}, {"rate", e.rate}}; }

std::vector<double> sample_times(const KernelBuildOptions& opts) {
  const int n = std::max(opts.conditionSamples, 2);
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = opts.horizon * i / (n - 1);
  return ts;
}

}  // namespace

KernelRecipe parse_kernel_recipe(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("recipe is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("recipe") || !j.at("recipe").is_string()) {
    throw InvalidInput("recipe must be an object with a string \"recipe\" field");
  }
  const auto name = j.at("recipe").get<std::string>();
  KernelRecipe r;
  if (name == "example1") {
    r.kind = KernelRecipe::Kind::Example1;
    r.eta = number(j, "eta");
    r.xi1 = number(j, "xi1");
    r.xi3 = number(j, "xi3");
    r.xiStar = number(j, "xiStar");
  } else if (name == "single") {
    r.kind = KernelRecipe::Kind::Single;
    r.a1 = number(j, "a1");
    r.a3 = number(j, "a3");
    r.aStar = number(j, "aStar");
    const std::string ell = j.value("ell", std::string("exp"));
    if (ell != "exp") throw InvalidInput("single recipe supports ell = \"exp\" only");
    r.rate = number(j, "rate");
    const double sign = j.contains("sign") ? number(j, "sign") : 1.0;
    if (sign != 1.0 && sign != -1.0) throw InvalidInput("recipe field \"sign\" must be 1 or -1");
    r.sign = static_cast<int>(sign);
  } else if (name == "theorem1") {
    r.kind = KernelRecipe::Kind::Theorem1;
    r.ell1 = exp_term(j, "ell1");
    r.ell3 = exp_term(j, "ell3");
    r.ellStar = exp_term(j, "ellStar");
  } else {
    throw InvalidInput("unknown recipe \"" + name + "\" (expected example1, single or theorem1)");
  }
  return r;
}

std::string to_json(const KernelRecipe& r) {
  json j;
  switch (r.kind) {
    case KernelRecipe::Kind::Example1:
      j = {{"recipe", "example1"}, {"eta", r.eta}, {"xi1", r.xi1}, {"xi3", r.xi3}, {"xiStar", r.xiStar}};
      break;
    case KernelRecipe::Kind::Single:
      j = {{"recipe", "single"}, {"a1", r.a1}, {"a3", r.a3}, {"aStar", r.aStar},
           {"ell", "exp"},       {"rate", r.rate}, {"sign", r.sign}};
      break;
    case KernelRecipe::Kind::Theorem1:
      j = {{"recipe", "theorem1"},
           {"ell1", exp_term_json(r.ell1)},
           {"ell3", exp_term_json(r.ell3)},
           {"ellStar", exp_term_json(r.ellStar)}};
      break;
  }
  return j.dump();
}

BuiltKernel build_kernel(const KernelRecipe& r, const KernelBuildOptions& opts) {
  BuiltKernel b;
  switch (r.kind) {
    case KernelRecipe::Kind::Example1: {
      auto ex = example1_kernel(r.eta, r.xi1, r.xi3, r.xiStar);
      b.kernel = std::move(ex.kernel);
      b.closedForm = std::move(ex.closedForm);
      b.conditions = check_theorem1_conditions(ex.ell, sample_times(opts));
      break;
    }
    case KernelRecipe::Kind::Single: {
      if (!(r.rate >= 0.0)) throw InvalidInput("single recipe needs rate >= 0");
      auto s = single_function_kernel(r.a1, r.a3, r.aStar, exponential_ell(1.0, r.rate), r.sign, opts);
      b.kernel = std::move(s.kernel);
      b.conditions = std::move(s.conditions);
      b.admissibility = s.admissibility;
      b.closedForm = std::move(s.closedForm);
      break;
    }
    case KernelRecipe::Kind::Theorem1: {
      const EllParameterization ell{exponential_ell(r.ell1.amplitude, r.ell1.rate),
                                    exponential_ell(r.ell3.amplitude, r.ell3.rate),
                                    exponential_ell(r.ellStar.amplitude, r.ellStar.rate)};
      auto t = theorem1_kernel(ell, opts);
      b.kernel = std::move(t.kernel);
      b.conditions = std::move(t.conditions);
      b.closedForm = ClosedFormTrajectory{
          [ell](double t) { return 1.0 - ell.ell1.integral_at(t); },
          [ell](double t) { return 1.0 - ell.ell3.integral_at(t); },
          [ell](double t) { return -ell.ellStar.integral_at(t); }};
      break;
    }
  }
  return b;
}

std::string report_json(const KernelRecipe& recipe, const BuiltKernel& built) {
  const ConditionReport& c = built.conditions;
  json j = {{"recipe", json::parse(to_json(recipe))},
            {"conditions",
             {{"c1", c.c1},
              {"c2", c.c2},
              {"c1_margin", c.c1Margin},
              {"c2_margin", c.c2Margin},
              {"first_violation", c.firstViolation >= 0.0 ? json(c.firstViolation) : json(nullptr)},
              {"samples", c.sampleTimes.size()}}},
            {"acceptable", built.acceptable()}};
  if (built.admissibility) {
    const AdmissibilityReport& a = *built.admissibility;
    j["admissibility"] = {{"nonnegative_integral", a.nonnegativeIntegral},
                          {"a3_le_astar", a.a3LeAStar},
                          {"a1_bound", a.a1Bound},
                          {"integral_bound", a.integralBound},
                          {"integral_bound_margin", a.integralBoundMargin},
                          {"admissible", a.admissible()}};
  }
  return j.dump(2);
}

}  // namespace qcapax
