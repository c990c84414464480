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

#ifndef QCAPAX_ERRORS_HPP
#define QCAPAX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcapax {

/// Caller supplied something outside an operation's domain
/// (NaN parameters, out-of-range λ, an invalid channel, a bad recipe).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is well-formed but the requested quantity does not exist for it,
/// e.g. the stationary state of a map with λ3 = 1 and λ* != 0.
class DegenerateInput : public InvalidInput {
 public:
  explicit DegenerateInput(const std::string& what) : InvalidInput(what) {}
};

/// Channel parameters lie outside the family a closed-form formula covers.
class ShapeMismatch : public InvalidInput {
 public:
  explicit ShapeMismatch(const std::string& what) : InvalidInput(what) {}
};

/// A numerical procedure failed to produce a trustworthy result.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcapax

#endif  // QCAPAX_ERRORS_HPP
