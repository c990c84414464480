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

// Command-line front end. Subcommands: capacity, trajectory, kernel, verify,
// cross, mixcheck.
//
// Exit codes: 0 success, 1 runtime failure or failed verification,
// 2 invalid input (including the GADC shape guard of `capacity`).

#ifndef QCAPAX_CLI_HPP
#define QCAPAX_CLI_HPP

#include <iosfwd>
#include <string>

#include "qcapax/dynamics.hpp"

namespace qcapax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

/// Parses a real number, also accepting fractions such as "2/3".
double parse_real(const std::string& text);

/// "exp", "cos", or the path of a two-column CSV "t,lambda".
GadcFamily parse_profile(const std::string& profile, double p);

/// `t` printed with 9 significant digits, capacities with 12.
std::string format_time(double t);
std::string format_value(double v);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcapax::cli

#endif  // QCAPAX_CLI_HPP
