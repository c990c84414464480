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

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qcapax/cli.hpp"
#include "qcapax/errors.hpp"

using namespace qcapax;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qcapax");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("real numbers and fractions") {
  CHECK(cli::parse_real("0.25") == 0.25);
  CHECK(cli::parse_real("2/3") == doctest::Approx(2.0 / 3.0));
  CHECK(cli::parse_real("-1") == -1.0);
  CHECK_THROWS_AS(cli::parse_real("abc"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_real("1/0"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_real("0.5x"), InvalidInput);
  CHECK(cli::format_value(0.1) == "0.1");
}

TEST_CASE("capacity subcommand") {
  const Run r = invoke({"capacity", "--lambda", "0.5", "--p", "1", "--format", "json"});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["chi"].get<double>() == doctest::Approx(0.26982074).epsilon(1e-7));
  CHECK(j["c_e"].get<double>() == doctest::Approx(0.59264886).epsilon(1e-7));
  CHECK(j["non_unitality"].get<double>() == doctest::Approx(1.0));

  const Run text = invoke({"capacity", "--lambda1", "1", "--lambda3", "1", "--lambda-star", "0"});
  CHECK(text.code == cli::kExitOk);
  CHECK(text.out.find("non_unitality: undefined") != std::string::npos);
}

TEST_CASE("capacity shape guard and bad input exit with 2") {
  const Run r = invoke({"capacity", "--lambda1", "0.5", "--lambda3", "0.3", "--lambda-star", "0.1"});
  CHECK(r.code == cli::kExitInvalid);
  CHECK(r.err.find("oracle") != std::string::npos);
  CHECK(invoke({"capacity", "--lambda", "2"}).code == cli::kExitInvalid);
  CHECK(invoke({"capacity"}).code == cli::kExitInvalid);
  CHECK(invoke({"nonsense"}).code == cli::kExitInvalid);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("trajectory subcommand writes CSV") {
  const Run r = invoke({"trajectory", "--profile", "exp", "--p", "2/3", "--t-max", "1", "--steps", "11"});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,lambda,p,chi,c_e,chi_unital,c_e_unital");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 11);
}

TEST_CASE("kernel subcommand reports and solves") {
  const std::string recipe = R"({"recipe": "example1", "eta": 0.5, "xi1": 1, "xi3": 1, "xiStar": 1})";
  const Run report = invoke({"kernel", "--recipe", recipe});
  REQUIRE(report.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(report.out)["acceptable"].get<bool>());

  const Run solved = invoke({"kernel", "--recipe", recipe, "--solve", "--t-max", "1", "--dt", "0.01"});
  CHECK(solved.code == cli::kExitOk);
  CHECK(solved.out.rfind("t,lambda1,lambda3,lambda_star,err_lambda1", 0) == 0);

  const std::string inadmissible = R"({"recipe": "single", "a1": 1, "a3": 2, "aStar": 1, "rate": 1})";
  CHECK(invoke({"kernel", "--recipe", inadmissible}).code == cli::kExitInvalid);
  CHECK(invoke({"kernel", "--recipe", "{"}).code == cli::kExitInvalid);
}

TEST_CASE("cross and mixcheck subcommands") {
  const Run cross = invoke({"cross", "--profile", "exp", "--p", "1"});
  REQUIRE(cross.code == cli::kExitOk);
  const auto windows = nlohmann::json::parse(cross.out);
  REQUIRE(windows.size() == 1);
  CHECK(windows[0][0].get<double>() == doctest::Approx(1.37707).epsilon(1e-4));
  CHECK(invoke({"cross", "--p", "0"}).code == cli::kExitInvalid);

  const Run mix = invoke({"mixcheck", "--profile", "exp", "--p", "0.9", "--t-max", "2"});
  CHECK(mix.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(mix.out)["pass"].get<bool>());
}

TEST_CASE("verify subcommand on a small grid") {
  const Run r = invoke({"verify", "--lambdas", "0.5", "--ps", "0,1"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("lambda,p,chi_formula") == 0);
}
