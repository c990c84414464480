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

#include "qcapax/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcapax/capacity.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/oracle.hpp"
#include "qcapax/recipe.hpp"

namespace qcapax::cli {

using nlohmann::json;

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

// Writes to `out` for "-", otherwise to the named file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : stream_(&out) {
    if (path != "-" && !path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write to " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> v;
  for (const auto& s : items) v.push_back(parse_real(s));
  return v;
}

// ---------------------------------------------------------------------------
// capacity

struct CapacityArgs {
  std::optional<double> lambda;
  double p = 0.0;
  std::optional<double> lambda1;
  std::optional<double> lambda3;
  std::optional<double> lambdaStar;
  std::string method = "formula";
  std::string format = "text";
  std::uint64_t seed = 1;
};

int cmd_capacity(const CapacityArgs& a, std::ostream& out, std::ostream& err) {
  const bool by_family = a.lambda.has_value();
  const bool by_params = a.lambda1 || a.lambda3 || a.lambdaStar;
  if (by_family == by_params) {
    err << "capacity: give either --lambda [--p] or all of --lambda1 --lambda3 --lambda-star\n";
    return kExitInvalid;
  }
  if (by_params && !(a.lambda1 && a.lambda3 && a.lambdaStar)) {
    err << "capacity: --lambda1, --lambda3 and --lambda-star must be given together\n";
    return kExitInvalid;
  }
  const PhaseCovariantChannel ch =
      by_family ? gadc(*a.lambda, a.p) : make_channel(*a.lambda1, *a.lambda3, *a.lambdaStar);

  json report;
  report["lambda1"] = ch.lambda1;
  report["lambda3"] = ch.lambda3;
  report["lambda_star"] = ch.lambdaStar;
  report["method"] = a.method;
  if (a.method == "formula") {
    double p = 0.0;
    try {
      p = gadc_mixing_parameter(ch);
    } catch (const ShapeMismatch& e) {
      err << "capacity: " << e.what()
          << "\nthe formula method needs lambda3 = lambda1^2 and lambda_star = p(1 - lambda1^2);"
             " use --method oracle for other channels\n";
      return kExitInvalid;
    }
    const CapacityBounds b = capacity_bounds(ch);
    report["p"] = p;
    report["chi"] = b.lower;
    report["c_e"] = b.upper;
  } else {
    if (!ch.valid) {
      err << "capacity: the channel is not completely positive\n";
      return kExitInvalid;
    }
    const OracleReport chi = chi_bruteforce(ch, 4, a.seed);
    const OracleReport ce = ce_bruteforce(ch, a.seed);
    report["chi"] = chi.value;
    report["c_e"] = ce.value;
    report["c_e_off_axis"] = ce.offAxis;
  }

  const CpReport cp = is_cp(ch);
  report["cp"] = cp.cp;
  report["cp_absolute_margin"] = cp.absoluteMargin;
  report["cp_quadratic_margin"] = cp.quadraticMargin;
  try {
    report["non_unitality"] = non_unitality(ch);
  } catch (const DegenerateInput&) {
    report["non_unitality"] = nullptr;
  }
  try {
    report["stationary_z"] = stationary_state(ch).bloch().z;
  } catch (const DegenerateInput&) {
    report["stationary_z"] = nullptr;
  }

  if (a.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : report.items()) {
      out << key << ": ";
      if (value.is_number_float()) {
        out << format_value(value.get<double>());
      } else if (value.is_null()) {
        out << "undefined";
      } else if (value.is_string()) {
        out << value.get<std::string>();
      } else {
        out << value.dump();
      }
      out << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// trajectory

struct TrajectoryArgs {
  std::string profile = "exp";
  std::string p = "0";
  double tMax = 5.0;
  int steps = 501;
  std::string output = "-";
  std::string format = "csv";
};

int cmd_trajectory(const TrajectoryArgs& a, std::ostream& out, std::ostream& err) {
  const GadcFamily fam = parse_profile(a.profile, parse_real(a.p));
  const auto rows = trajectory(fam, a.tMax, a.steps);
  Sink sink(a.output, out);
  std::size_t failed = 0;
  if (a.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      json row = {{"t", r.t},     {"lambda", r.lambda},        {"p", r.p},
                  {"chi", r.chi}, {"c_e", r.cE},               {"chi_unital", r.chiUnital},
                  {"c_e_unital", r.cEUnital}, {"ok", r.ok}};
      if (!r.ok) row["error"] = r.error;
      arr.push_back(row);
    }
    *sink << arr.dump(2) << "\n";
  } else {
    *sink << "t,lambda,p,chi,c_e,chi_unital,c_e_unital\n";
    for (const auto& r : rows) {
      *sink << format_time(r.t) << ',' << format_value(r.lambda) << ',' << format_value(r.p) << ',';
      if (r.ok) {
        *sink << format_value(r.chi) << ',' << format_value(r.cE) << ',' << format_value(r.chiUnital) << ','
              << format_value(r.cEUnital) << '\n';
      } else {
        *sink << "nan,nan,nan,nan\n";
      }
    }
  }
  for (const auto& r : rows) {
    if (!r.ok) {
      ++failed;
      err << "trajectory: row t = " << format_time(r.t) << " failed: " << r.error << "\n";
    }
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// kernel

struct KernelArgs {
  std::string recipe;
  std::string recipeFile;
  bool solve = false;
  double tMax = 10.0;
  double dt = 1e-3;
  std::string output = "-";
};

int cmd_kernel(const KernelArgs& a, std::ostream& out, std::ostream& err) {
  std::string text = a.recipe;
  if (!a.recipeFile.empty()) {
    std::ifstream in(a.recipeFile);
    if (!in) throw InvalidInput("cannot read recipe file " + a.recipeFile);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty()) throw InvalidInput("kernel: give --recipe or --recipe-file");
  if (!(a.tMax > 0.0) || !(a.dt > 0.0)) throw InvalidInput("kernel: --t-max and --dt must be positive");

  const KernelRecipe recipe = parse_kernel_recipe(text);
  KernelBuildOptions opts;
  opts.horizon = a.tMax;
  opts.dt = a.dt;
  const BuiltKernel built = build_kernel(recipe, opts);
  const std::string report = report_json(recipe, built);

  if (!a.solve) {
    out << report << "\n";
  } else {
    err << report << "\n";
    const Trajectory tr = volterra_solve(built.kernel, a.tMax, a.dt);
    Sink sink(a.output, out);
    *sink << "t,lambda1,lambda3,lambda_star";
    if (built.closedForm) *sink << ",err_lambda1,err_lambda3,err_lambda_star";
    *sink << "\n";
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      *sink << format_time(tr.t[i]) << ',' << format_value(tr.lambda1[i]) << ','
            << format_value(tr.lambda3[i]) << ',' << format_value(tr.lambdaStar[i]);
      if (built.closedForm) {
        const PhaseCovariantChannel exact = built.closedForm->at(tr.t[i]);
        const double e1 = tr.lambda1[i] - exact.lambda1;
        const double e3 = tr.lambda3[i] - exact.lambda3;
        const double es = tr.lambdaStar[i] - exact.lambdaStar;
        worst = std::max({worst, std::abs(e1), std::abs(e3), std::abs(es)});
        *sink << ',' << format_value(e1) << ',' << format_value(e3) << ',' << format_value(es);
      }
      *sink << '\n';
    }
    if (built.closedForm) err << "max closed-form error: " << format_value(worst) << "\n";
  }
  if (!built.acceptable()) {
    err << "kernel: recipe is not admissible or violates the legitimacy conditions\n";
    return kExitInvalid;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::vector<std::string> lambdas{"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"};
  std::vector<std::string> ps{"0", "1/3", "2/3", "1"};
  std::uint64_t seed = 1;
  int maxStates = 4;
  std::string output = "-";
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto lambdas = parse_list(a.lambdas);
  const auto ps = parse_list(a.ps);
  Sink sink(a.output, out);
  *sink << "lambda,p,chi_formula,chi_oracle,d_chi,ce_formula,ce_oracle,d_ce,pass\n";
  bool all = true;
  for (const double l : lambdas) {
    for (const double p : ps) {
      const CapacityBounds b = capacity_bounds(l, p);
      const PhaseCovariantChannel ch = gadc(l, p);
      const double chi = chi_bruteforce(ch, a.maxStates, a.seed).value;
      const double ce = ce_bruteforce(ch, a.seed).value;
      const double dchi = std::abs(b.lower - chi);
      const double dce = std::abs(b.upper - ce);
      const bool pass = dchi <= 5e-3 && dce <= 1e-4;
      all = all && pass;
      *sink << format_value(l) << ',' << format_value(p) << ',' << format_value(b.lower) << ','
            << format_value(chi) << ',' << format_value(dchi) << ',' << format_value(b.upper) << ','
            << format_value(ce) << ',' << format_value(dce) << ',' << (pass ? "true" : "false") << '\n';
    }
  }
  if (!all) err << "verify: at least one grid point exceeds the oracle tolerance\n";
  return all ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// cross, mixcheck

struct SweepArgs {
  std::string profile = "exp";
  std::string p = "1";
  double tMax = 10.0;
  double dt = 1e-3;
};

int cmd_cross(const SweepArgs& a, std::ostream& out, std::ostream&) {
  const double p = parse_real(a.p);
  if (p == 0.0) throw InvalidInput("cross: needs |p| > 0");
  const auto windows = crossing_windows(parse_profile(a.profile, p), a.tMax, a.dt);
  json arr = json::array();
  for (const auto& w : windows) arr.push_back({w.start, w.end});
  out << arr.dump() << "\n";
  return kExitOk;
}

int cmd_mixcheck(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const GadcFamily fam = parse_profile(a.profile, parse_real(a.p));
  const MixtureReport r = mixture_equivalence(fam, a.tMax, a.dt);
  const json report = {{"profile", fam.profile_name()},
                       {"p", fam.p},
                       {"t_max", a.tMax},
                       {"dt", a.dt},
                       {"map_vs_generator", r.mapVsGenerator},
                       {"map_vs_kernel", r.mapVsKernel},
                       {"generator_vs_kernel", r.generatorVsKernel},
                       {"max_deviation", r.maxDeviation},
                       {"threshold", 100.0 * a.dt},
                       {"singularities", r.singularities},
                       {"pass", r.passes(a.dt)}};
  out << report.dump(2) << "\n";
  if (!r.passes(a.dt)) {
    err << "mixcheck: routes disagree by " << format_value(r.maxDeviation) << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    std::size_t un = 0, ud = 0;
    const double n = std::stod(num, &un);
    const double d = std::stod(den, &ud);
    if (un != num.size() || ud != den.size() || d == 0.0) throw std::invalid_argument(text);
    return n / d;
  } catch (const std::logic_error&) {
    throw InvalidInput("not a number: \"" + text + "\"");
  }
}

GadcFamily parse_profile(const std::string& profile, double p) {
  if (profile == "exp") return exp_family(p);
  if (profile == "cos") return cos_family(p);
  return tabulated_family(std::make_shared<const TabulatedProfile>(TabulatedProfile::from_csv(profile)), p);
}

std::string format_time(double t) { return format("%.9g", t); }
std::string format_value(double v) { return format("%.12g", v); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacities of phase-covariant qubit dynamical maps", "qcapax"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qcapax 0.1.0");

  CapacityArgs cap;
  auto* capacity = app.add_subcommand("capacity", "Holevo and entanglement-assisted capacity of one channel");
  capacity->add_option("--lambda", cap.lambda, "GADC lambda (with --p)");
  capacity->add_option("--p", cap.p, "GADC mixing parameter in [-1, 1]");
  capacity->add_option("--lambda1", cap.lambda1, "transverse eigenvalue");
  capacity->add_option("--lambda3", cap.lambda3, "longitudinal eigenvalue");
  capacity->add_option("--lambda-star", cap.lambdaStar, "translation");
  capacity->add_option("--method", cap.method, "formula or oracle")
      ->check(CLI::IsMember({"formula", "oracle"}));
  capacity->add_option("--format", cap.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  capacity->add_option("--seed", cap.seed, "oracle seed");

  TrajectoryArgs tra;
  auto* traj = app.add_subcommand("trajectory", "Capacities along a GADC dynamical map (CSV)");
  traj->add_option("--profile", tra.profile, "exp, cos or a CSV file of (t, lambda)");
  traj->add_option("--p", tra.p, "mixing parameter, fractions allowed");
  traj->add_option("--t-max", tra.tMax, "final time");
  traj->add_option("--steps", tra.steps, "grid points (>= 2)");
  traj->add_option("--output,-o", tra.output, "output path, - for stdout");
  traj->add_option("--format", tra.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  KernelArgs ker;
  auto* kernel = app.add_subcommand("kernel", "Build a memory kernel from a JSON recipe");
  kernel->add_option("--recipe", ker.recipe, "recipe JSON text");
  kernel->add_option("--recipe-file", ker.recipeFile, "recipe JSON file");
  kernel->add_flag("--solve", ker.solve, "solve the master equation and print the trajectory");
  kernel->add_option("--t-max", ker.tMax, "final time and kernel tabulation horizon");
  kernel->add_option("--dt", ker.dt, "time step");
  kernel->add_option("--output,-o", ker.output, "output path, - for stdout");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Compare capacity formulas against brute-force oracles");
  verify->add_option("--lambdas", ver.lambdas, "lambda grid")->delimiter(',');
  verify->add_option("--ps", ver.ps, "p grid, fractions allowed")->delimiter(',');
  verify->add_option("--seed", ver.seed, "oracle seed");
  verify->add_option("--max-states", ver.maxStates, "ensemble size for the Holevo oracle");
  verify->add_option("--output,-o", ver.output, "output path, - for stdout");

  SweepArgs crs;
  auto* cross = app.add_subcommand("cross", "Windows where chi exceeds the unital C_E (JSON)");
  cross->add_option("--profile", crs.profile, "exp, cos or a CSV file of (t, lambda)");
  cross->add_option("--p", crs.p, "mixing parameter, fractions allowed");
  cross->add_option("--t-max", crs.tMax, "final time");
  cross->add_option("--dt", crs.dt, "sampling step");

  SweepArgs mix;
  auto* mixcheck = app.add_subcommand("mixcheck", "Map, generator and kernel mixtures side by side");
  mixcheck->add_option("--profile", mix.profile, "exp, cos or a CSV file of (t, lambda)");
  mixcheck->add_option("--p", mix.p, "mixing parameter, fractions allowed");
  mixcheck->add_option("--t-max", mix.tMax, "final time");
  mixcheck->add_option("--dt", mix.dt, "time step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*capacity) return cmd_capacity(cap, out, err);
    if (*traj) return cmd_trajectory(tra, out, err);
    if (*kernel) return cmd_kernel(ker, out, err);
    if (*verify) return cmd_verify(ver, out, err);
    if (*cross) return cmd_cross(crs, out, err);
    if (*mixcheck) return cmd_mixcheck(mix, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInvalid;
}

}  // namespace qcapax::cli
