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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcapax/capacity.hpp"
#include "qcapax/core.hpp"
#include "qcapax/dynamics.hpp"
#include "qcapax/errors.hpp"
#include "qcapax/oracle.hpp"
#include "qcapax/recipe.hpp"

namespace py = pybind11;
using namespace qcapax;

namespace {

py::dict trajectory_dict(const Trajectory& tr) {
  py::dict d;
  d["t"] = tr.t;
  d["lambda1"] = tr.lambda1;
  d["lambda3"] = tr.lambda3;
  d["lambda_star"] = tr.lambdaStar;
  return d;
}

GadcFamily family(const std::string& profile, double p) {
  if (profile == "exp") return exp_family(p);
  if (profile == "cos") return cos_family(p);
  throw InvalidInput("profile must be \"exp\" or \"cos\"");
}

}  // namespace

PYBIND11_MODULE(_qcapax, m) {
  m.doc() = "Capacities of phase-covariant qubit channels and dynamical maps";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", PyExc_ArithmeticError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);

  py::class_<PhaseCovariantChannel>(m, "Channel")
      .def(py::init(&make_channel), py::arg("lambda1"), py::arg("lambda3"), py::arg("lambda_star"))
      .def_readonly("lambda1", &PhaseCovariantChannel::lambda1)
      .def_readonly("lambda3", &PhaseCovariantChannel::lambda3)
      .def_readonly("lambda_star", &PhaseCovariantChannel::lambdaStar)
      .def_readonly("valid", &PhaseCovariantChannel::valid)
      .def("__repr__", [](const PhaseCovariantChannel& c) {
        return "Channel(" + std::to_string(c.lambda1) + ", " + std::to_string(c.lambda3) + ", " +
               std::to_string(c.lambdaStar) + ")";
      });

  m.def("gadc", &gadc, py::arg("lam"), py::arg("p"));
  m.def("is_cp", [](const PhaseCovariantChannel& ch) { return is_cp(ch).cp; });
  m.def("is_cp_linear", [](const PhaseCovariantChannel& ch) { return is_cp_linear(ch); });
  m.def("non_unitality", &non_unitality);
  m.def("stationary_z", [](const PhaseCovariantChannel& ch) { return stationary_state(ch).bloch().z; });
  m.def("compose", &compose);

  m.def("binary_entropy", &binary_entropy);
  m.def("holevo_unital", &holevo_unital, py::arg("lam"));
  m.def("ce_unital", &ce_unital, py::arg("lam"));
  m.def("holevo_gadc", [](double l, double p) { return holevo_gadc(l, p).chi; }, py::arg("lam"), py::arg("p"));
  m.def("ce_gadc", [](double l, double p) { return ce_gadc(l, p).value; }, py::arg("lam"), py::arg("p"));
  m.def("ce_ad", [](double l) { return ce_ad(l).value; }, py::arg("lam"));
  m.def(
      "capacity_bounds",
      [](double l, double p) {
        const CapacityBounds b = capacity_bounds(l, p);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("lam"), py::arg("p"), "(chi, C_E) for the GADC with parameters (lam, p).");

  m.def("chi_bruteforce", [](const PhaseCovariantChannel& ch, int max_states,
                             std::uint64_t seed) { return chi_bruteforce(ch, max_states, seed).value; },
        py::arg("channel"), py::arg("max_states") = 4, py::arg("seed") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("ce_bruteforce", [](const PhaseCovariantChannel& ch, std::uint64_t seed) { return ce_bruteforce(ch, seed).value; },
        py::arg("channel"), py::arg("seed") = 1, py::call_guard<py::gil_scoped_release>());

  m.def(
      "crossing_windows",
      [](const std::string& profile, double p, double t_max, double dt) {
        std::vector<std::pair<double, double>> out;
        for (const auto& w : crossing_windows(family(profile, p), t_max, dt)) out.emplace_back(w.start, w.end);
        return out;
      },
      py::arg("profile"), py::arg("p"), py::arg("t_max") = 10.0, py::arg("dt") = 1e-3);

  m.def(
      "mixture_deviation",
      [](const std::string& profile, double p, double t_max, double dt) {
        return mixture_equivalence(family(profile, p), t_max, dt).maxDeviation;
      },
      py::arg("profile"), py::arg("p"), py::arg("t_max") = 10.0, py::arg("dt") = 1e-3);

  m.def(
      "solve_recipe",
      [](const std::string& recipe_json, double t_max, double dt) {
        KernelBuildOptions opts;
        opts.horizon = t_max;
        opts.dt = dt;
        const KernelRecipe recipe = parse_kernel_recipe(recipe_json);
        const BuiltKernel built = build_kernel(recipe, opts);
        py::dict d = trajectory_dict(volterra_solve(built.kernel, t_max, dt));
        d["acceptable"] = built.acceptable();
        return d;
      },
      py::arg("recipe"), py::arg("t_max") = 10.0, py::arg("dt") = 1e-3);
}
