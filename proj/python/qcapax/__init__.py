# Copyright 2026 The qcapax Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Capacities of phase-covariant qubit channels and dynamical maps."""

from ._qcapax import (
    Channel,
    DegenerateInput,
    InvalidInput,
    NumericalFailure,
    binary_entropy,
    capacity_bounds,
    ce_ad,
    ce_bruteforce,
    ce_gadc,
    ce_unital,
    chi_bruteforce,
    compose,
    crossing_windows,
    gadc,
    holevo_gadc,
    holevo_unital,
    is_cp,
    is_cp_linear,
    mixture_deviation,
    non_unitality,
    solve_recipe,
    stationary_z,
)

__version__ = "0.1.0"

__all__ = [
    "Channel",
    "DegenerateInput",
    "InvalidInput",
    "NumericalFailure",
    "binary_entropy",
    "capacity_bounds",
    "ce_ad",
    "ce_bruteforce",
    "ce_gadc",
    "ce_unital",
    "chi_bruteforce",
    "compose",
    "crossing_windows",
    "gadc",
    "holevo_gadc",
    "holevo_unital",
    "is_cp",
    "is_cp_linear",
    "mixture_deviation",
    "non_unitality",
    "solve_recipe",
    "stationary_z",
]
