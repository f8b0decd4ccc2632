# Copyright 2026 The qramwb Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the qramwb QRAM workbench."""

import json

from . import _qramwb
from ._qramwb import (
    NOISE_CSV_HEADER,
    BoundsError,
    BuilderError,
    NoiseError,
    QlaError,
    SimError,
    distillation_fidelity_cap,
    eigen_oracle,
    estimate_infidelity,
    hamiltonian_distance_floor,
    log2_circuit_count,
    min_gates_for_table,
    poly_eigen_transform,
    random_table,
    regime_table_markdown,
)

__all__ = [
    "NOISE_CSV_HEADER",
    "BoundsError",
    "BuilderError",
    "NoiseError",
    "QlaError",
    "SimError",
    "build",
    "distillation_fidelity_cap",
    "eigen_oracle",
    "estimate_infidelity",
    "fit_scaling",
    "hamiltonian_distance_floor",
    "log2_circuit_count",
    "min_gates_for_table",
    "poly_eigen_transform",
    "random_table",
    "regime_table",
    "regime_table_markdown",
    "verify",
]


def build(kind, words, word_width=1, **options):
    """Build a lookup circuit; returns the report, params and circuit JSON as a dict."""
    return json.loads(_qramwb._build(kind, list(words), word_width, **options))


def verify(kind, words, word_width=1, **options):
    """Simulate the circuit on basis inputs and compare with the table."""
    return json.loads(_qramwb._verify(kind, list(words), word_width, **options))


def fit_scaling(ns, ys, model="power_in_N"):
    return json.loads(_qramwb._fit_scaling(list(ns), list(ys), model))


def regime_table(n, d, k):
    return json.loads(_qramwb._regime_table(n, d, k))
