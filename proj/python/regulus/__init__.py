# Copyright 2026 The Regulus Authors
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

"""Certified zero finding, minimal-norm zeros, leftmost tree paths and Fejer rates."""

from ._core import (
    EmptyAdmissibleSet,
    EvaluatorNotConvergent,
    GridTooCoarse,
    NoBranchAtDepth,
    ParseError,
    RegulusError,
    RunResult,
    SearchExhausted,
    brute_tree_modulus,
    decimal,
    dyadic_index,
    dyadic_point,
    exit_code_for,
    fixture_iterates,
    fixture_residuals,
    hilbert_uniqueness_modulus,
    leftmost_iteration,
    run,
    run_file,
)

__all__ = [
    "EmptyAdmissibleSet",
    "EvaluatorNotConvergent",
    "GridTooCoarse",
    "NoBranchAtDepth",
    "ParseError",
    "RegulusError",
    "RunResult",
    "SearchExhausted",
    "brute_tree_modulus",
    "decimal",
    "dyadic_index",
    "dyadic_point",
    "exit_code_for",
    "fixture_iterates",
    "fixture_residuals",
    "hilbert_uniqueness_modulus",
    "leftmost_iteration",
    "run",
    "run_file",
]
