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

import json
import os
from fractions import Fraction
from pathlib import Path

import pytest

import regulus

PROBLEMS = Path(os.environ.get("REGULUS_PROBLEMS_DIR", Path(__file__).resolve().parents[2] / "problems"))


def test_run_zero_problem_text():
    text = (PROBLEMS / "abs_half.ini").read_text()
    result = regulus.run(text, depth=5)
    assert result.kind == "zero"
    assert result.exit_code == 0
    rows = [line for line in result.table.splitlines() if line]
    assert rows[0].startswith("k,beta,point")
    assert len(rows) == 7
    assert json.loads(result.certificate)


def test_run_file_json_and_verify():
    result = regulus.run_file(str(PROBLEMS / "minnorm_interval.ini"), depth=3, out="json", verify=True)
    table = json.loads(result.table)
    assert table["kind"] == "minnorm"
    assert len(table["rows"]) == 4
    assert result.divergences == []


def test_divergence_is_reported():
    result = regulus.run_file(str(PROBLEMS / "squared_half_invalid.ini"), verify=True)
    assert result.exit_code == 6
    assert result.divergences


def test_errors_are_typed():
    with pytest.raises(regulus.ParseError):
        regulus.run("")
    with pytest.raises(regulus.ParseError):
        regulus.run("[problem]\nkind = zero\n", kind="fejer")
    assert issubclass(regulus.SearchExhausted, regulus.RegulusError)
    assert issubclass(regulus.RegulusError, RuntimeError)
    with pytest.raises(regulus.NoBranchAtDepth):
        regulus.leftmost_iteration(2, "1 11 1111", "none", 3)
    assert regulus.exit_code_for("EmptyAdmissibleSet") == 4


def test_dense_sequence():
    expected = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(1, 8)]
    assert [regulus.dyadic_point(i) for i in range(6)] == expected
    assert regulus.dyadic_index(Fraction(3, 8)) == 6


def test_moduli_and_trees():
    assert [regulus.hilbert_uniqueness_modulus(1, k) for k in range(4)] == [5, 7, 9, 11]
    # Members 00, 01, 11 at depth 2, extended by zeros.
    assert regulus.leftmost_iteration(2, "1 11 1101", "zero-extensions-only", 4) == "0000"
    rho = regulus.brute_tree_modulus(2, "1 11 1101", "zero-extensions-only", 8)
    assert len(rho) == 9
    assert all(a <= b for a, b in zip(rho, rho[1:]))


def test_fixture_iteration():
    xs = regulus.fixture_iterates(6)
    assert xs[0] == 0
    assert xs[1] == Fraction(1, 3)
    assert all(a < b < 1 for a, b in zip(xs, xs[1:]))
    residuals = regulus.fixture_residuals(5)
    assert residuals == [b - a for a, b in zip(xs, xs[1:])]
    assert regulus.decimal(Fraction(1, 3), 6) == "0.333333"
