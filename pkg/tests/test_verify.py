import random

import pandas as pd
import pytest
from sympy import QQ

from superjacobi.errors import DegenerateParameters, PreconditionError
from superjacobi.verify import COLUMNS, SuiteRecorder, blowup_suite, eigen_suite, failures, run_suites, summarize


def test_recorder_turns_errors_into_failures():
    rec = SuiteRecorder("demo")
    rec.check("ok", lambda: True)
    rec.check("detail", lambda: (False, "off by one"))

    def outside_hook():
        raise PreconditionError("(2,2) is not in H(1,1)")

    rec.check("raises", outside_hook)
    assert [row["passed"] for row in rec.rows] == [True, False, False]
    assert rec.rows[1]["detail"] == "off by one"
    assert rec.rows[2]["detail"].startswith("PreconditionError")


def test_recorder_lets_degenerate_parameters_through():
    rec = SuiteRecorder("demo")

    def degenerate():
        raise DegenerateParameters("t is degenerate")

    with pytest.raises(DegenerateParameters):
        rec.check("raises", degenerate)
    assert rec.rows == []


def test_suite_stops_at_a_degenerate_slope():
    with pytest.raises(DegenerateParameters):
        eigen_suite(1, 2, random.Random(0), t=QQ(0))


def test_blowup_suite_is_clean():
    rows = blowup_suite(1, 0, random.Random(0), count=200)
    assert len(rows) == 200
    assert all(row["passed"] for row in rows)


@pytest.mark.parametrize("suite", ["comb", "euler", "kac"])
def test_combinatorial_and_character_suites(suite):
    results = run_suites([suite], 1, 4)
    assert list(results.columns) == COLUMNS
    assert not results.empty
    assert failures(results).empty


def test_coefficient_suite_small():
    results = run_suites(["coeffs"], 1, 3)
    assert failures(results).empty


def test_special_suite_small():
    results = run_suites(["special"], 1, 2)
    assert failures(results).empty


def test_summary_counts():
    results = pd.DataFrame(
        [
            {"suite": "a", "case": "1", "passed": True, "detail": ""},
            {"suite": "a", "case": "2", "passed": False, "detail": "x"},
            {"suite": "b", "case": "1", "passed": True, "detail": ""},
        ],
        columns=COLUMNS,
    )
    summary = summarize(results)
    assert summary.to_dict("records") == [
        {"suite": "a", "cases": 2, "passed": 1, "failed": 1},
        {"suite": "b", "cases": 1, "passed": 1, "failed": 0},
    ]
    assert list(failures(results)["case"]) == ["2"]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(["nope"], 1, 2)
