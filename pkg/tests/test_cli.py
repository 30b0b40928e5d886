import json

import pytest

from superjacobi.arith import INFINITY, ExtendedScalar
from superjacobi.cli import JobSpec, poly_from_json, poly_to_json, poly_to_text, run, table_frame, write_output
from superjacobi.errors import PreconditionError
from superjacobi.laurent import laurent_ring
from superjacobi.partitions import Partition

R1 = laurent_ring(1)
U = R1.variable(0) + R1.variable(0, -1)
V = R1.variable(1) + R1.variable(1, -1)


def test_compute_sj_of_the_empty_partition():
    result = run(JobSpec("compute-sj", 1, lam=Partition(()), format="json"))
    document = json.loads(result.document)
    assert result.exit_code == 0
    assert document == {"n": 1, "lambda": [], "t": "inf", "terms": [{"exp": [0, 0], "coeff": "1/1"}]}


def test_compute_sj_json_round_trip():
    result = run(JobSpec("compute-sj", 1, lam=Partition((2,)), format="json"))
    document = json.loads(result.document)
    assert document["lambda"] == [2]
    assert document["terms"][0] == {"exp": [2, 0], "coeff": "1/1"}
    assert poly_from_json(document) == U * U - U * V


def test_compute_sj_text_on_the_blowup_line():
    result = run(JobSpec("compute-sj", 1, lam=Partition((2,)), t=ExtendedScalar.parse("1/2")))
    assert result.document.splitlines()[0] == "SJ[2](1/2), n=1"
    assert result.data == U * U - U * V - 4


def test_compute_si_and_sch():
    assert run(JobSpec("compute-si", 1, lam=Partition((2,)))).data == U * U - U * V
    result = run(JobSpec("compute-sch", 1, lam=Partition((1,)), format="json"))
    document = json.loads(result.document)
    assert document["chi"] == {"eps": 1, "delta": [0]}
    assert set(document["sch"]) == {"E", "L", "K"}


def test_zero_polynomial_text():
    assert poly_to_text(R1.zero()) == "0"
    assert poly_to_json(R1.zero(), Partition(()), INFINITY)["terms"] == []


def test_table_frame():
    frame = table_frame(1, 2, INFINITY)
    assert list(frame["lambda"]) == ["-", "1", "1,1", "2"]
    assert list(frame["class"]) == ["regular", "regular", "regular", "singular"]
    assert list(frame["c_tilde"]) == [0, -1, -4, 0]
    row = frame.iloc[3]
    assert row["j"] == 1
    assert row["sharp_chain"] == "2 > -"
    assert row["b"] == "0/1"
    assert frame["j"].isna().sum() == 3


def test_table_csv():
    result = run(JobSpec("table", 1, format="csv", max_size=2))
    assert result.document.splitlines()[0] == "lambda,class,j,sharp_chain,c_tilde,b"


@pytest.mark.parametrize(
    "spec",
    [
        JobSpec("plot", 1),
        JobSpec("table", 0),
        JobSpec("table", 1, format="xml"),
        JobSpec("compute-sj", 1, lam=Partition((1,)), format="csv"),
        JobSpec("compute-sj", 1, lam=Partition((2, 2))),
        JobSpec("compute-si", 1),
    ],
)
def test_invalid_jobs(spec):
    with pytest.raises(PreconditionError):
        run(spec)


def test_verify_passes():
    result = run(JobSpec("verify", 1, max_size=3, suites=["comb", "euler"], format="json"))
    document = json.loads(result.document)
    assert result.exit_code == 0
    assert document["failures"] == []
    assert [row["suite"] for row in document["summary"]] == ["comb", "euler"]


def test_write_output(tmp_path):
    target = write_output('{"a": 1}', str(tmp_path / "out" / "doc.json"), fmt="json")
    assert json.loads(target.read_text()) == {"a": 1}
    text = write_output("hello", str(tmp_path / "doc.txt"))
    assert text.read_text() == "hello\n"
