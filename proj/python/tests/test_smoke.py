import json
from pathlib import Path

import jsonschema
import pytest

import forestbd

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[2] / "schema" / "run_report.schema.json").read_text()
)

TRIANGLE = [[1, 2], [-1, 2], [1, -2]]


def test_formula_round_trip():
    f = forestbd.Formula(TRIANGLE)
    assert f.num_vars == 2 and f.num_clauses == 3 and f.length == 6
    assert forestbd.Formula.parse(f.to_dimacs()) == f
    assert not f.is_acyclic()
    assert f.apply({1: True}).clauses == [[2]]


def test_parse_error():
    with pytest.raises(forestbd.ParseError):
        forestbd.Formula.parse("p cnf 1 1\n1 -1 0\n")


def test_grid_detection():
    grid = forestbd.gen_grid(3)
    strong = forestbd.detect(grid, "strong", 1)
    assert strong == {"found": True, "backdoor": [10], "witness": None}
    assert forestbd.detect_deletion(grid, 1) == {"found": False, "k": 1}
    weak = forestbd.detect_weak(grid, 1, threads=2)
    assert weak["found"] and forestbd.verify(grid, "weak", weak["backdoor"])
    assert grid.apply(weak["witness"]).is_acyclic()


def test_counting_matches_oracle():
    f = forestbd.gen_random(10, 8, 3, 42)
    report = forestbd.oracle.min_backdoor(f, "strong", 3)
    assert report["optimum"] is not None
    backdoor = report["witness_sets"][0]
    assert forestbd.count(f, backdoor) == forestbd.oracle.count(f)


def test_big_counts_are_python_ints():
    f = forestbd.Formula([], num_vars=100)
    assert forestbd.count_acyclic(f) == 2**100


def test_count_rejects_non_backdoor():
    with pytest.raises(forestbd.ContractError):
        forestbd.count(forestbd.Formula(TRIANGLE), [])


def test_strong_resource_guard():
    with pytest.raises(forestbd.ResourceGuardError):
        forestbd.detect_strong(forestbd.gen_grid(2), 7)


def test_hitting_set_reduction():
    family = [[1, 2], [2, 3]]
    f = forestbd.gen_hitting_set(family)
    assert forestbd.oracle.min_hitting_set(family) == 1
    assert forestbd.oracle.min_backdoor(f, "weak", 3)["optimum"] == 1


def test_cli_reports_validate(tmp_path):
    cnf = tmp_path / "grid.cnf"
    cnf.write_text(forestbd.gen_grid(3).to_dimacs())
    for args in (
        ["detect", "weak", "--cnf", str(cnf), "-k", "1"],
        ["detect", "strong", "--cnf", str(cnf), "-k", "1"],
        ["count", "--cnf", str(cnf)],
        ["stats", "--cnf", str(cnf)],
        ["oracle", "--cnf", str(cnf), "--kind", "strong", "--kmax", "1"],
    ):
        code, out, _ = forestbd.run_cli(args + ["--json", "--no-timing"])
        assert code == 0
        jsonschema.validate(json.loads(out), SCHEMA)


def test_cli_usage_error():
    code, _, err = forestbd.run_cli(["bogus"])
    assert code == 2 and err
