"""Tests for the command line."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import pytest

from e3c.cli import build_config, main
from e3c.const import (
    BOUND_TABLE,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    VERSION,
)
from e3c.exceptions import ConfigurationError


def run_json(capsys: pytest.CaptureFixture[str], argv: list[str], code: int = EXIT_OK) -> Any:
    assert main(argv) == code
    return json.loads(capsys.readouterr().out)


def test_gen_edge_list(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["gen", "1", "1", "1"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 162
    assert lines[0] == "0000 0001 E0"
    assert {line.split()[2] for line in lines} == {"E0", "E1", "E2", "E3"}


def test_gen_to_file_is_deterministic(tmp_path: Path) -> None:
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["gen", "1", "1", "2", "-o", str(first)]) == EXIT_OK
    assert main(["gen", "1", "1", "2", "--output", str(second)]) == EXIT_OK
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")
    assert len(first.read_text(encoding="utf-8").splitlines()) == 567


def test_gen_dot(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["gen", "1", "1", "1", "--format", "dot"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith('graph "E3C(1,1,1)" {')
    assert out.count(" -- ") == 162
    assert out.rstrip().endswith("}")


def test_gen_json_census(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["gen", "1", "2", "2", "--format", "json"])
    assert document["census"]["vertices"] == 729
    assert document["census"]["edges"] == 1944
    assert document["version"] == VERSION
    assert document["params"] == [1, 2, 2]


def test_gen_kary(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["gen", "--kary", "2", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 18
    assert lines[0] == "00 01 D0"


@pytest.mark.parametrize(
    "argv",
    [
        ["gen"],
        ["gen", "1", "1"],
        ["gen", "1", "1", "1", "--kary", "2", "3"],
        ["gen", "--kary", "2", "3", "--format", "json"],
        ["gen", "0", "1", "1"],
    ],
)
def test_gen_usage_errors(argv: list[str]) -> None:
    assert main(argv) == EXIT_USAGE


def test_metrics(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["metrics", "1", "1", "1"])
    assert document["diameter"] == 6
    assert document["connectivity"] == 4
    assert document["degree_histogram"] == {"4": 81}
    assert document["mode"] == "exhaustive"
    assert list(document)[:5] == [
        "version",
        "params",
        "seed",
        "mode",
        "wall_time",
    ]


def test_metrics_budget() -> None:
    assert main(["metrics", "1", "1", "2", "--budget", "100"]) == EXIT_BUDGET


def test_route(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["route", "1", "1", "1", "0000", "0001"])
    assert document["case"]["lemma"] == 8
    assert document["width"] == 4
    assert len(document["paths"]) == 4
    assert ["0000", "0001"] in document["paths"]
    assert document["max_length"] <= document["bound"] == 7
    assert document["normalization"] is None


def test_route_unsorted(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["route", "2", "1", "1", "00000", "10000"])
    assert document["normalization"].startswith("E3C(2,1,1) -> E3C(1,1,2)")
    assert document["params"] == [2, 1, 1]
    assert document["case"]["lemma"] == 4 and document["case"]["subcase"] == 1
    assert document["case"]["expression"] == "r+6"
    assert document["bound"] == 8
    assert all(path[0] == "00000" and path[-1] == "10000" for path in document["paths"])


@pytest.mark.parametrize(
    "vertices", [["0000", "0000"], ["000", "0001"], ["0000", "0003"]]
)
def test_route_usage_errors(vertices: list[str]) -> None:
    assert main(["route", "1", "1", "1", *vertices]) == EXIT_USAGE


def test_verify_one_case(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["verify", "1", "1", "1", "--lemma", "8"])
    assert document["verdict"] == "PASS"
    assert document["pairs_checked"] == 81
    assert set(document["cases"]) == {"8.1", "8.2", "8.3"}


def test_verify_sampled(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["verify", "1", "1", "2", "--sampled", "--trials", "200"])
    assert document["pairs_checked"] == 200
    assert document["violations"] == 0
    assert document["seed"] == 42


def test_verify_detects_broken_bounds(capsys: pytest.CaptureFixture[str]) -> None:
    table = {**BOUND_TABLE, 8: (("", 0),) * 3}
    code = main(["verify", "1", "1", "1", "--lemma", "8"], bound_table=table)
    assert code == EXIT_VERIFICATION_FAILED
    document = json.loads(capsys.readouterr().out)
    assert document["verdict"] == "FAIL"
    assert document["violations"] == 81


def test_verify_budget() -> None:
    assert main(["verify", "1", "1", "1", "--budget", "10"]) == EXIT_BUDGET


@pytest.mark.parametrize("lemma", ["0", "16", "x"])
def test_verify_rejects_bad_lemma(lemma: str) -> None:
    assert main(["verify", "1", "1", "1", "--lemma", lemma]) == EXIT_USAGE


def test_fault_sampled(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(
        capsys, ["fault", "1", "1", "1", "--sampled", "--trials", "100", "--pairs", "5"]
    )
    assert document["witness"]["u"] == "0002"
    assert sorted(document["witness"]["faults"]) == ["0001", "1002", "2002"]
    assert document["witness_distance"] == 7
    assert document["fault"]["lower_bound_only"] is True
    assert document["verdict"] == "PASS"


def test_fault_unsorted_is_normalized(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(
        capsys, ["fault", "2", "1", "1", "--sampled", "--trials", "50", "--pairs", "2"]
    )
    assert document["normalization"].startswith("E3C(2,1,1) -> E3C(1,1,2)")


@pytest.mark.parametrize(
    "extra",
    [["--faults", "9"], ["--exhaustive-pair-witness", "--sampled"], ["--trials", "0"]],
)
def test_fault_usage_errors(extra: list[str]) -> None:
    assert main(["fault", "1", "1", "1", *extra]) == EXIT_USAGE


def test_fault_budget() -> None:
    argv = ["fault", "1", "1", "1", "--exhaustive-pair-witness", "--budget", "10"]
    assert main(argv) == EXIT_BUDGET


def test_connectivity(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["connectivity", "1", "1", "1", "--sampled", "--trials", "50"])
    assert document["value"] == 4
    assert document["expected"] == 4
    assert document["pairs_checked"] == 50
    assert len(document["paths"]) == 4
    assert document["verdict"] == "PASS"


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert VERSION in capsys.readouterr().out


def test_missing_params_is_an_argparse_error() -> None:
    with pytest.raises(SystemExit) as info:
        main(["metrics"])
    assert info.value.code == 2


def test_build_config_defaults() -> None:
    config = build_config({"command": "fault", "params": [1, 2, 2]})
    assert config.faults is None
    assert config.pairs == 100
    assert not config.sampled
    with pytest.raises(ConfigurationError):
        build_config({"command": "route", "params": [1, 1, 1]})
    with pytest.raises(ConfigurationError):
        build_config({"command": "bogus"})


@pytest.mark.slow
def test_verify_all_pairs(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["verify", "1", "1", "1"])
    assert document["pairs_checked"] == 3240
    assert document["violations"] == 0
    assert all("flow-repair" not in case["strategies"] for case in document["cases"].values())
    assert document["seed"] == 42


def test_verify_filters_by_case(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["verify", "1", "1", "2", "--lemma", "9"])
    assert document["violations"] == 0
    assert document["pairs_checked"] > 0
    assert all(key.startswith("9.") for key in document["cases"])


@pytest.mark.slow
def test_fault_exhaustive_witness(capsys: pytest.CaptureFixture[str]) -> None:
    document = run_json(capsys, ["fault", "1", "1", "1", "--exhaustive-pair-witness"])
    assert document["witness_distance"] == 7
    assert document["verdict"] == "PASS"
