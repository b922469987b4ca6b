"""Tests for the text and JSON renderings."""
from __future__ import annotations

import json

from e3c.const import MODE_EXHAUSTIVE, UNREACHABLE
from e3c.cube import E3CParams, vertex_from_flat
from e3c.export import (
    dot_lines,
    dump_json,
    edge_list_lines,
    fault_maximum_to_dict,
    path_system_to_dict,
    qnk_dot_lines,
    stamp,
)
from e3c.oracles import FaultMaximum, FaultSet
from e3c.router import construct_path_system


def test_edge_list_is_sorted_by_first_endpoint(p111: E3CParams) -> None:
    lines = list(edge_list_lines(p111))
    firsts = [int(line.split()[0], 3) for line in lines]
    assert firsts == sorted(firsts)


def test_dot_colours_edges(p111: E3CParams) -> None:
    lines = list(dot_lines(p111))
    assert lines[0] == 'graph "E3C(1,1,1)" {'
    assert lines[-1] == "}"
    assert lines[2].startswith('  "0000" -- "0001" [color=')
    assert 'label="E0"' in lines[2]


def test_qnk_dot_labels_dimensions() -> None:
    lines = list(qnk_dot_lines(1, 3))
    assert lines[0] == 'graph "Q_1^3" {'
    assert lines[2:-1] == [
        '  "0" -- "1" [label="D0"];',
        '  "0" -- "2" [label="D0"];',
        '  "1" -- "2" [label="D0"];',
    ]


def test_unreachable_distance_is_a_string(p111: E3CParams) -> None:
    u, v = vertex_from_flat(p111, "0000"), vertex_from_flat(p111, "1110")
    result = FaultMaximum(
        value=None,
        pair=(u, v),
        faults=FaultSet.of([1, 2, 3, 6]),
        f=4,
        mode=MODE_EXHAUSTIVE,
        seed=None,
        runs=1,
    )
    document = fault_maximum_to_dict(result)
    assert document["value"] == UNREACHABLE
    assert document["faults"] == ["0001", "0002", "0010", "0020"]


def test_path_system_document(p111: E3CParams) -> None:
    system = construct_path_system(vertex_from_flat(p111, "0000"), vertex_from_flat(p111, "0010"))
    document = json.loads(dump_json(path_system_to_dict(system)))
    assert document["source"] == "0000"
    assert document["case"]["expression"] == "t+6"
    assert document["case"]["eq"] == {"A": True, "B": True, "C": False}
    assert all(path[0] == "0000" and path[-1] == "0010" for path in document["paths"])


def test_stamp_puts_run_fields_first(p111: E3CParams) -> None:
    stamped = stamp({"value": 1}, p111, 7, "sampled", 0.1234567)
    assert list(stamped) == ["version", "params", "seed", "mode", "wall_time", "value"]
    assert stamped["params"] == [1, 1, 1]
    assert stamped["wall_time"] == 0.123457
    assert stamp({}, None, None, None, 0.0)["params"] is None
