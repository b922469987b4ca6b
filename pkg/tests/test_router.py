"""Tests for pair classification and the disjoint path router."""
from __future__ import annotations

from collections.abc import Callable
import dataclasses
import itertools
import logging
import random

import pytest

from e3c import router
from e3c.const import BOUND_TABLE, MODE_SAMPLED, STRATEGY_FLOW_REPAIR, STRATEGY_RECIPE
from e3c.cube import (
    E3CParams,
    E3CVertex,
    Role,
    block_isomorphism,
    edge_class,
    iter_vertices,
    vertex_from_index,
)
from e3c.exceptions import ConstructionDefect, DomainError
from e3c.oracles import iter_pairs
from e3c.router import (
    CaseLabel,
    case_bound,
    classify_pair,
    construct_path_system,
    lower_bound_witness,
    normalize_params,
    route_pair,
    validate_path_system,
)

VertexFactory = Callable[[E3CParams, str], E3CVertex]


@pytest.mark.parametrize(
    ("u", "v", "lemma", "subcase", "bound", "expression"),
    [
        ("0000", "0010", 1, 1, 7, "t+6"),
        ("0000", "0001", 8, 1, 7, "7"),
        ("0001", "0102", 10, 3, 7, "s+6"),
        ("0011", "0022", 9, 3, 9, "t+8"),
        ("2001", "0001", 4, 2, 7, "r+6"),
        ("0000", "1112", 15, 2, 9, "r+s+t+6"),
    ],
)
def test_classify_pair(
    p111: E3CParams,
    vertex: VertexFactory,
    u: str,
    v: str,
    lemma: int,
    subcase: int,
    bound: int,
    expression: str,
) -> None:
    label = classify_pair(vertex(p111, u), vertex(p111, v))
    assert (label.lemma, label.subcase, label.bound, label.expression) == (
        lemma,
        subcase,
        bound,
        expression,
    )
    assert str(label) == f"case {lemma}.{subcase} (bound {expression} = {bound})"


def test_classify_is_symmetric(p112: E3CParams) -> None:
    rng = random.Random(7)
    vertices = list(iter_vertices(p112))
    for _ in range(200):
        u, v = rng.sample(vertices, 2)
        assert classify_pair(u, v) == classify_pair(v, u)


def test_classify_rejects_equal_endpoints(p111: E3CParams, vertex: VertexFactory) -> None:
    with pytest.raises(DomainError):
        classify_pair(vertex(p111, "0120"), vertex(p111, "0120"))


def test_classify_rejects_mixed_graphs(vertex: VertexFactory) -> None:
    with pytest.raises(DomainError):
        classify_pair(vertex(E3CParams(1, 1, 2), "00000"), vertex(E3CParams(1, 2, 1), "00001"))


_LETTERS = {Role.A: "r", Role.B: "s", Role.C: "t"}


def _flags(label: CaseLabel) -> dict[Role, bool]:
    return {Role.A: label.eq_a, Role.B: label.eq_b, Role.C: label.eq_c}


def _terms(label: CaseLabel) -> tuple[set[str], str]:
    *letters, offset = label.expression.split("+")
    return set(letters), offset


@pytest.mark.parametrize("perm", list(itertools.permutations(range(3))))
def test_classification_follows_block_permutations(perm: tuple[int, int, int]) -> None:
    params = E3CParams(1, 2, 3)
    isomorphism = block_isomorphism(params, perm)
    role_by_letter = {letter: role for role, letter in _LETTERS.items()}
    rng = random.Random(13)
    vertices = list(iter_vertices(params))
    for _ in range(300):
        u, v = rng.sample(vertices, 2)
        label = classify_pair(u, v)
        image = classify_pair(isomorphism(u), isomorphism(v))
        assert image.bound == label.bound
        assert image.dpair == tuple(sorted((perm[u.d], perm[v.d])))
        flags, image_flags = _flags(label), _flags(image)
        assert all(image_flags[Role(perm[role])] == flags[role] for role in Role)
        letters, offset = _terms(label)
        image_letters, image_offset = _terms(image)
        assert image_letters == {
            _LETTERS[Role(perm[role_by_letter[letter]])] for letter in letters
        }
        assert image_offset == offset


def test_case_bound_never_exceeds_n_plus_5() -> None:
    for params in (E3CParams(1, 1, 1), E3CParams(1, 2, 3), E3CParams(2, 2, 2)):
        bounds = []
        for lemma, subcase in itertools.product(range(1, 16), range(1, 4)):
            label = CaseLabel(True, True, True, (0, 0), lemma, subcase, 0, "")
            bounds.append(case_bound(label, params))
        assert max(bounds) == params.n + 5


def test_case_bound_uses_table(p111: E3CParams, vertex: VertexFactory) -> None:
    label = classify_pair(vertex(p111, "0000"), vertex(p111, "0001"))
    assert case_bound(label, E3CParams(3, 3, 3)) == 7
    table = {**BOUND_TABLE, 8: (("rst", 1),) * 3}
    assert case_bound(label, p111, table) == 4
    with pytest.raises(DomainError):
        case_bound(label, p111, {1: BOUND_TABLE[1]})


def test_adjacent_pair_keeps_the_edge(p111: E3CParams, vertex: VertexFactory) -> None:
    u, v = vertex(p111, "0000"), vertex(p111, "0001")
    system = construct_path_system(u, v)
    assert system.width == 4
    assert (u, v) in system.paths
    assert (u, vertex(p111, "0002"), v) in system.paths
    assert system.label.lemma == 8
    assert system.strategy == STRATEGY_RECIPE
    assert validate_path_system(system) == []


@pytest.mark.parametrize(
    ("params", "u", "v", "recipe"),
    [
        (E3CParams(1, 1, 1), "0000", "0102", "9.3"),
        (E3CParams(1, 1, 1), "0000", "0112", "11.2"),
        (E3CParams(1, 1, 1), "0000", "1111", "15.1"),
        (E3CParams(2, 2, 2), "1020212", "0210011", "15.1"),
    ],
)
def test_written_recipe_covers_colliding_neighbors(
    vertex: VertexFactory, params: E3CParams, u: str, v: str, recipe: str
) -> None:
    system = construct_path_system(vertex(params, u), vertex(params, v))
    assert system.recipe == recipe
    assert system.strategy == STRATEGY_RECIPE
    assert validate_path_system(system) == []


def test_recipes_log_reindexing(
    caplog: pytest.LogCaptureFixture, p111: E3CParams, vertex: VertexFactory
) -> None:
    with caplog.at_level(logging.DEBUG, logger="e3c"):
        construct_path_system(vertex(p111, "0000"), vertex(p111, "0112"))
        construct_path_system(vertex(p111, "0000"), vertex(p111, "1111"))
    assert "moved off the target block" in caplog.text
    assert "Pairing 1 with 0" in caplog.text
    assert not [record for record in caplog.records if record.levelno >= logging.WARNING]


def _check_all_pairs(params: E3CParams) -> None:
    worst = 0
    for u, v in itertools.combinations(iter_vertices(params), 2):
        system = construct_path_system(u, v)
        assert validate_path_system(system) == [], str(system.label)
        assert system.strategy != STRATEGY_FLOW_REPAIR, f"{u} -> {v}: {system.label}"
        assert system.width == params.connectivity
        assert system.max_length <= system.label.bound <= params.n + 5
        worst = max(worst, system.max_length)
    assert params.diameter <= worst <= params.n + 5


def test_every_pair_of_smallest_graph() -> None:
    _check_all_pairs(E3CParams(1, 1, 1))


@pytest.mark.slow
@pytest.mark.parametrize("params", [E3CParams(1, 1, 2), E3CParams(1, 2, 2)])
def test_every_pair_of_larger_graphs(params: E3CParams) -> None:
    _check_all_pairs(params)


def test_sampled_pairs_of_wider_graph() -> None:
    params = E3CParams(2, 2, 2)
    rng = random.Random(11)
    for _ in range(150):
        first, second = rng.sample(range(params.vertex_count), 2)
        system = construct_path_system(
            vertex_from_index(params, first), vertex_from_index(params, second)
        )
        assert validate_path_system(system) == []
        assert system.strategy != STRATEGY_FLOW_REPAIR, str(system.label)
        assert system.width == 6


def test_reversed_pair_is_also_sound(p112: E3CParams, vertex: VertexFactory) -> None:
    u, v = vertex(p112, "01202"), vertex(p112, "20111")
    forward = construct_path_system(u, v)
    backward = construct_path_system(v, u)
    assert validate_path_system(forward) == []
    assert validate_path_system(backward) == []
    assert forward.label == backward.label


def test_construct_rejects_unsorted_params(vertex: VertexFactory) -> None:
    params = E3CParams(2, 1, 1)
    with pytest.raises(DomainError):
        construct_path_system(vertex(params, "00000"), vertex(params, "10000"))


def test_construct_rejects_equal_endpoints(p111: E3CParams, vertex: VertexFactory) -> None:
    with pytest.raises(DomainError):
        construct_path_system(vertex(p111, "0000"), vertex(p111, "0000"))


def test_route_pair_normalizes_unsorted_params(vertex: VertexFactory) -> None:
    params = E3CParams(2, 1, 1)
    assert normalize_params(params)[0] == E3CParams(1, 1, 2)
    u, v = vertex(params, "00000"), vertex(params, "10000")
    system = route_pair(u, v)
    assert system.source == u and system.target == v
    assert system.normalization is not None
    assert system.normalization.startswith("E3C(2,1,1) -> E3C(1,1,2)")
    assert validate_path_system(system) == []
    for path in system.paths:
        assert all(x.params == params for x in path)


def test_route_pair_reports_the_original_case(vertex: VertexFactory) -> None:
    params = E3CParams(2, 1, 1)
    u, v = vertex(params, "00000"), vertex(params, "10000")
    system = route_pair(u, v)
    label = system.label
    assert (label.lemma, label.subcase, label.bound, label.expression) == (4, 1, 8, "r+6")
    assert label == classify_pair(u, v)
    assert validate_path_system(system) == []


def test_route_pair_passes_sorted_params_through(p111: E3CParams, vertex: VertexFactory) -> None:
    system = route_pair(vertex(p111, "0000"), vertex(p111, "1112"))
    assert system.normalization is None


def test_validate_reports_tampering(p111: E3CParams, vertex: VertexFactory) -> None:
    system = construct_path_system(vertex(p111, "0000"), vertex(p111, "1110"))
    doubled = dataclasses.replace(system, paths=system.paths + (system.paths[0],))
    problems = validate_path_system(doubled)
    assert any("expected 4 paths" in problem for problem in problems)
    assert any("listed 2 times" in problem for problem in problems)
    assert validate_path_system(system, bound=1)
    assert validate_path_system(system, width=5)


def test_flow_repair_replaces_failing_recipes(
    monkeypatch: pytest.MonkeyPatch,
    caplog: pytest.LogCaptureFixture,
    p111: E3CParams,
    vertex: VertexFactory,
) -> None:
    def broken(*_args: object) -> list:
        raise ConstructionDefect("collision")

    monkeypatch.setattr(router, "_run_recipe", broken)
    with caplog.at_level(logging.WARNING, logger="e3c.router"):
        system = construct_path_system(vertex(p111, "0000"), vertex(p111, "0001"))
    assert system.strategy == STRATEGY_FLOW_REPAIR
    assert validate_path_system(system) == []
    assert "Falling back to flow repair" in caplog.text


def test_impossible_bound_raises_defect(p111: E3CParams, vertex: VertexFactory) -> None:
    table = {**BOUND_TABLE, 8: (("", 1),) * 3}
    with pytest.raises(ConstructionDefect) as info:
        construct_path_system(vertex(p111, "0000"), vertex(p111, "0001"), table)
    assert info.value.label is not None
    assert info.value.label.lemma == 8
    assert info.value.paths


@pytest.mark.parametrize("params", [E3CParams(1, 1, 1), E3CParams(1, 2, 2), E3CParams(2, 2, 3)])
def test_fault_witness_shape(params: E3CParams) -> None:
    witness = lower_bound_witness(params)
    assert len(witness.faults) == 2 * params.r + 1
    assert witness.u not in witness.faults and witness.v not in witness.faults
    assert len(witness.detour) - 1 == params.n + 3
    assert witness.detour[0] == witness.u and witness.detour[-1] == witness.v
    assert not set(witness.detour) & witness.faults
    assert all(edge_class(x, y) is not None for x, y in itertools.pairwise(witness.detour))


def test_fault_witness_vertices(p111: E3CParams) -> None:
    witness = lower_bound_witness(p111)
    assert str(witness.u) == "0002"
    assert str(witness.v) == "1110"
    assert {str(fault) for fault in witness.faults} == {"1002", "2002", "0001"}


@pytest.mark.slow
def test_ten_thousand_sampled_pairs_of_wider_graph() -> None:
    params = E3CParams(2, 2, 2)
    for u, v in iter_pairs(params, MODE_SAMPLED, 42, 10_000):
        system = construct_path_system(u, v)
        assert validate_path_system(system) == []
        assert system.strategy != STRATEGY_FLOW_REPAIR, f"{u} -> {v}: {system.label}"
        assert system.max_length <= params.n + 5
