"""Case classification and construction of 2r+2 internally disjoint paths.

A distinct pair ``u = ABCd``, ``v = A'B'C'd'`` of E3C(r,s,t) falls into one of fifteen
cases by which blocks differ and whether ``d = d'``. Each case carries a length bound.
The fifteen cases and their subcases collapse to eleven orbits under block
permutations and endpoint swap; :mod:`e3c.recipes` holds one recipe per orbit and
this module transports every other pair onto its orbit representative.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field, replace
import itertools
import logging

import networkx as nx

from .const import (
    BOUND_TABLE,
    STRATEGY_FLOW_REPAIR,
    STRATEGY_RECIPE,
    STRATEGY_VARIANT,
    SUBCASE_BY_DPAIR,
)
from .cube import (
    BlockIsomorphism,
    E3CParams,
    E3CVertex,
    Role,
    block_isomorphism,
    build_graph,
    edge_class,
    make_vertex,
    vertex_from_index,
)
from .exceptions import ConstructionDefect, DomainError
from .recipes import RECIPES, PathBuilder, Recipe
from .trits import TritString

_LOGGER = logging.getLogger(__name__)

BoundTable = Mapping[int, Sequence[tuple[str, int]]]

_ROLE_BY_LETTER = {"r": Role.A, "s": Role.B, "t": Role.C}


@dataclass(frozen=True)
class CaseLabel:
    """Classification of a vertex pair.

    ``lemma`` is the case index 1-15 and ``subcase`` is 1-3: the shared d-label plus
    one when ``d = d'``, otherwise the position of the ordered pair ``(d, d')``.
    """

    eq_a: bool
    eq_b: bool
    eq_c: bool
    dpair: tuple[int, int]
    lemma: int
    subcase: int
    bound: int
    expression: str

    @property
    def same_d(self) -> bool:
        """True when both endpoints carry the same d-label."""
        return self.dpair[0] == self.dpair[1]

    def __str__(self) -> str:
        return f"case {self.lemma}.{self.subcase} (bound {self.expression} = {self.bound})"


@dataclass(frozen=True)
class PathSystem:
    """Internally disjoint paths between two vertices."""

    source: E3CVertex
    target: E3CVertex
    label: CaseLabel
    paths: tuple[tuple[E3CVertex, ...], ...]
    strategy: str
    recipe: str
    transport: str
    normalization: str | None = None

    @property
    def width(self) -> int:
        """Number of paths."""
        return len(self.paths)

    @property
    def lengths(self) -> list[int]:
        """Edge counts of the paths."""
        return [len(path) - 1 for path in self.paths]

    @property
    def max_length(self) -> int:
        """Length of the longest path."""
        return max(self.lengths)


@dataclass(frozen=True)
class FaultWitness:
    """A pair and a fault set of size 2r+1 that pushes their distance to n+3."""

    u: E3CVertex
    v: E3CVertex
    faults: frozenset[E3CVertex]
    detour: tuple[E3CVertex, ...] = field(default=())


@dataclass(frozen=True)
class _Plan:
    isomorphism: BlockIsomorphism
    swapped: bool
    name: str
    recipe: Recipe

    def describe(self) -> str:
        mapping = "identity" if self.isomorphism.is_identity else self.isomorphism.describe()
        return f"{mapping}{', swapped' if self.swapped else ''}"


def _differing_roles(u: E3CVertex, v: E3CVertex) -> frozenset[Role]:
    return frozenset(role for role in Role if u.block(role) != v.block(role))


def _bound_terms(bound_table: BoundTable, lemma: int, subcase: int) -> tuple[str, int]:
    try:
        return bound_table[lemma][subcase - 1]
    except (KeyError, IndexError) as err:
        raise DomainError(f"Bound table has no entry for case {lemma}.{subcase}: {err}") from err


def _expression(blocks: str, offset: int) -> str:
    return "+".join([*blocks, str(offset)]) if blocks else str(offset)


def case_bound(label: CaseLabel, params: E3CParams, bound_table: BoundTable = BOUND_TABLE) -> int:
    """Evaluate the length bound of a case for the given block lengths.

    Args:
        label: Classified case
        params: Block lengths to substitute for r, s and t
        bound_table: Table of ``(blocks, offset)`` terms per case and subcase

    Returns:
        ``offset`` plus the lengths of the named blocks
    """
    blocks, offset = _bound_terms(bound_table, label.lemma, label.subcase)
    return offset + sum(params.length(_ROLE_BY_LETTER[letter]) for letter in blocks)


def classify_pair(
    u: E3CVertex, v: E3CVertex, bound_table: BoundTable = BOUND_TABLE
) -> CaseLabel:
    """Classify a distinct vertex pair into its case and subcase.

    Args:
        u: First vertex
        v: Second vertex
        bound_table: Table the bound is read from

    Returns:
        The case label; ``dpair`` is ordered so that the smaller d-label comes first

    Raises:
        DomainError: If ``u == v`` or the vertices belong to different graphs
    """
    if u.params != v.params:
        raise DomainError(f"{u} and {v} belong to different graphs")
    if u == v:
        raise DomainError(f"Cannot classify the pair ({u}, {u}): endpoints coincide")
    eq_a, eq_b, eq_c = u.a == v.a, u.b == v.b, u.c == v.c
    code = 4 * (not eq_a) + 2 * (not eq_b) + (not eq_c)
    dpair = (min(u.d, v.d), max(u.d, v.d))
    if u.d == v.d:
        lemma, subcase = code, u.d + 1
    else:
        lemma, subcase = 8 + code, SUBCASE_BY_DPAIR[dpair]
    blocks, offset = _bound_terms(bound_table, lemma, subcase)
    label = CaseLabel(
        eq_a=eq_a,
        eq_b=eq_b,
        eq_c=eq_c,
        dpair=dpair,
        lemma=lemma,
        subcase=subcase,
        bound=0,
        expression=_expression(blocks, offset),
    )
    return replace(label, bound=case_bound(label, u.params, bound_table))


def _violations(
    source: E3CVertex,
    target: E3CVertex,
    paths: Sequence[Sequence[E3CVertex]],
    width: int,
    bound: int,
) -> list[str]:
    problems = []
    if len(paths) != width:
        problems.append(f"expected {width} paths, got {len(paths)}")
    owner: dict[E3CVertex, int] = {}
    for number, path in enumerate(paths):
        if not path or path[0] != source or path[-1] != target:
            problems.append(f"path {number} does not run from {source} to {target}")
            continue
        if len(set(path)) != len(path):
            problems.append(f"path {number} repeats a vertex")
        for x, y in itertools.pairwise(path):
            if edge_class(x, y) is None:
                problems.append(f"path {number}: {x} and {y} are not adjacent")
        if len(path) - 1 > bound:
            problems.append(f"path {number} has length {len(path) - 1} > {bound}")
        for vertex in path[1:-1]:
            if vertex in owner and owner[vertex] != number:
                problems.append(f"vertex {vertex} shared by paths {owner[vertex]} and {number}")
            owner.setdefault(vertex, number)
    repeats = Counter(tuple(path) for path in paths)
    for path, count in repeats.items():
        if count > 1:
            problems.append(f"path {'->'.join(str(x) for x in path)} listed {count} times")
    return problems


def validate_path_system(
    system: PathSystem, bound: int | None = None, width: int | None = None
) -> list[str]:
    """Check a path system against its contract.

    Args:
        system: System to check
        bound: Length bound; the case bound of the system's label if omitted
        width: Required number of paths; the graph's connectivity if omitted

    Returns:
        Human readable violations, empty when the system is sound
    """
    return _violations(
        system.source,
        system.target,
        system.paths,
        system.source.params.connectivity if width is None else width,
        system.label.bound if bound is None else bound,
    )


def _plan(u: E3CVertex, v: E3CVertex) -> _Plan:
    """Find the role permutation, and direction, that maps the pair onto a recipe."""
    differing = _differing_roles(u, v)
    for perm in itertools.permutations(range(3)):
        for swapped in (False, True):
            x, y = (v, u) if swapped else (u, v)
            key = (frozenset(Role(perm[role]) for role in differing), perm[x.d], perm[y.d])
            if key in RECIPES:
                name, recipe = RECIPES[key]
                return _Plan(block_isomorphism(u.params, perm), swapped, name, recipe)
    raise ConstructionDefect(f"No recipe covers the pair {u} -> {v}")


def _run_recipe(
    plan: _Plan, u: E3CVertex, v: E3CVertex, variant: int
) -> list[list[E3CVertex]]:
    """Build in the image graph and pull the paths back to the pair's graph."""
    x, y = (v, u) if plan.swapped else (u, v)
    builder = PathBuilder(plan.isomorphism(x), plan.isomorphism(y), variant)
    inverse = plan.isomorphism.inverse()
    paths = [inverse.map_path(path) for path in plan.recipe(builder)]
    if plan.swapped:
        paths = [path[::-1] for path in paths]
    return paths


def _node_in(index: int) -> tuple[int, int]:
    return (index, 0)


def _node_out(index: int) -> tuple[int, int]:
    return (index, 1)


def _flow_repair(u: E3CVertex, v: E3CVertex, width: int) -> list[list[E3CVertex]]:
    """Route ``width`` disjoint paths of least total length by min-cost flow.

    Every vertex other than the endpoints is split into an in and an out node joined
    by a unit arc, so unit flow paths are internally disjoint.

    Raises:
        ConstructionDefect: If the graph does not carry ``width`` disjoint paths
    """
    graph = build_graph(u.params)
    source, sink = u.index, v.index
    network = nx.DiGraph()
    for node in graph.nodes:
        if node not in (source, sink):
            network.add_edge(_node_in(node), _node_out(node), capacity=1, weight=0)
    for x, y in graph.edges:
        for tail, head in ((x, y), (y, x)):
            if head == source or tail == sink:
                continue
            network.add_edge(_node_out(tail), _node_in(head), capacity=1, weight=1)
    network.nodes[_node_out(source)]["demand"] = -width
    network.nodes[_node_in(sink)]["demand"] = width
    try:
        flow = nx.min_cost_flow(network)
    except nx.NetworkXUnfeasible as err:
        raise ConstructionDefect(f"Flow repair found fewer than {width} paths: {err}") from err

    paths = []
    for first, amount in flow[_node_out(source)].items():
        if amount <= 0:
            continue
        indices = [source, first[0]]
        while indices[-1] != sink:
            out_node = _node_out(indices[-1])
            head = next(node for node, value in flow[out_node].items() if value > 0)
            flow[out_node][head] -= 1
            indices.append(head[0])
        paths.append([vertex_from_index(u.params, index) for index in indices])
    return paths


def construct_path_system(
    u: E3CVertex, v: E3CVertex, bound_table: BoundTable | None = None
) -> PathSystem:
    """Construct 2r+2 internally disjoint ``u``-``v`` paths within the case bound.

    The pair is mapped onto the recipe of its orbit. Should the recipe ever produce
    colliding branches the perturbation indices are rotated, and when every rotation
    fails a min-cost disjoint flow is used as a last resort.

    Args:
        u: Source vertex
        v: Target vertex
        bound_table: Table the case bound is read from; the built-in one if omitted

    Returns:
        A validated path system

    Raises:
        DomainError: If ``u == v``, the graphs differ, or the parameters are unsorted
        ConstructionDefect: If no strategy meets the contract
    """
    params = u.params
    if v.params != params:
        raise DomainError(f"{u} and {v} belong to different graphs")
    if not params.is_sorted:
        raise DomainError(f"{params} is unsorted; route through normalize_params first")
    table = BOUND_TABLE if bound_table is None else bound_table
    label = classify_pair(u, v, table)
    width = params.connectivity
    plan = _plan(u, v)
    _LOGGER.debug(
        "Routing %s -> %s as %s via recipe %s (%s)", u, v, label, plan.name, plan.describe()
    )

    variants = max(2 * max(params.as_tuple()), 2)
    problems: list[str] = []
    for variant in range(variants):
        try:
            paths = _run_recipe(plan, u, v, variant)
        except ConstructionDefect as err:
            problems = [str(err)]
        else:
            problems = _violations(u, v, paths, width, label.bound)
            if not problems:
                strategy = STRATEGY_RECIPE if variant == 0 else f"{STRATEGY_VARIANT}-{variant}"
                return PathSystem(
                    source=u,
                    target=v,
                    label=label,
                    paths=tuple(tuple(path) for path in paths),
                    strategy=strategy,
                    recipe=plan.name,
                    transport=plan.describe(),
                )
        if variant == 0:
            _LOGGER.warning(
                "Recipe %s collided on %s -> %s (%s): %s", plan.name, u, v, label, problems[0]
            )
        else:
            _LOGGER.debug("Variant %d of recipe %s failed: %s", variant, plan.name, problems[0])

    _LOGGER.warning("Falling back to flow repair for %s -> %s (%s)", u, v, label)
    paths = _flow_repair(u, v, width)
    problems = _violations(u, v, paths, width, label.bound)
    if problems:
        raise ConstructionDefect(
            f"No construction meets {label} for {u} -> {v}: {problems[0]}", label, paths
        )
    return PathSystem(
        source=u,
        target=v,
        label=label,
        paths=tuple(tuple(path) for path in paths),
        strategy=STRATEGY_FLOW_REPAIR,
        recipe=plan.name,
        transport=plan.describe(),
    )


def normalize_params(params: E3CParams) -> tuple[E3CParams, BlockIsomorphism]:
    """Return sorted parameters and the isomorphism that reaches them."""
    for perm in itertools.permutations(range(3)):
        isomorphism = block_isomorphism(params, perm)
        if isomorphism.target.is_sorted:
            return isomorphism.target, isomorphism
    raise DomainError(f"No role permutation sorts {params}")


def route_pair(
    u: E3CVertex, v: E3CVertex, bound_table: BoundTable | None = None
) -> PathSystem:
    """Construct a path system for any parameter order.

    Unsorted graphs are mapped onto their sorted isomorph, routed there and pulled
    back; the pulled-back system carries the case label of the original pair and is
    validated against its bound.

    Raises:
        DomainError: If ``u == v`` or the graphs differ
        ConstructionDefect: If the construction or the pulled-back system is unsound
    """
    if u.params.is_sorted:
        return construct_path_system(u, v, bound_table)
    if v.params != u.params:
        raise DomainError(f"{u} and {v} belong to different graphs")
    label = classify_pair(u, v, BOUND_TABLE if bound_table is None else bound_table)
    _, isomorphism = normalize_params(u.params)
    image = construct_path_system(isomorphism(u), isomorphism(v), bound_table)
    inverse = isomorphism.inverse()
    paths = tuple(tuple(inverse.map_path(path)) for path in image.paths)
    problems = _violations(u, v, paths, u.params.connectivity, label.bound)
    if problems:
        raise ConstructionDefect(
            f"Pulled-back system for {u} -> {v} is unsound: {problems[0]}", label, paths
        )
    _LOGGER.info(
        "Normalized %s onto %s (%s)", u.params, isomorphism.target, isomorphism.describe()
    )
    return PathSystem(
        source=u,
        target=v,
        label=label,
        paths=paths,
        strategy=image.strategy,
        recipe=image.recipe,
        transport=image.transport,
        normalization=f"{u.params} -> {isomorphism.target} ({isomorphism.describe()})",
    )


def lower_bound_witness(params: E3CParams) -> FaultWitness:
    """Return the pair and fault set that force a fault distance of n+3.

    ``u = 0^r 0^s 0^t 2`` loses its 2r neighbors inside its R-subcube and its
    external neighbor with d = 1, so every surviving path leaves through
    ``0^r 0^s 0^t 0`` and must cross all three blocks to reach ``v = 1^r 1^s 1^t 0``.
    """
    zero_a, zero_b, zero_c = (TritString.zeros(length) for length in params.as_tuple())
    one_a, one_b, one_c = (TritString.filled(1, length) for length in params.as_tuple())
    u = make_vertex(params, zero_a, zero_b, zero_c, 2)
    v = make_vertex(params, one_a, one_b, one_c, 0)
    faults = {
        u.with_block(Role.A, zero_a.shifted(position, step))
        for position in range(params.r)
        for step in (1, 2)
    }
    faults.add(u.with_d(1))

    builder = PathBuilder(u, v)
    detour = builder.walk(
        u,
        u.with_d(0),
        make_vertex(params, zero_a, zero_b, one_c, 0),
        make_vertex(params, zero_a, zero_b, one_c, 1),
        make_vertex(params, zero_a, one_b, one_c, 1),
        make_vertex(params, zero_a, one_b, one_c, 2),
        make_vertex(params, one_a, one_b, one_c, 2),
        v,
    )
    return FaultWitness(u=u, v=v, faults=frozenset(faults), detour=tuple(detour))
