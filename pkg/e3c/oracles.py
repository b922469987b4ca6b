"""Brute-force ground truth: distances, Menger connectivity and fault experiments.

Everything here runs on the networkx model from :func:`e3c.cube.build_graph` and
never calls into the path recipes, except :func:`wide_upper_from_router` and
:func:`sandwich_verdict`, which measure the router against the oracles.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field, replace
import itertools
import logging
import math
import random
from typing import Any

import networkx as nx
from networkx.algorithms.connectivity import (
    build_auxiliary_node_connectivity,
    local_node_connectivity,
    minimum_node_cut,
    node_disjoint_paths,
)
from networkx.algorithms.flow import build_residual_network, shortest_augmenting_path

from .const import (
    DEFAULT_FAULT_BUDGET,
    DEFAULT_ROUTE_SAMPLE,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_VERTEX_BUDGET,
    MODE_EXHAUSTIVE,
    MODE_SAMPLED,
    MODES,
    VERDICT_FAIL,
    VERDICT_PASS,
)
from .cube import (
    E3CParams,
    E3CVertex,
    GraphCensus,
    build_graph,
    graph_census,
    iter_vertices,
    vertex_from_index,
)
from .exceptions import ConstructionDefect, DomainError, ResourceBudgetExceeded
from .router import PathSystem, construct_path_system, lower_bound_witness

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaultSet:
    """Deleted vertices, stored as indices."""

    faults: frozenset[int] = frozenset()

    @classmethod
    def of(cls, vertices: Iterable[E3CVertex | int]) -> FaultSet:
        """Build a fault set from vertices or indices."""
        return cls(
            frozenset(v.index if isinstance(v, E3CVertex) else int(v) for v in vertices)
        )

    def __contains__(self, vertex: object) -> bool:
        if isinstance(vertex, E3CVertex):
            return vertex.index in self.faults
        return vertex in self.faults

    def __len__(self) -> int:
        return len(self.faults)

    def vertices(self, params: E3CParams) -> list[E3CVertex]:
        """Decode the faults in index order."""
        return [vertex_from_index(params, index) for index in sorted(self.faults)]


@dataclass(frozen=True)
class Connectivity:
    """Menger count of a pair together with one witnessing path set."""

    count: int
    paths: tuple[tuple[Any, ...], ...]


@dataclass(frozen=True)
class ConnectivitySweep:
    """Smallest pair connectivity found and where."""

    value: int
    pair: tuple[E3CVertex, E3CVertex]
    paths: tuple[tuple[E3CVertex, ...], ...]
    pairs_checked: int
    mode: str
    seed: int | None


@dataclass(frozen=True)
class FaultMaximum:
    """Largest fault distance observed; ``value`` is None when a fault set disconnects."""

    value: int | None
    pair: tuple[E3CVertex, E3CVertex]
    faults: FaultSet
    f: int
    mode: str
    seed: int | None
    runs: int

    @property
    def lower_bound_only(self) -> bool:
        """True when sampling may have missed the true maximum."""
        return self.mode == MODE_SAMPLED


@dataclass(frozen=True)
class RouterSweep:
    """Longest constructed path over a set of pairs."""

    value: int
    pair: tuple[E3CVertex, E3CVertex]
    pairs_checked: int
    strategies: dict[str, int]
    mode: str
    seed: int | None


@dataclass(frozen=True)
class MetricReport:
    """Graph-level quantities, each extremum with its witness."""

    params: E3CParams
    census: GraphCensus
    degree_histogram: dict[int, int]
    min_degree: int
    diameter: int
    diameter_pair: tuple[E3CVertex, E3CVertex]
    connectivity: int
    connectivity_cut: tuple[E3CVertex, ...]
    seed: int
    mode: str
    fault: FaultMaximum | None = None
    wide: RouterSweep | None = None


@dataclass(frozen=True)
class SandwichReport:
    """Lower witness, observed fault maxima and router upper bound side by side."""

    params: E3CParams
    lower: int
    upper: int
    witness_distance: int | None
    fault: FaultMaximum
    wide: RouterSweep
    seed: int
    mode: str
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        """PASS when n+3 <= witness <= observed <= n+5 and the router stays within n+5."""
        return VERDICT_FAIL if self.notes else VERDICT_PASS


def _exceeds(candidate: int | None, best: int | None) -> bool:
    """Order distances with None (disconnected) above every integer."""
    if best is None:
        return False
    return candidate is None or candidate > best


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise DomainError(f"Unknown mode {mode!r}, expected one of {MODES}")


def bfs_distance(
    params: E3CParams,
    u: E3CVertex,
    v: E3CVertex,
    faults: FaultSet | None = None,
) -> int | None:
    """Return the distance from ``u`` to ``v`` after deleting ``faults``.

    Returns:
        The number of edges on a shortest path, or None when ``v`` is unreachable

    Raises:
        DomainError: If an endpoint is a fault
    """
    faults = faults or FaultSet()
    if u in faults or v in faults:
        raise DomainError(f"Endpoint of ({u}, {v}) lies in the fault set")
    graph = build_graph(params)
    view = nx.restricted_view(graph, faults.faults, []) if faults.faults else graph
    try:
        return nx.shortest_path_length(view, u.index, v.index)
    except nx.NetworkXNoPath:
        return None


def _flow_count(
    graph: nx.Graph, s: Any, t: Any, auxiliary: nx.DiGraph, residual: nx.DiGraph
) -> int:
    return local_node_connectivity(
        graph,
        s,
        t,
        flow_func=shortest_augmenting_path,
        auxiliary=auxiliary,
        residual=residual,
    )


def local_connectivity(graph: nx.Graph, s: Any, t: Any) -> Connectivity:
    """Count internally disjoint ``s``-``t`` paths in any graph by vertex-split max-flow.

    An edge ``st`` counts as one path; the rest are found with that edge removed.
    """
    direct: tuple[tuple[Any, ...], ...] = ()
    if graph.has_edge(s, t):
        graph = nx.Graph(graph)
        graph.remove_edge(s, t)
        direct = ((s, t),)
    auxiliary = build_auxiliary_node_connectivity(graph)
    residual = build_residual_network(auxiliary, "capacity")
    count = _flow_count(graph, s, t, auxiliary, residual)
    paths = node_disjoint_paths(
        graph, s, t, flow_func=shortest_augmenting_path, auxiliary=auxiliary, residual=residual
    )
    return Connectivity(
        count=count + len(direct), paths=tuple(tuple(path) for path in paths) + direct
    )


def pair_connectivity(params: E3CParams, u: E3CVertex, v: E3CVertex) -> Connectivity:
    """Return the Menger count of a pair and a witnessing set of vertex paths.

    Raises:
        DomainError: If ``u == v``
    """
    if u == v:
        raise DomainError(f"Connectivity needs distinct endpoints, got {u} twice")
    witness = local_connectivity(build_graph(params), u.index, v.index)
    paths = tuple(tuple(vertex_from_index(params, i) for i in path) for path in witness.paths)
    return Connectivity(count=witness.count, paths=paths)


def _all_pairs(params: E3CParams) -> Iterator[tuple[E3CVertex, E3CVertex]]:
    return itertools.combinations(iter_vertices(params), 2)


def _random_pairs(
    params: E3CParams, rng: random.Random, count: int
) -> Iterator[tuple[E3CVertex, E3CVertex]]:
    for _ in range(count):
        first, second = rng.sample(range(params.vertex_count), 2)
        yield vertex_from_index(params, first), vertex_from_index(params, second)


def iter_pairs(
    params: E3CParams, mode: str, seed: int, trials: int
) -> Iterator[tuple[E3CVertex, E3CVertex]]:
    """Yield every unordered pair, or ``trials`` seeded random pairs in sampled mode."""
    _check_mode(mode)
    if mode == MODE_EXHAUSTIVE:
        return _all_pairs(params)
    return _random_pairs(params, random.Random(seed), trials)


def min_pair_connectivity(
    params: E3CParams,
    mode: str = MODE_EXHAUSTIVE,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
) -> ConnectivitySweep:
    """Return the smallest pair connectivity over all or over sampled pairs."""
    graph = build_graph(params)
    auxiliary = build_auxiliary_node_connectivity(graph)
    residual = build_residual_network(auxiliary, "capacity")
    best: tuple[int, E3CVertex, E3CVertex] | None = None
    checked = 0
    for u, v in iter_pairs(params, mode, seed, trials):
        if graph.has_edge(u.index, v.index):
            count = local_connectivity(graph, u.index, v.index).count
        else:
            count = _flow_count(graph, u.index, v.index, auxiliary, residual)
        checked += 1
        if best is None or count < best[0]:
            best = (count, u, v)
    if best is None:
        raise DomainError("No pairs to check")
    count, u, v = best
    _LOGGER.info("Minimum pair connectivity of %s is %d at (%s, %s)", params, count, u, v)
    return ConnectivitySweep(
        value=count,
        pair=(u, v),
        paths=pair_connectivity(params, u, v).paths,
        pairs_checked=checked,
        mode=mode,
        seed=seed if mode == MODE_SAMPLED else None,
    )


def _fault_sets(
    candidates: list[int],
    f: int,
    mode: str,
    rng: random.Random,
    trials: int,
    budget: int,
) -> Iterator[tuple[int, ...]]:
    if f == 0:
        yield ()
        return
    if mode == MODE_EXHAUSTIVE:
        required = math.comb(len(candidates), f)
        if required > budget:
            raise ResourceBudgetExceeded(
                f"Exhaustive enumeration needs {required} fault sets, budget is {budget}; "
                "use sampled mode",
                required,
                budget,
            )
        yield from itertools.combinations(candidates, f)
        return
    for _ in range(trials):
        yield tuple(rng.sample(candidates, f))


def _check_fault_size(params: E3CParams, f: int) -> None:
    if not 0 <= f <= params.connectivity - 1:
        raise DomainError(
            f"Fault size {f} outside [0, {params.connectivity - 1}] for {params}"
        )


def fault_distance_max(
    params: E3CParams,
    u: E3CVertex,
    v: E3CVertex,
    f: int,
    mode: str = MODE_EXHAUSTIVE,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_TRIALS,
    budget: int = DEFAULT_FAULT_BUDGET,
) -> FaultMaximum:
    """Return the largest ``u``-``v`` distance over fault sets of size ``f``.

    Args:
        params: Graph parameters
        u: Source vertex
        v: Target vertex
        f: Number of faults, at most ``2 * min(r,s,t) + 1``
        mode: Enumerate every fault set or draw ``trials`` of them
        seed: Seed of the sampler
        trials: Number of sampled fault sets
        budget: Largest number of fault sets exhaustive mode may enumerate

    Returns:
        The maximum with its witness; sampled results are lower bounds only

    Raises:
        DomainError: If ``u == v`` or ``f`` is out of range
        ResourceBudgetExceeded: If exhaustive mode would enumerate more than ``budget`` sets
    """
    _check_mode(mode)
    _check_fault_size(params, f)
    if u == v:
        raise DomainError(f"Fault distance needs distinct endpoints, got {u} twice")
    graph = build_graph(params)
    source, target = u.index, v.index
    candidates = [node for node in graph.nodes if node not in (source, target)]
    rng = random.Random(seed)

    best: int | None = -1
    witness: tuple[int, ...] = ()
    runs = 0
    for faults in _fault_sets(candidates, f, mode, rng, trials, budget):
        runs += 1
        view = nx.restricted_view(graph, faults, []) if faults else graph
        try:
            distance: int | None = nx.shortest_path_length(view, source, target)
        except nx.NetworkXNoPath:
            distance = None
        if best == -1 or _exceeds(distance, best):
            best, witness = distance, faults
        if best is None:
            break
    _LOGGER.debug("Fault distance of (%s, %s) with f=%d over %d runs: %s", u, v, f, runs, best)
    return FaultMaximum(
        value=best,
        pair=(u, v),
        faults=FaultSet.of(witness),
        f=f,
        mode=mode,
        seed=seed if mode == MODE_SAMPLED else None,
        runs=runs,
    )


def fault_diameter_sample(
    params: E3CParams,
    f: int,
    seed: int = DEFAULT_SEED,
    pairs: int = 100,
    trials: int = 10,
) -> FaultMaximum:
    """Sample ``pairs`` random pairs and ``trials`` fault sets each; a lower bound."""
    _check_fault_size(params, f)
    rng = random.Random(seed)
    best: FaultMaximum | None = None
    runs = 0
    for u, v in _random_pairs(params, rng, pairs):
        result = fault_distance_max(
            params, u, v, f, MODE_SAMPLED, seed=rng.randrange(2**32), trials=trials
        )
        runs += result.runs
        if best is None or _exceeds(result.value, best.value):
            best = result
    if best is None:
        raise DomainError("Fault diameter sampling needs at least one pair")
    return FaultMaximum(
        value=best.value,
        pair=best.pair,
        faults=best.faults,
        f=f,
        mode=MODE_SAMPLED,
        seed=seed,
        runs=runs,
    )


def wide_upper_from_router(
    params: E3CParams,
    mode: str = MODE_EXHAUSTIVE,
    seed: int = DEFAULT_SEED,
    trials: int = DEFAULT_ROUTE_SAMPLE,
) -> RouterSweep:
    """Return the longest path of the constructed systems, maximized over pairs.

    This bounds the (2r+2)-wide diameter from above.

    Raises:
        DomainError: If the parameters are unsorted
        ConstructionDefect: Propagated from the router
    """
    best: tuple[int, E3CVertex, E3CVertex] | None = None
    strategies: Counter[str] = Counter()
    checked = 0
    for u, v in iter_pairs(params, mode, seed, trials):
        system = construct_path_system(u, v)
        strategies[system.strategy] += 1
        checked += 1
        if best is None or system.max_length > best[0]:
            best = (system.max_length, u, v)
    if best is None:
        raise DomainError("No pairs to route")
    value, u, v = best
    _LOGGER.info(
        "Router upper bound on %s: %d at (%s, %s) over %d pairs", params, value, u, v, checked
    )
    return RouterSweep(
        value=value,
        pair=(u, v),
        pairs_checked=checked,
        strategies=dict(strategies),
        mode=mode,
        seed=seed if mode == MODE_SAMPLED else None,
    )


def cross_check_system(system: PathSystem) -> list[str]:
    """Compare a constructed system with the flow and BFS oracles.

    Returns:
        Disagreements, empty when the oracles confirm the system
    """
    params = system.source.params
    problems = []
    count = pair_connectivity(params, system.source, system.target).count
    if count < system.width:
        problems.append(f"max-flow finds {count} disjoint paths, router built {system.width}")
    distance = bfs_distance(params, system.source, system.target)
    if distance is None or distance > min(system.lengths):
        problems.append(f"BFS distance {distance} exceeds the shortest constructed path")
    return problems


def _diameter(graph: nx.Graph) -> tuple[int, int, int]:
    """Return the diameter and one pair that realizes it."""
    best = (-1, 0, 0)
    for source in graph.nodes:
        lengths = nx.single_source_shortest_path_length(graph, source)
        if len(lengths) != graph.number_of_nodes():
            raise ConstructionDefect(f"Graph is disconnected at vertex {source}")
        target, distance = max(lengths.items(), key=lambda item: item[1])
        if distance > best[0]:
            best = (distance, source, target)
    return best


def graph_metrics(
    params: E3CParams,
    trials: int = 0,
    seed: int = DEFAULT_SEED,
    budget: int = DEFAULT_VERTEX_BUDGET,
    route_pairs: int = 0,
) -> MetricReport:
    """Compute census, degrees, diameter and connectivity of E3C(r,s,t).

    Args:
        params: Graph parameters
        trials: Sampled (pair, fault set) draws with ``2r+1`` faults; 0 skips fault sampling
        seed: Seed for every sampler
        budget: Largest vertex count to analyse
        route_pairs: Sampled pairs for the router upper bound; 0 skips it

    Raises:
        ResourceBudgetExceeded: If the graph has more than ``budget`` vertices
        ConstructionDefect: If the census disagrees with the degree sum
    """
    if params.vertex_count > budget:
        raise ResourceBudgetExceeded(
            f"{params} has {params.vertex_count} vertices, budget is {budget}",
            params.vertex_count,
            budget,
        )
    census = graph_census(params)
    graph = build_graph(params)
    degrees = dict(graph.degree())
    if sum(degrees.values()) != 2 * census.edges:
        raise ConstructionDefect(
            f"Degree sum {sum(degrees.values())} disagrees with {census.edges} edges"
        )
    histogram = dict(sorted(Counter(degrees.values()).items()))
    diameter, first, second = _diameter(graph)
    cut = minimum_node_cut(graph, flow_func=shortest_augmenting_path)

    fault = None
    if trials > 0:
        fault = fault_diameter_sample(
            params, params.connectivity - 1, seed=seed, pairs=trials, trials=1
        )
    wide = None
    if route_pairs > 0 and params.is_sorted:
        wide = wide_upper_from_router(params, MODE_SAMPLED, seed, route_pairs)

    _LOGGER.info("Metrics of %s: diameter %d, connectivity %d", params, diameter, len(cut))
    return MetricReport(
        params=params,
        census=census,
        degree_histogram=histogram,
        min_degree=min(histogram),
        diameter=diameter,
        diameter_pair=(vertex_from_index(params, first), vertex_from_index(params, second)),
        connectivity=len(cut),
        connectivity_cut=tuple(vertex_from_index(params, index) for index in sorted(cut)),
        seed=seed,
        mode=MODE_EXHAUSTIVE if trials == 0 else MODE_SAMPLED,
        fault=fault,
        wide=wide,
    )


def sandwich_verdict(
    params: E3CParams,
    mode: str = MODE_EXHAUSTIVE,
    seed: int = DEFAULT_SEED,
    pairs: int = 100,
    trials: int = DEFAULT_TRIALS,
    budget: int = DEFAULT_FAULT_BUDGET,
    f: int | None = None,
) -> SandwichReport:
    """Place the witness distance, fault maxima and router bound between n+3 and n+5.

    The witness pair is examined with ``f`` faults (``2r+1`` by default) in ``mode``;
    ``pairs`` further random pairs share ``trials`` sampled fault sets. The router
    bound is taken over all pairs in exhaustive mode and over ``trials`` random pairs
    otherwise. With fewer than ``2r+1`` faults only the upper end is checked.

    Raises:
        DomainError: If the parameters are unsorted or ``f`` is out of range
        ResourceBudgetExceeded: If exhaustive enumeration of the witness pair is too large
    """
    _check_mode(mode)
    lower, upper = params.n + 3, params.n + 5
    full = params.connectivity - 1
    f = full if f is None else f
    witness = lower_bound_witness(params)
    witness_distance = bfs_distance(params, witness.u, witness.v, FaultSet.of(witness.faults))

    fault = fault_distance_max(
        params, witness.u, witness.v, f, mode, seed=seed, trials=trials, budget=budget
    )
    if f == full and _exceeds(witness_distance, fault.value):
        fault = replace(
            fault, value=witness_distance, faults=FaultSet.of(witness.faults), runs=fault.runs + 1
        )
    if pairs > 0:
        per_pair = max(1, trials // pairs)
        sampled = fault_diameter_sample(params, f, seed=seed, pairs=pairs, trials=per_pair)
        if _exceeds(sampled.value, fault.value):
            fault = sampled
    wide = wide_upper_from_router(params, mode, seed, trials)

    notes = []
    if witness_distance is None or witness_distance < lower:
        notes.append(f"witness distance {witness_distance} below n+3 = {lower}")
    floor = witness_distance if f == full and witness_distance is not None else 0
    if fault.value is None:
        notes.append(f"{f} faults disconnected {fault.pair[0]} from {fault.pair[1]}")
    elif not floor <= fault.value <= upper:
        notes.append(f"observed fault maximum {fault.value} outside [{floor}, {upper}]")
    if wide.value > upper:
        notes.append(f"router upper bound {wide.value} exceeds n+5 = {upper}")
    for note in notes:
        _LOGGER.error("Sandwich check on %s failed: %s", params, note)
    return SandwichReport(
        params=params,
        lower=lower,
        upper=upper,
        witness_distance=witness_distance,
        fault=fault,
        wide=wide,
        seed=seed,
        mode=mode,
        notes=notes,
    )
