"""Edge-list, DOT and JSON renderings of graphs, path systems and reports."""
from __future__ import annotations

from collections.abc import Iterator
import json
from typing import Any

from .const import DOT_COLORS, UNREACHABLE, VERSION
from .cube import E3CParams, E3CVertex, GraphCensus, iter_edges
from .oracles import (
    ConnectivitySweep,
    FaultMaximum,
    MetricReport,
    RouterSweep,
    SandwichReport,
)
from .qnk import qnk_graph
from .router import CaseLabel, FaultWitness, PathSystem


def edge_list_lines(params: E3CParams) -> Iterator[str]:
    """Yield ``"<u> <v> <class>"`` once per edge, smaller endpoint first."""
    for u, v, klass in iter_edges(params):
        yield f"{u} {v} {klass.value}"


def dot_lines(params: E3CParams) -> Iterator[str]:
    """Yield an undirected DOT document with edges coloured by class."""
    yield f'graph "{params}" {{'
    yield "  node [shape=circle, fontsize=8];"
    for u, v, klass in iter_edges(params):
        yield f'  "{u}" -- "{v}" [color={DOT_COLORS[klass.value]}, label="{klass.value}"];'
    yield "}"


def _qnk_edges(n: int, k: int) -> list[tuple[str, str, str]]:
    edges = []
    for x, y in qnk_graph(n, k).edges:
        first, second = sorted((x, y), key=lambda vertex: vertex.to_int())
        position = next(p for p in range(n) if first.digit(p) != second.digit(p))
        edges.append((str(first), str(second), f"D{position}"))
    return sorted(edges)


def qnk_edge_list_lines(n: int, k: int) -> Iterator[str]:
    """Yield the edges of Q_n^k labelled by the dimension they change."""
    for first, second, label in _qnk_edges(n, k):
        yield f"{first} {second} {label}"


def qnk_dot_lines(n: int, k: int) -> Iterator[str]:
    """Yield Q_n^k as an undirected DOT document."""
    yield f'graph "Q_{n}^{k}" {{'
    yield "  node [shape=circle, fontsize=8];"
    for first, second, label in _qnk_edges(n, k):
        yield f'  "{first}" -- "{second}" [label="{label}"];'
    yield "}"


def _distance(value: int | None) -> int | str:
    return UNREACHABLE if value is None else value


def _pair(pair: tuple[E3CVertex, E3CVertex]) -> list[str]:
    return [str(pair[0]), str(pair[1])]


def census_to_dict(census: GraphCensus) -> dict[str, Any]:
    """Serialize a census."""
    return {
        "vertices": census.vertices,
        "edges": census.edges,
        "by_class": {klass.value: count for klass, count in census.by_class.items()},
    }


def label_to_dict(label: CaseLabel) -> dict[str, Any]:
    """Serialize a case label."""
    return {
        "lemma": label.lemma,
        "subcase": label.subcase,
        "eq": {"A": label.eq_a, "B": label.eq_b, "C": label.eq_c},
        "dpair": list(label.dpair),
        "bound": label.bound,
        "expression": label.expression,
    }


def path_system_to_dict(system: PathSystem) -> dict[str, Any]:
    """Serialize a path system with flat-string vertices."""
    return {
        "source": str(system.source),
        "target": str(system.target),
        "case": label_to_dict(system.label),
        "bound": system.label.bound,
        "width": system.width,
        "max_length": system.max_length,
        "strategy": system.strategy,
        "recipe": system.recipe,
        "transport": system.transport,
        "normalization": system.normalization,
        "paths": [[str(vertex) for vertex in path] for path in system.paths],
    }


def witness_to_dict(witness: FaultWitness) -> dict[str, Any]:
    """Serialize a fault witness."""
    return {
        "u": str(witness.u),
        "v": str(witness.v),
        "faults": sorted(str(vertex) for vertex in witness.faults),
        "detour": [str(vertex) for vertex in witness.detour],
    }


def fault_maximum_to_dict(result: FaultMaximum) -> dict[str, Any]:
    """Serialize a fault-distance maximum."""
    params = result.pair[0].params
    return {
        "value": _distance(result.value),
        "pair": _pair(result.pair),
        "faults": [str(vertex) for vertex in result.faults.vertices(params)],
        "f": result.f,
        "mode": result.mode,
        "seed": result.seed,
        "runs": result.runs,
        "lower_bound_only": result.lower_bound_only,
    }


def router_sweep_to_dict(sweep: RouterSweep) -> dict[str, Any]:
    """Serialize a router sweep."""
    return {
        "value": sweep.value,
        "pair": _pair(sweep.pair),
        "pairs_checked": sweep.pairs_checked,
        "strategies": dict(sorted(sweep.strategies.items())),
        "mode": sweep.mode,
        "seed": sweep.seed,
    }


def connectivity_sweep_to_dict(sweep: ConnectivitySweep) -> dict[str, Any]:
    """Serialize a connectivity sweep with its Menger paths."""
    return {
        "value": sweep.value,
        "pair": _pair(sweep.pair),
        "paths": [[str(vertex) for vertex in path] for path in sweep.paths],
        "pairs_checked": sweep.pairs_checked,
        "mode": sweep.mode,
        "seed": sweep.seed,
    }


def metric_report_to_dict(report: MetricReport) -> dict[str, Any]:
    """Serialize a metric report."""
    return {
        "census": census_to_dict(report.census),
        "degree_histogram": {
            str(degree): count for degree, count in report.degree_histogram.items()
        },
        "min_degree": report.min_degree,
        "diameter": report.diameter,
        "diameter_pair": _pair(report.diameter_pair),
        "connectivity": report.connectivity,
        "connectivity_cut": [str(vertex) for vertex in report.connectivity_cut],
        "fault": None if report.fault is None else fault_maximum_to_dict(report.fault),
        "wide_upper": None if report.wide is None else router_sweep_to_dict(report.wide),
    }


def sandwich_to_dict(report: SandwichReport) -> dict[str, Any]:
    """Serialize a sandwich check."""
    return {
        "lower": report.lower,
        "upper": report.upper,
        "witness_distance": _distance(report.witness_distance),
        "fault": fault_maximum_to_dict(report.fault),
        "wide_upper": router_sweep_to_dict(report.wide),
        "verdict": report.verdict,
        "notes": list(report.notes),
    }


def stamp(
    document: dict[str, Any],
    params: E3CParams | None,
    seed: int | None,
    mode: str | None,
    wall_time: float,
) -> dict[str, Any]:
    """Prefix a document with the fields that make a run replayable."""
    return {
        "version": VERSION,
        "params": None if params is None else list(params.as_tuple()),
        "seed": seed,
        "mode": mode,
        "wall_time": round(wall_time, 6),
        **document,
    }


def dump_json(document: dict[str, Any]) -> str:
    """Render a document as indented JSON."""
    return json.dumps(document, indent=2)
