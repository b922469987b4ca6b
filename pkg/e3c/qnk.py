"""The k-ary n-cube: adjacency, Lee routing and internally disjoint path systems."""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
import itertools
import logging
from typing import TypeAlias

import networkx as nx

from .const import RADIX
from .exceptions import ConstructionDefect, DomainError
from .trits import TritString, hamming_distance, lee_distance

_LOGGER = logging.getLogger(__name__)

QnkVertex: TypeAlias = TritString


@dataclass(frozen=True)
class QPath:
    """A path in Q_n^k stored as its vertex sequence."""

    vertices: tuple[QnkVertex, ...]

    @property
    def source(self) -> QnkVertex:
        """First vertex."""
        return self.vertices[0]

    @property
    def target(self) -> QnkVertex:
        """Last vertex."""
        return self.vertices[-1]

    @property
    def length(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    def __iter__(self) -> Iterator[QnkVertex]:
        return iter(self.vertices)

    def is_valid(self) -> bool:
        """Return True if consecutive vertices are adjacent and no vertex repeats."""
        if len(set(self.vertices)) != len(self.vertices):
            return False
        return all(are_adjacent(x, y) for x, y in itertools.pairwise(self.vertices))

    def __str__(self) -> str:
        return "->".join(str(vertex) for vertex in self.vertices)


@dataclass(frozen=True)
class QPathProfile:
    """Distance profile of a vertex pair."""

    lee: int
    hamming: int
    widths: tuple[int, ...]


def _require_ternary(*vertices: QnkVertex) -> None:
    for vertex in vertices:
        if vertex.radix != RADIX:
            raise DomainError(f"Ternary construction needs radix 3, got {vertex.radix}")
    if len({len(vertex) for vertex in vertices}) > 1:
        raise DomainError("Vertices of different dimension")


def qnk_neighbors(v: QnkVertex) -> frozenset[QnkVertex]:
    """Return the vertices one ±1 step away in a single dimension."""
    return frozenset(
        v.shifted(position, step)
        for position in range(len(v))
        for step in (1, v.radix - 1)
    )


def are_adjacent(x: QnkVertex, y: QnkVertex) -> bool:
    """Return True if ``x`` and ``y`` differ by ±1 in exactly one dimension."""
    return hamming_distance(x, y) == 1 and lee_distance(x, y) == 1


def path_profile(u: QnkVertex, v: QnkVertex) -> QPathProfile:
    """Return the Lee distance, Hamming distance and per-dimension widths of a pair."""
    widths = tuple(
        lee_distance(TritString((u.digit(i),), u.radix), TritString((v.digit(i),), v.radix))
        for i in range(len(u))
    )
    return QPathProfile(lee=lee_distance(u, v), hamming=hamming_distance(u, v), widths=widths)


def _correct(start: QnkVertex, target: QnkVertex, order: Iterable[int]) -> list[QnkVertex]:
    """Walk from ``start`` setting each listed dimension to the target digit."""
    walk = [start]
    current = start
    for position in order:
        current = current.with_digit(position, target.digit(position))
        walk.append(current)
    return walk


def _first_open_order(
    current: QnkVertex,
    target: QnkVertex,
    remaining: list[int],
    blocked: frozenset[QnkVertex],
) -> list[int] | None:
    """Return the first correction order, in dimension order, that avoids ``blocked``."""
    if not remaining:
        return []
    for position in remaining:
        step = current.with_digit(position, target.digit(position))
        if step in blocked:
            continue
        rest = _first_open_order(
            step, target, [other for other in remaining if other != position], blocked
        )
        if rest is not None:
            return [position, *rest]
    return None


def shortest_path_q3(
    u: QnkVertex, v: QnkVertex, avoid: Iterable[QnkVertex] | None = None
) -> QPath:
    """Route from ``u`` to ``v`` in Q_n^3 by correcting dimensions lowest first.

    Args:
        u: Source vertex
        v: Target vertex
        avoid: Vertices the path must not pass through; endpoints are never blocked

    Returns:
        A path of length ``lee_distance(u, v)``

    Raises:
        DomainError: If the vertices are not ternary strings of one length
        ConstructionDefect: If every minimal path meets the avoid set
    """
    _require_ternary(u, v)
    differing = [position for position in range(len(u)) if u.digit(position) != v.digit(position)]
    blocked = frozenset(avoid or ()) - {u, v}
    order = _first_open_order(u, v, differing, blocked) if blocked else differing
    if order is None:
        raise ConstructionDefect(f"Every shortest path {u} -> {v} meets the avoid set")
    return QPath(tuple(_correct(u, v, order)))


def disjoint_paths_q3(u: QnkVertex, v: QnkVertex) -> list[QPath]:
    """Build 2n internally disjoint ``u``-``v`` paths in Q_n^3.

    For each differing dimension ``i`` there is a shortest path correcting the
    differing dimensions cyclically from ``i``, and a path that first moves ``i`` to
    the third residue and corrects it last. Each agreeing dimension contributes two
    detours that step it aside, correct everything and step it back.

    Args:
        u: Source vertex
        v: Target vertex

    Returns:
        The 2n paths: h of length l, h of length l+1 and 2(n-h) of length l+2

    Raises:
        DomainError: If ``u == v`` or the vertices are not ternary
    """
    _require_ternary(u, v)
    if u == v:
        raise DomainError(f"Disjoint paths need distinct endpoints, got {u} twice")
    differing = [position for position in range(len(u)) if u.digit(position) != v.digit(position)]
    agreeing = [position for position in range(len(u)) if u.digit(position) == v.digit(position)]

    paths: list[QPath] = []
    for index in range(len(differing)):
        order = differing[index:] + differing[:index]
        paths.append(QPath(tuple(_correct(u, v, order))))

    for index, position in enumerate(differing):
        third = 3 - u.digit(position) - v.digit(position)
        aside = u.with_digit(position, third)
        order = differing[index + 1 :] + differing[:index] + [position]
        paths.append(QPath((u, *_correct(aside, v, order))))

    for position in agreeing:
        for step in (1, 2):
            aside = u.shifted(position, step)
            parked = v.with_digit(position, aside.digit(position))
            paths.append(QPath((u, *_correct(aside, parked, differing), v)))

    _LOGGER.debug("Built %d disjoint paths %s -> %s", len(paths), u, v)
    return paths


def iter_qnk_vertices(n: int, k: int = RADIX) -> Iterator[QnkVertex]:
    """Yield every vertex of Q_n^k in base-k index order."""
    for index in range(k**n):
        yield TritString.from_int(index, n, k)


@lru_cache(maxsize=16)
def qnk_graph(n: int, k: int = RADIX) -> nx.Graph:
    """Return Q_n^k as a frozen networkx graph on TritString nodes."""
    graph = nx.Graph()
    for vertex in iter_qnk_vertices(n, k):
        graph.add_node(vertex)
        for neighbor in qnk_neighbors(vertex):
            graph.add_edge(vertex, neighbor)
    return nx.freeze(graph)
