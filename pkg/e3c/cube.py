"""The exchanged 3-ary cube E3C(r,s,t).

A vertex is written ``a_{r-1}..a_0 b_{s-1}..b_0 c_{t-1}..c_0 d`` with ``d`` at
dimension 0. The d-label selects which block is free: ``d=0`` frees C (E1 edges),
``d=1`` frees B (E2 edges) and ``d=2`` frees A (E3 edges). E0 edges change ``d`` only.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, replace
from enum import Enum, IntEnum
from functools import lru_cache
import logging

import networkx as nx

from .const import EDGE_E0, EDGE_E1, EDGE_E2, EDGE_E3, RADIX, SUBCUBE_L, SUBCUBE_M, SUBCUBE_R
from .exceptions import CodecError, DomainError
from .trits import TritString, hamming_distance

_LOGGER = logging.getLogger(__name__)


class Role(IntEnum):
    """Block roles, valued by the d-label under which the block is free."""

    C = 0
    B = 1
    A = 2


class EdgeClass(str, Enum):
    """The four edge classes."""

    E0 = EDGE_E0
    E1 = EDGE_E1
    E2 = EDGE_E2
    E3 = EDGE_E3

    @classmethod
    def for_free_role(cls, role: Role) -> EdgeClass:
        """Return the class of edges that change the block of ``role``."""
        return (cls.E1, cls.E2, cls.E3)[role]


SUBCUBE_KINDS: tuple[str, str, str] = (SUBCUBE_L, SUBCUBE_M, SUBCUBE_R)


@dataclass(frozen=True, slots=True)
class E3CParams:
    """Block lengths of E3C(r,s,t)."""

    r: int
    s: int
    t: int

    def __post_init__(self) -> None:
        """Validate that every block has at least one digit."""
        for name in ("r", "s", "t"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DomainError(f"Parameter {name} must be a positive integer, got {value!r}")

    @property
    def n(self) -> int:
        """Dimension r + s + t + 1."""
        return self.r + self.s + self.t + 1

    @property
    def vertex_count(self) -> int:
        """Closed-form vertex count 3^n."""
        return RADIX**self.n

    @property
    def edge_count(self) -> int:
        """Closed-form edge count (n+2) * 3^(n-1)."""
        return (self.n + 2) * RADIX ** (self.n - 1)

    @property
    def min_length(self) -> int:
        """Shortest block length."""
        return min(self.r, self.s, self.t)

    @property
    def connectivity(self) -> int:
        """Vertex connectivity 2 * min(r,s,t) + 2."""
        return 2 * self.min_length + 2

    @property
    def diameter(self) -> int:
        """Closed-form diameter n + 2."""
        return self.n + 2

    @property
    def is_sorted(self) -> bool:
        """True when r <= s <= t."""
        return self.r <= self.s <= self.t

    def length(self, role: Role) -> int:
        """Return the block length carried by ``role``."""
        return (self.t, self.s, self.r)[role]

    def as_tuple(self) -> tuple[int, int, int]:
        """Return ``(r, s, t)``."""
        return (self.r, self.s, self.t)

    def __str__(self) -> str:
        return f"E3C({self.r},{self.s},{self.t})"


@dataclass(frozen=True, slots=True)
class E3CVertex:
    """A vertex ``ABCd`` of E3C(r,s,t)."""

    a: TritString
    b: TritString
    c: TritString
    d: int
    params: E3CParams

    def __post_init__(self) -> None:
        """Validate block lengths and the d-label."""
        expected = (self.params.r, self.params.s, self.params.t)
        for block, length in zip((self.a, self.b, self.c), expected):
            if len(block) != length or block.radix != RADIX:
                raise CodecError(f"Block {block} does not fit {self.params}")
        if self.d not in (0, 1, 2):
            raise CodecError(f"d-label must be a trit, got {self.d}")

    def block(self, role: Role) -> TritString:
        """Return the block that carries ``role``."""
        return (self.c, self.b, self.a)[role]

    def with_block(self, role: Role, value: TritString) -> E3CVertex:
        """Return a copy with the block of ``role`` replaced."""
        if role == Role.A:
            return replace(self, a=value)
        if role == Role.B:
            return replace(self, b=value)
        return replace(self, c=value)

    def with_d(self, d: int) -> E3CVertex:
        """Return the vertex with the same blocks and d-label ``d mod 3``."""
        return replace(self, d=d % RADIX)

    @property
    def free_role(self) -> Role:
        """Role whose block this vertex may change along a non-E0 edge."""
        return Role(self.d)

    @property
    def flat(self) -> TritString:
        """The length-n digit string ``ABCd``."""
        return TritString(self.a.digits + self.b.digits + self.c.digits + (self.d,))

    @property
    def index(self) -> int:
        """Base-3 index with ``d`` least significant."""
        return self.flat.to_int()

    def __str__(self) -> str:
        return f"{self.a}{self.b}{self.c}{self.d}"


@dataclass(frozen=True, slots=True)
class SubcubeId:
    """The L/M/R copy of a ternary cube that contains a vertex.

    ``fixed`` holds the frozen blocks: (A, B) for L, (A, C) for M and (B, C) for R.
    """

    kind: str
    fixed: tuple[TritString, TritString]

    @property
    def free_role(self) -> Role:
        """Role of the free block."""
        return Role(SUBCUBE_KINDS.index(self.kind))

    def __str__(self) -> str:
        return f"{self.kind}({self.fixed[0]},{self.fixed[1]})"


@dataclass(frozen=True)
class GraphCensus:
    """Vertex and edge counts of a graph instance."""

    vertices: int
    edges: int
    by_class: dict[EdgeClass, int]


def vertex_from_flat(params: E3CParams, flat: TritString | str) -> E3CVertex:
    """Split a flat string ``ABCd`` into blocks.

    Raises:
        CodecError: If the string has the wrong length or radix
    """
    if isinstance(flat, str):
        flat = TritString.parse(flat)
    if len(flat) != params.n or flat.radix != RADIX:
        raise CodecError(f"{flat} is not a vertex of {params}")
    digits = flat.digits
    r, s = params.r, params.s
    return E3CVertex(
        a=TritString(digits[:r]),
        b=TritString(digits[r : r + s]),
        c=TritString(digits[r + s : -1]),
        d=digits[-1],
        params=params,
    )


def vertex_from_index(params: E3CParams, index: int) -> E3CVertex:
    """Decode a base-3 index.

    Raises:
        CodecError: If the index lies outside [0, 3^n)
    """
    return vertex_from_flat(params, TritString.from_int(index, params.n))


def vertex_codec(params: E3CParams, value: TritString | str | int) -> E3CVertex:
    """Decode a flat string or an index into a vertex."""
    if isinstance(value, int):
        return vertex_from_index(params, value)
    return vertex_from_flat(params, value)


def make_vertex(
    params: E3CParams, a: TritString, b: TritString, c: TritString, d: int
) -> E3CVertex:
    """Build a vertex from its blocks."""
    return E3CVertex(a=a, b=b, c=c, d=d % RADIX, params=params)


def e3c_neighbors(u: E3CVertex) -> list[tuple[E3CVertex, EdgeClass]]:
    """Return every neighbor of ``u`` with the class of the joining edge.

    The two E0 neighbors come first, then the free-block neighbors in dimension
    order, each digit stepped by +1 then +2.
    """
    neighbors = [(u.with_d(u.d + 1), EdgeClass.E0), (u.with_d(u.d + 2), EdgeClass.E0)]
    role = u.free_role
    block = u.block(role)
    klass = EdgeClass.for_free_role(role)
    for position in range(len(block)):
        for step in (1, 2):
            neighbors.append((u.with_block(role, block.shifted(position, step)), klass))
    return neighbors


def e3c_degree(u: E3CVertex) -> int:
    """Return 2t+2, 2s+2 or 2r+2 for d = 0, 1, 2."""
    return 2 + 2 * len(u.block(u.free_role))


def edge_class(u: E3CVertex, v: E3CVertex) -> EdgeClass | None:
    """Return the class of the edge ``uv``, or None if they are not adjacent."""
    if u.params != v.params:
        return None
    if u.d != v.d:
        if u.a == v.a and u.b == v.b and u.c == v.c:
            return EdgeClass.E0
        return None
    role = u.free_role
    for other in Role:
        if other != role and u.block(other) != v.block(other):
            return None
    if hamming_distance(u.block(role), v.block(role)) != 1:
        return None
    return EdgeClass.for_free_role(role)


def is_adjacent(u: E3CVertex, v: E3CVertex) -> tuple[bool, EdgeClass | None]:
    """Return whether ``u`` and ``v`` are adjacent, with the class of the edge."""
    klass = edge_class(u, v)
    return klass is not None, klass


def literal_adjacent(u: E3CVertex, v: E3CVertex) -> EdgeClass | None:
    """Classify ``uv`` with the Hamming-sum predicates over flat dimension ranges."""
    x, y = u.flat, v.flat
    r, s, t = u.params.as_tuple()
    top = r + s + t
    if hamming_distance(x, y, (1, top)) == 0 and x.digit(0) != y.digit(0):
        return EdgeClass.E0
    if x.digit(0) != y.digit(0):
        return None
    if x.digit(0) == 0:
        if hamming_distance(x, y, (t + 1, top)) == 0 and hamming_distance(x, y, (1, t)) == 1:
            return EdgeClass.E1
    elif x.digit(0) == 1:
        if (
            hamming_distance(x, y, (s + t + 1, top)) == 0
            and hamming_distance(x, y, (t + 1, s + t)) == 1
            and hamming_distance(x, y, (1, t)) == 0
        ):
            return EdgeClass.E2
    elif (
        hamming_distance(x, y, (s + t + 1, top)) == 1
        and hamming_distance(x, y, (1, s + t)) == 0
    ):
        return EdgeClass.E3
    return None


def subcube_id(u: E3CVertex) -> SubcubeId:
    """Return the L/M/R copy containing ``u``."""
    if u.d == 0:
        return SubcubeId(SUBCUBE_L, (u.a, u.b))
    if u.d == 1:
        return SubcubeId(SUBCUBE_M, (u.a, u.c))
    return SubcubeId(SUBCUBE_R, (u.b, u.c))


def subcube_members(sid: SubcubeId, params: E3CParams) -> list[E3CVertex]:
    """Return the vertices of a subcube in free-block index order."""
    role = sid.free_role
    first, second = sid.fixed
    members = []
    for index in range(RADIX ** params.length(role)):
        free = TritString.from_int(index, params.length(role))
        if role == Role.C:
            members.append(make_vertex(params, first, second, free, 0))
        elif role == Role.B:
            members.append(make_vertex(params, first, free, second, 1))
        else:
            members.append(make_vertex(params, free, first, second, 2))
    return members


def external_neighbors(u: E3CVertex) -> tuple[E3CVertex, E3CVertex]:
    """Return the E0 neighbors with d+1 and d+2; they are adjacent to each other."""
    return (u.with_d(u.d + 1), u.with_d(u.d + 2))


@dataclass(frozen=True)
class BlockIsomorphism:
    """Role permutation of blocks together with the matching d relabeling.

    ``perm[role]`` is the role the block takes in the image. A vertex with label
    ``d`` maps to label ``perm[d]``, so E0 edges stay E0 and the edge class of a
    block follows the block.
    """

    source: E3CParams
    target: E3CParams
    perm: tuple[int, int, int]

    def __call__(self, vertex: E3CVertex) -> E3CVertex:
        blocks = {Role(self.perm[role]): vertex.block(role) for role in Role}
        return E3CVertex(
            a=blocks[Role.A],
            b=blocks[Role.B],
            c=blocks[Role.C],
            d=self.perm[vertex.d],
            params=self.target,
        )

    @property
    def is_identity(self) -> bool:
        """True for the identity permutation."""
        return self.perm == (0, 1, 2)

    def inverse(self) -> BlockIsomorphism:
        """Return the isomorphism going back to the source graph."""
        inverse = [0, 0, 0]
        for role, image in enumerate(self.perm):
            inverse[image] = role
        return BlockIsomorphism(self.target, self.source, (inverse[0], inverse[1], inverse[2]))

    def map_path(self, path: Sequence[E3CVertex]) -> list[E3CVertex]:
        """Map every vertex of a path."""
        return [self(vertex) for vertex in path]

    def describe(self) -> str:
        """Return a readable role mapping such as ``C->B,B->C,A->A``."""
        return ",".join(
            f"{Role(role).name}->{Role(image).name}" for role, image in enumerate(self.perm)
        )


def block_isomorphism(
    params: E3CParams, perm: Sequence[int], target: E3CParams | None = None
) -> BlockIsomorphism:
    """Return the block-permutation isomorphism of E3C(params) along ``perm``.

    Args:
        params: Source parameters
        perm: Image role for each of the roles C, B, A (values 0, 1, 2)
        target: Expected image parameters, checked when given

    Returns:
        The isomorphism onto E3C(r',s',t')

    Raises:
        DomainError: If ``perm`` is not a permutation or does not reach ``target``
    """
    if sorted(int(image) for image in perm) != [0, 1, 2]:
        raise DomainError(f"Not a permutation of the three roles: {tuple(perm)}")
    images = (int(perm[0]), int(perm[1]), int(perm[2]))
    lengths = {Role(images[role]): params.length(role) for role in Role}
    image = E3CParams(r=lengths[Role.A], s=lengths[Role.B], t=lengths[Role.C])
    if target is not None and target != image:
        raise DomainError(f"Permutation {images} maps {params} onto {image}, not {target}")
    return BlockIsomorphism(params, image, images)


def iter_vertices(params: E3CParams) -> Iterator[E3CVertex]:
    """Yield every vertex in index order."""
    for index in range(params.vertex_count):
        yield vertex_from_index(params, index)


def iter_edges(params: E3CParams) -> Iterator[tuple[E3CVertex, E3CVertex, EdgeClass]]:
    """Yield every edge once, lower index first."""
    for u in iter_vertices(params):
        u_index = u.index
        for v, klass in e3c_neighbors(u):
            if u_index < v.index:
                yield u, v, klass


def graph_census(params: E3CParams) -> GraphCensus:
    """Count vertices and edges per class by enumeration."""
    by_class: Counter[EdgeClass] = Counter()
    for _, _, klass in iter_edges(params):
        by_class[klass] += 1
    census = GraphCensus(
        vertices=params.vertex_count,
        edges=sum(by_class.values()),
        by_class={klass: by_class.get(klass, 0) for klass in EdgeClass},
    )
    _LOGGER.debug("Census of %s: %s", params, census)
    return census


@lru_cache(maxsize=8)
def build_graph(params: E3CParams) -> nx.Graph:
    """Return E3C(params) as a frozen networkx graph on vertex indices.

    Edges carry an ``edge_class`` attribute with the class name.
    """
    graph = nx.Graph(params=params.as_tuple())
    graph.add_nodes_from(range(params.vertex_count))
    for u, v, klass in iter_edges(params):
        graph.add_edge(u.index, v.index, edge_class=klass.value)
    _LOGGER.debug("Built %s with %d edges", params, graph.number_of_edges())
    return nx.freeze(graph)


def leading_digit_layers(params: E3CParams) -> list[list[E3CVertex]]:
    """Split the vertices by their leading A-digit.

    Each layer induces a copy of E3C(r-1,s,t) under :func:`drop_leading_digit`.

    Raises:
        DomainError: If r == 1
    """
    if params.r < 2:
        raise DomainError(f"{params} has a single A-digit and no leading-digit layers")
    layers: list[list[E3CVertex]] = [[], [], []]
    for vertex in iter_vertices(params):
        layers[vertex.a.digits[0]].append(vertex)
    return layers


def drop_leading_digit(vertex: E3CVertex) -> E3CVertex:
    """Map a vertex onto E3C(r-1,s,t) by deleting its leading A-digit."""
    params = vertex.params
    if params.r < 2:
        raise DomainError(f"{params} has no leading A-digit to drop")
    smaller = E3CParams(params.r - 1, params.s, params.t)
    return E3CVertex(
        a=TritString(vertex.a.digits[1:]), b=vertex.b, c=vertex.c, d=vertex.d, params=smaller
    )
