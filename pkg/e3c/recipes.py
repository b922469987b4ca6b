"""Written disjoint-path recipes, one per orbit of vertex-pair cases.

Every recipe receives a :class:`PathBuilder` whose source ``u = ABCd`` and target
``v = A'B'C'd'`` match the recipe's signature (differing blocks, d-labels) and
returns ``2m + 2`` paths, ``m = min(r, s, t)``. Paths are spelled as key vertices;
the builder fills in E0 hops and dimension-order shortest paths inside subcubes.
"""
from __future__ import annotations
# pylint: disable=invalid-name

from collections.abc import Callable, Sequence
import logging
from typing import TypeAlias

from .cube import E3CVertex, EdgeClass, Role, edge_class, make_vertex, subcube_id
from .exceptions import ConstructionDefect
from .qnk import disjoint_paths_q3, shortest_path_q3
from .trits import TritString

_LOGGER = logging.getLogger(__name__)

Path: TypeAlias = list[E3CVertex]
Recipe: TypeAlias = Callable[["PathBuilder"], list[Path]]


def erase_loops(path: Sequence[E3CVertex]) -> Path:
    """Cut every closed detour out of a walk, keeping the first visit of a vertex."""
    result: Path = []
    position: dict[E3CVertex, int] = {}
    for vertex in path:
        if vertex in position:
            cut = position[vertex]
            for dropped in result[cut + 1 :]:
                del position[dropped]
            del result[cut + 1 :]
        else:
            position[vertex] = len(result)
            result.append(vertex)
    return result


class PathBuilder:
    """Assemble paths of one E3C instance from key vertices."""

    def __init__(self, source: E3CVertex, target: E3CVertex, variant: int = 0) -> None:
        """Initialize the builder.

        Args:
            source: First endpoint
            target: Second endpoint
            variant: Rotation applied to every perturbation index
        """
        self.source = source
        self.target = target
        self.params = source.params
        self.variant = variant
        self.fan = 2 * self.params.min_length

    def vertex(self, a: TritString, b: TritString, c: TritString, d: int) -> E3CVertex:
        """Build a vertex of this instance."""
        return make_vertex(self.params, a, b, c, d)

    def perturb(self, block: TritString, index: int) -> TritString:
        """Return the ``index``-th single-digit neighbor of ``block`` (1-based).

        Odd indices add 1 and even indices add 2 to digit ``(index - 1) // 2``;
        the variant rotates the index over all ``2 * len(block)`` neighbors.
        """
        slot = (index - 1 + self.variant) % (2 * len(block))
        position, parity = divmod(slot, 2)
        return block.shifted(position, 1 if parity == 0 else 2)

    def perturbations(self, block: TritString) -> list[TritString]:
        """Return the first ``2m`` perturbations of ``block``."""
        return [self.perturb(block, index) for index in range(1, self.fan + 1)]

    def segment(self, x: E3CVertex, y: E3CVertex) -> Path:
        """Return the vertices after ``x`` up to ``y`` on the canonical connection.

        Raises:
            ConstructionDefect: If ``x`` and ``y`` are neither E0 neighbors nor in one subcube
        """
        if x == y:
            return []
        if x.d != y.d:
            if edge_class(x, y) is EdgeClass.E0:
                return [y]
            raise ConstructionDefect(f"{x} and {y} are not joined by an E0 edge")
        if subcube_id(x) != subcube_id(y):
            raise ConstructionDefect(f"{x} and {y} lie in different subcubes")
        role = x.free_role
        route = shortest_path_q3(x.block(role), y.block(role))
        return [x.with_block(role, block) for block in route.vertices[1:]]

    def walk(self, *legs: E3CVertex | Sequence[E3CVertex]) -> Path:
        """Join key vertices and ready-made subpaths into one loop-free path."""
        path: Path = []
        for leg in legs:
            for vertex in [leg] if isinstance(leg, E3CVertex) else leg:
                if path:
                    path.extend(self.segment(path[-1], vertex))
                else:
                    path.append(vertex)
        return erase_loops(path)

    def subcube_system(self, x: E3CVertex, y: E3CVertex) -> list[Path]:
        """Return ``2m`` disjoint ``x``-``y`` paths inside their shared subcube.

        The shortest paths of the full ternary-cube system are kept; a length-1 path,
        if present, is placed last.

        Raises:
            ConstructionDefect: If more than one chosen path has length 1
        """
        if subcube_id(x) != subcube_id(y):
            raise ConstructionDefect(f"{x} and {y} lie in different subcubes")
        role = x.free_role
        system = disjoint_paths_q3(x.block(role), y.block(role))
        shift = self.variant % len(system)
        rotated = system[shift:] + system[:shift]
        chosen = sorted(rotated, key=lambda route: route.length)[: self.fan]
        lifted = [[x.with_block(role, block) for block in route.vertices] for route in chosen]
        direct = [path for path in lifted if len(path) == 2]
        if len(direct) > 1:
            raise ConstructionDefect(f"Several length-1 paths between {x} and {y}")
        return [path for path in lifted if len(path) != 2] + direct


def _single_block_on_l(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = ABC'0."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C, C2 = u.a, u.b, u.c, v.c
    A1, B1 = b.perturb(A, 1), b.perturb(B, 1)
    paths = b.subcube_system(u, v)
    paths.append(
        b.walk(u, at(A, B, C, 1), at(A, B1, C, 1), at(A, B1, C, 0),
               at(A, B1, C2, 0), at(A, B1, C2, 1), at(A, B, C2, 1), v)
    )
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 0),
               at(A1, B, C2, 0), at(A1, B, C2, 2), at(A, B, C2, 2), v)
    )
    return paths


def _single_block_off_l(b: PathBuilder) -> list[Path]:
    """u = ABC1, v = ABC'1."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C, C2 = u.a, u.b, u.c, v.c
    paths = [
        b.walk(u, at(A, Bi, C, 1), at(A, Bi, C, 0), at(A, Bi, C2, 0), at(A, Bi, C2, 1), v)
        for Bi in b.perturbations(B)
    ]
    paths.append(b.walk(u, at(A, B, C, 0), at(A, B, C2, 0), v))
    A1 = b.perturb(A, 1)
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 0),
               at(A1, B, C2, 0), at(A1, B, C2, 2), at(A, B, C2, 2), v)
    )
    return paths


def _two_blocks_on_l(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = AB'C'0."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    B2, C2 = v.b, v.c
    w, z = at(A, B, C2, 0), at(A, B2, C, 0)
    system = b.subcube_system(u, w)
    paths = []
    for route in system[:-1]:
        Ci = route[-2].c
        paths.append(b.walk(route[:-1], at(A, B, Ci, 1), at(A, B2, Ci, 1), at(A, B2, Ci, 0), v))
    last = system[-1]
    mirrored = [vertex.with_block(Role.B, B2) for vertex in last]
    paths.append(b.walk(u, at(A, B, C, 1), at(A, B2, C, 1), z, mirrored))
    paths.append(b.walk(last, at(A, B, C2, 1), at(A, B2, C2, 1), v))
    A1 = b.perturb(A, 1)
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 1), at(A1, B2, C, 1),
               at(A1, B2, C, 0), at(A1, B2, C2, 0), at(A1, B2, C2, 2), at(A, B2, C2, 2), v)
    )
    return paths


def _two_blocks_off_r(b: PathBuilder) -> list[Path]:
    """u = ABC2, v = AB'C'2."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    B2, C2 = v.b, v.c
    paths = [
        b.walk(u, at(Ai, B, C, 2), at(Ai, B, C, 1), at(Ai, B2, C, 1), at(Ai, B2, C, 0),
               at(Ai, B2, C2, 0), at(Ai, B2, C2, 2), v)
        for Ai in b.perturbations(A)
    ]
    paths.append(b.walk(u, at(A, B, C, 0), at(A, B, C2, 0), at(A, B, C2, 1), at(A, B2, C2, 1), v))
    paths.append(b.walk(u, at(A, B, C, 1), at(A, B2, C, 1), at(A, B2, C, 0), at(A, B2, C2, 0), v))
    return paths


def _three_blocks_on_l(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = A'B'C'0."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    A2, B2, C2 = v.a, v.b, v.c
    w, z = at(A, B, C2, 0), at(A2, B2, C, 0)
    system = b.subcube_system(u, w)
    paths = []
    for route in system[:-1]:
        Ci = route[-2].c
        paths.append(
            b.walk(route[:-1], at(A, B, Ci, 1), at(A, B2, Ci, 1), at(A, B2, Ci, 2),
                   at(A2, B2, Ci, 2), at(A2, B2, Ci, 0), v)
        )
    last = system[-1]
    mirrored = [vertex.with_block(Role.A, A2).with_block(Role.B, B2) for vertex in last]
    paths.append(
        b.walk(u, at(A, B, C, 1), at(A, B2, C, 1), at(A, B2, C, 2), at(A2, B2, C, 2), z, mirrored)
    )
    paths.append(
        b.walk(last, at(A, B, C2, 1), at(A, B2, C2, 1), at(A, B2, C2, 2), at(A2, B2, C2, 2), v)
    )
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A2, B, C, 2), at(A2, B, C, 0), at(A2, B, C2, 0),
               at(A2, B, C2, 1), at(A2, B2, C2, 1), v)
    )
    return paths


def _no_block_cross(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = ABC1."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    paths = [
        b.walk(u, at(A, B, Ci, 0), at(A, B, Ci, 1), at(A, Bi, Ci, 1), at(A, Bi, Ci, 0),
               at(A, Bi, C, 0), at(A, Bi, C, 1), v)
        for Ci, Bi in zip(b.perturbations(C), b.perturbations(B))
    ]
    paths.append(b.walk(u, at(A, B, C, 2), v))
    paths.append([u, v])
    return paths


def _on_path(candidates: list[TritString], locate: Callable[[TritString], E3CVertex],
             path: Path) -> TritString:
    """Return the candidate whose located vertex lies on ``path``, else the last one."""
    members = set(path)
    for candidate in candidates:
        if locate(candidate) in members:
            return candidate
    return candidates[-1]


def _single_block_cross_l_m(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = ABC'1."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C, C2 = u.a, u.b, u.c, v.c
    shared = at(A, B, C2, 0)
    direct = b.walk(u, shared)
    u_side = b.perturbations(C)
    u_side.remove(_on_path(u_side, lambda Ci: at(A, B, Ci, 0), direct))
    lone, *v_side = b.perturbations(B)
    paths = [b.walk(direct, v)]
    for Ci, Bi in zip(u_side, v_side):
        paths.append(
            b.walk(u, at(A, B, Ci, 0), at(A, B, Ci, 1), at(A, Bi, Ci, 1), at(A, Bi, Ci, 0),
                   at(A, Bi, C2, 0), at(A, Bi, C2, 1), v)
        )
    paths.append(
        b.walk(u, at(A, B, C, 1), at(A, lone, C, 1), at(A, lone, C, 0),
               at(A, lone, C2, 0), at(A, lone, C2, 1), v)
    )
    A1 = b.perturb(A, 1)
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 0),
               at(A1, B, C2, 0), at(A1, B, C2, 2), at(A, B, C2, 2), v)
    )
    return paths


def _single_block_cross_m_r(b: PathBuilder) -> list[Path]:
    """u = ABC1, v = ABC'2.

    The first A- and B-neighbors are held back for the detours through ``A1BC'2``
    and ``AB1C'1``; no path changes C more than once.
    """
    u, v, at = b.source, b.target, b.vertex
    A, B, C, C2 = u.a, u.b, u.c, v.c
    (A1, *a_side), (B1, *b_side) = b.perturbations(A), b.perturbations(B)
    paths = [
        b.walk(u, at(A, Bi, C, 1), at(A, Bi, C, 2), at(Ai, Bi, C, 2), at(Ai, Bi, C, 0),
               at(Ai, Bi, C2, 0), at(Ai, Bi, C2, 1), at(Ai, B, C2, 1), at(Ai, B, C2, 2), v)
        for Bi, Ai in zip(b_side, a_side)
    ]
    paths.append(b.walk(u, at(A, B, C, 0), at(A, B, C2, 0), v))
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 0), at(A1, B, C2, 0),
               at(A1, B, C2, 2), v)
    )
    paths.append(
        b.walk(u, at(A, B1, C, 1), at(A, B1, C, 0), at(A, B1, C2, 0), at(A, B1, C2, 1),
               at(A, B, C2, 1), v)
    )
    return paths


def _two_blocks_cross_l_m(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = AB'C'1."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    B2, C2 = v.b, v.c
    corner = at(A, B, C2, 1)
    first_leg = b.walk(u, at(A, B, C2, 0))
    second_leg = b.walk(corner, v)
    u_side = b.perturbations(C)
    u_side.remove(_on_path(u_side, lambda Ci: at(A, B, Ci, 0), first_leg))
    v_side = b.perturbations(B2)
    v_side.remove(_on_path(v_side, lambda Bi: at(A, Bi, C2, 1), second_leg))
    paths = [
        b.walk(u, at(A, B, Ci, 0), at(A, B, Ci, 1), at(A, Bi, Ci, 1), at(A, Bi, Ci, 0),
               at(A, Bi, C2, 0), at(A, Bi, C2, 1), v)
        for Ci, Bi in zip(u_side, v_side)
    ]
    paths.append(b.walk(first_leg, second_leg))
    paths.append(b.walk(u, at(A, B, C, 1), at(A, B2, C, 1), at(A, B2, C, 0), at(A, B2, C2, 0), v))
    A1 = b.perturb(A, 1)
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 0), at(A1, B, C2, 0),
               at(A1, B, C2, 1), at(A1, B2, C2, 1), at(A1, B2, C2, 2), at(A, B2, C2, 2), v)
    )
    return paths


def _two_blocks_cross_l_r(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = AB'C'2."""
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    B2, C2 = v.b, v.c
    paths = [
        b.walk(u, at(A, B, Ci, 0), at(A, B, Ci, 2), at(Ai, B, Ci, 2), at(Ai, B, Ci, 1),
               at(Ai, B2, Ci, 1), at(Ai, B2, Ci, 0), at(Ai, B2, C2, 0), at(Ai, B2, C2, 2), v)
        for Ci, Ai in zip(b.perturbations(C), b.perturbations(A))
    ]
    A1 = b.perturb(A, 1)
    B1 = next(Bi for Bi in b.perturbations(B) if Bi != B2)
    if B1 != b.perturb(B, 1):
        _LOGGER.debug("B detour of %s -> %s moved off the target block %s", u, v, B2)
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A1, B, C, 2), at(A1, B, C, 1), at(A1, B2, C, 1),
               at(A1, B2, C, 2), at(A, B2, C, 2), at(A, B2, C, 0), at(A, B2, C2, 0), v)
    )
    paths.append(
        b.walk(u, at(A, B, C, 1), at(A, B1, C, 1), at(A, B1, C, 0), at(A, B1, C2, 0),
               at(A, B1, C2, 1), at(A, B2, C2, 1), v)
    )
    return paths


def _three_blocks_cross(b: PathBuilder) -> list[Path]:
    """u = ABC0, v = A'B'C'1.

    A C-neighbor of u equal to C' runs straight through M(A', C') into v and takes
    over the B'-neighbor its route ends on.
    """
    u, v, at = b.source, b.target, b.vertex
    A, B, C = u.a, u.b, u.c
    A2, B2, C2 = v.a, v.b, v.c
    c_side, b_side = b.perturbations(C), b.perturbations(B2)
    paths = []
    if C2 in c_side:
        straight = b.walk(u, at(A, B, C2, 0), at(A, B, C2, 2), at(A2, B, C2, 2),
                          at(A2, B, C2, 1), v)
        partner = _on_path(b_side, lambda Bi: at(A2, Bi, C2, 1), straight)
        _LOGGER.debug("Pairing %s with %s on the straight route of %s -> %s", C2, partner, u, v)
        c_side.remove(C2)
        b_side.remove(partner)
        paths.append(straight)
    paths.extend(
        b.walk(u, at(A, B, Ci, 0), at(A, B, Ci, 2), at(A2, B, Ci, 2), at(A2, B, Ci, 1),
               at(A2, Bi, Ci, 1), at(A2, Bi, Ci, 0), at(A2, Bi, C2, 0), at(A2, Bi, C2, 1), v)
        for Ci, Bi in zip(c_side, b_side)
    )
    paths.append(
        b.walk(u, at(A, B, C, 2), at(A2, B, C, 2), at(A2, B, C, 1), at(A2, B2, C, 1),
               at(A2, B2, C, 0), at(A2, B2, C2, 0), v)
    )
    paths.append(
        b.walk(u, at(A, B, C, 1), at(A, B2, C, 1), at(A, B2, C, 0), at(A, B2, C2, 0),
               at(A, B2, C2, 2), at(A2, B2, C2, 2), v)
    )
    return paths


# Orbit representatives keyed by (differing roles, d of source, d of target).
# The second item names the written case the recipe transcribes.
RECIPES: dict[tuple[frozenset[Role], int, int], tuple[str, Recipe]] = {
    (frozenset({Role.C}), 0, 0): ("1.1", _single_block_on_l),
    (frozenset({Role.C}), 1, 1): ("1.2", _single_block_off_l),
    (frozenset({Role.B, Role.C}), 0, 0): ("3.1", _two_blocks_on_l),
    (frozenset({Role.B, Role.C}), 2, 2): ("3.3", _two_blocks_off_r),
    (frozenset(Role), 0, 0): ("7.1", _three_blocks_on_l),
    (frozenset(), 0, 1): ("8.1", _no_block_cross),
    (frozenset({Role.C}), 0, 1): ("9.1", _single_block_cross_l_m),
    (frozenset({Role.C}), 1, 2): ("9.3", _single_block_cross_m_r),
    (frozenset({Role.B, Role.C}), 0, 1): ("11.1", _two_blocks_cross_l_m),
    (frozenset({Role.B, Role.C}), 0, 2): ("11.2", _two_blocks_cross_l_r),
    (frozenset(Role), 0, 1): ("15.1", _three_blocks_cross),
}
