"""Arrow labelings and the facets of root polytopes

A bullet labeling assigns a rational number to every normal vertex (stars
are 0); it induces the arrow labeling ``M(t -> h) = L(h) - L(t)``. Arrow
labelings of that form are called 0-sum. Facets of Root(Q) correspond to
integral 0-sum labelings with minimum -1 whose set of -1 arrows (the flat
set) is maximal.

Features:
- Conversion between bullet and arrow labelings with a consistency check
- Facet labelings read off the hull of the root points
- Facet components (connected pieces of the flat set)
- The face fan of Root(Q)
- A brute-force search over bounded bullet labelings, used as a test oracle
"""

from __future__ import annotations

import itertools
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
from loguru import logger

from . import exactlin
from .exceptions import InvalidParameterError
from .exceptions import InvariantError
from .fans import Fan
from .polytope import hull
from .quiver import StarredQuiver
from .quiver import distinct_root_points
from .quiver import ensure_starred
from .quiver import require_strongly_connected
from .types import IVec
from .types import QVec
from .types import Scalar
from .types import VertexId


@dataclass(frozen=True)
class FacetLabeling:
    """Facet arrow-labeling with its bullet labeling and flat set

    Attributes:
        bullet: Integer value per normal vertex
        values: Integer value per arrow, ``values[i] = L(head) - L(tail)``
        flat: Indices of the arrows labeled -1
        vertices: Distinct root points on the facet
    """

    bullet: IVec
    values: IVec
    flat: frozenset[int]
    vertices: tuple[IVec, ...] = ()

    def __post_init__(self):
        if min(self.values) != -1:
            raise InvariantError(f"facet labeling has minimum {min(self.values)}, expected -1")
        if self.flat != frozenset(i for i, x in enumerate(self.values) if x == -1):
            raise InvariantError("flat set does not match the -1 arrows")


@dataclass(frozen=True)
class FacetComponent:
    """Maximal connected piece of the flat set, isolated vertices included"""

    vertices: frozenset[VertexId]
    arrows: frozenset[int]
    stars: frozenset[VertexId]


def _check_lengths(q: StarredQuiver, values: Sequence, expected: int, what: str) -> None:
    if len(values) != expected:
        raise InvalidParameterError(f"{what} has {len(values)} entries, quiver needs {expected}")


def bullet_to_arrow(q: StarredQuiver, l: Sequence[Scalar]) -> QVec:
    """Arrow labeling induced by a bullet labeling (values in normal-vertex order)"""
    _check_lengths(q, l, q.dim, "bullet labeling")
    return tuple(Fraction(exactlin.dot(l, q.point(a))) for a in q.arrows)


def _potential(q: StarredQuiver, m: Sequence[Scalar]) -> dict[VertexId, Fraction] | None:
    """Vertex values with ``m`` as differences, starting from 0 at the stars; None if inconsistent"""
    adjacency: dict[VertexId, list[tuple[VertexId, Fraction]]] = {v: [] for v in q.vertices}
    for (tail, head), value in zip(q.arrows, m, strict=True):
        adjacency[tail].append((head, Fraction(value)))
        adjacency[head].append((tail, -Fraction(value)))
    roots = list(q.starred_vertices) or [q.normal_vertices[0]]
    values = {v: Fraction(0) for v in roots}
    queue = deque(roots)
    while queue:
        v = queue.popleft()
        for w, step in adjacency[v]:
            if w not in values:
                values[w] = values[v] + step
                queue.append(w)
            elif values[w] != values[v] + step:
                return None
    return values


def is_zero_sum(q: StarredQuiver, m: Sequence[Scalar]) -> bool:
    """Whether every cycle and every star-to-star path has signed label sum 0"""
    _check_lengths(q, m, len(q.arrows), "arrow labeling")
    return _potential(q, m) is not None


def arrow_to_bullet(q: StarredQuiver, m: Sequence[Scalar]) -> QVec:
    """The unique bullet labeling inducing ``m``

    Raises:
        InvalidParameterError: If the quiver has no star or ``m`` is not 0-sum
    """
    _check_lengths(q, m, len(q.arrows), "arrow labeling")
    if not q.starred_vertices:
        raise InvalidParameterError("bullet labelings need a starred vertex")
    values = _potential(q, m)
    if values is None:
        raise InvalidParameterError("arrow labeling is not 0-sum")
    return tuple(values[v] for v in q.normal_vertices)


def facet_labelings(q: StarredQuiver) -> list[FacetLabeling]:
    """One facet labeling per facet of Root(q), sorted by bullet labeling

    Each facet ``<L, x> >= -c`` of the hull gives ``L / c``; its arrow values
    must be integral with minimum -1.

    Raises:
        NotStronglyConnectedError: If ``q`` is not strongly connected
        InvariantError: If a facet normal does not rescale to an integral labeling
    """
    require_strongly_connected(q)
    q = ensure_starred(q)
    _, h = hull(distinct_root_points(q))
    if h.equations:
        raise InvariantError("root polytope of a strongly connected quiver is not full-dimensional")
    labelings = []
    for facet in h.inequalities:
        if facet.offset <= 0:
            raise InvariantError(f"origin is not interior to Root(Q) (facet {facet})")
        bullet = exactlin.as_integral([Fraction(c) / facet.offset for c in facet.normal])
        if bullet is None:
            raise InvariantError(f"facet {facet} gives a fractional labeling")
        values = tuple(exactlin.dot(bullet, q.point(a)) for a in q.arrows)
        flat = frozenset(i for i, x in enumerate(values) if x == -1)
        points = tuple(dict.fromkeys(q.point(q.arrows[i]) for i in sorted(flat)))
        labelings.append(FacetLabeling(bullet, values, flat, points))
    labelings.sort(key=lambda f: f.bullet)
    logger.info(f"Root polytope in R^{q.dim} has {len(labelings)} facets")
    return labelings


def facet_components(q: StarredQuiver, m: FacetLabeling) -> list[FacetComponent]:
    """Connected components of the -1 arrows, stars kept separate

    Raises:
        InvariantError: If a component has no starred vertex
    """
    q = ensure_starred(q)
    _check_lengths(q, m.values, len(q.arrows), "arrow labeling")
    graph = nx.MultiGraph()
    graph.add_nodes_from(q.vertices)
    for i in m.flat:
        tail, head = q.arrows[i]
        graph.add_edge(tail, head, key=i)
    components = []
    for nodes in nx.connected_components(graph):
        arrows = frozenset(k for _, _, k in graph.subgraph(nodes).edges(keys=True))
        stars = frozenset(v for v in nodes if q.is_star(v))
        if not stars:
            raise InvariantError(f"facet component {sorted(nodes)} contains no starred vertex")
        components.append(FacetComponent(frozenset(nodes), arrows, stars))
    components.sort(key=lambda c: sorted(c.vertices))
    return components


def face_fan(q: StarredQuiver) -> Fan:
    """Face fan of Root(q): one maximal cone per facet, spanned by its root points"""
    q = ensure_starred(q)
    labelings = facet_labelings(q)
    return Fan.from_cones(q.dim, [f.vertices for f in labelings], [str(f.bullet) for f in labelings])


def facet_labelings_by_search(q: StarredQuiver, bound: int | None = None) -> list[FacetLabeling]:
    """Facet labelings found by enumerating integer bullet labelings in ``[-bound, bound]^n``

    Keeps the labelings with minimum -1 whose flat set is maximal by inclusion.
    Path lengths bound facet labels, so ``bound`` defaults to ``n``. Exponential
    in ``n``.
    """
    require_strongly_connected(q)
    q = ensure_starred(q)
    bound = q.dim if bound is None else bound
    if bound < 1:
        raise InvalidParameterError(f"bound must be positive, got {bound}")
    points = [q.point(a) for a in q.arrows]
    faces: dict[frozenset[int], IVec] = {}
    for bullet in itertools.product(range(-bound, bound + 1), repeat=q.dim):
        values = [exactlin.dot(bullet, p) for p in points]
        if min(values) != -1:
            continue
        flat = frozenset(i for i, x in enumerate(values) if x == -1)
        faces.setdefault(flat, bullet)
    maximal = [flat for flat in faces if not any(flat < other for other in faces)]
    logger.debug(f"search: {len(faces)} face labelings, {len(maximal)} maximal")
    result = []
    for flat in maximal:
        bullet = faces[flat]
        values = tuple(exactlin.dot(bullet, p) for p in points)
        vertices = tuple(dict.fromkeys(points[i] for i in sorted(flat)))
        result.append(FacetLabeling(tuple(bullet), values, flat, vertices))
    result.sort(key=lambda f: f.bullet)
    return result
