"""Starred quivers and their root points

A starred quiver has normal vertices (the lattice coordinates) and starred
vertices (pinned to the origin). Each arrow ``t -> h`` gives one lattice point:
``e_h - e_t`` between normal vertices, ``e_h`` out of a star and ``-e_t`` into
a star. The root polytope is the convex hull of these points.
"""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Sequence
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from functools import cached_property

import networkx as nx
from loguru import logger

from .exceptions import DegenerateQuiverError
from .exceptions import InvalidParameterError
from .exceptions import NotAcyclicError
from .exceptions import NotStronglyConnectedError
from .exceptions import PreconditionError
from .types import ArrowPair
from .types import IMat
from .types import IVec
from .types import VertexId

# Node standing for every starred vertex once stars are identified
IDENTIFIED_STARS = object()


class ArrowKind(str, Enum):
    """Arrow type by which endpoints are starred"""

    STAR_TO_NORMAL = "star_to_normal"
    NORMAL_TO_STAR = "normal_to_star"
    NORMAL_TO_NORMAL = "normal_to_normal"


@dataclass(frozen=True)
class StarredQuiver:
    """Starred quiver with normalized arrows

    Use ``StarredQuiver.from_arrows`` for raw input; the constructor itself
    only validates.
    """

    normal_vertices: tuple[VertexId, ...]
    starred_vertices: tuple[VertexId, ...]
    arrows: tuple[ArrowPair, ...]
    normalization_log: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.normal_vertices:
            raise DegenerateQuiverError("quiver has no normal vertices")
        if len(set(self.normal_vertices)) != len(self.normal_vertices):
            raise InvalidParameterError("normal vertex ids must be unique")
        if len(set(self.starred_vertices)) != len(self.starred_vertices):
            raise InvalidParameterError("starred vertex ids must be unique")
        both = set(self.normal_vertices) & set(self.starred_vertices)
        if both:
            raise InvalidParameterError(f"vertices both normal and starred: {sorted(both)}")
        known = set(self.normal_vertices) | set(self.starred_vertices)
        stars = set(self.starred_vertices)
        seen: set[ArrowPair] = set()
        for tail, head in self.arrows:
            if tail not in known or head not in known:
                raise InvalidParameterError(f"arrow {tail}->{head} uses an unknown vertex")
            if tail == head:
                raise InvalidParameterError(f"loop at {tail}")
            if tail in stars and head in stars:
                raise InvalidParameterError(f"arrow {tail}->{head} joins two starred vertices")
            if (tail, head) in seen:
                raise InvalidParameterError(f"duplicate arrow {tail}->{head}")
            seen.add((tail, head))
        graph = nx.Graph()
        graph.add_nodes_from(known)
        graph.add_edges_from(self.arrows)
        if not nx.is_connected(graph):
            raise PreconditionError("underlying graph of the quiver is not connected")

    @classmethod
    def from_arrows(
        cls,
        normal_vertices: Sequence[VertexId],
        starred_vertices: Sequence[VertexId],
        arrows: Iterable[Sequence[VertexId]],
    ) -> StarredQuiver:
        """Build a quiver, merging star-star arrows and dropping loops and duplicates

        An arrow between two stars identifies them (the first declared star
        survives). Each rewrite is recorded in ``normalization_log``.

        Raises:
            DegenerateQuiverError: If no normal vertex remains
            InvalidParameterError: If an arrow uses an unknown vertex
        """
        normal = tuple(normal_vertices)
        stars = tuple(starred_vertices)
        raw = [tuple(a) for a in arrows]
        known = set(normal) | set(stars)
        for arrow in raw:
            if len(arrow) != 2:
                raise InvalidParameterError(f"arrow {arrow} must be a (tail, head) pair")
            if arrow[0] not in known or arrow[1] not in known:
                raise InvalidParameterError(f"arrow {arrow[0]}->{arrow[1]} uses an unknown vertex")

        log: list[str] = []
        star_set = set(stars)
        order = {s: i for i, s in enumerate(stars)}
        merged = nx.Graph()
        merged.add_nodes_from(stars)
        merged.add_edges_from((t, h) for t, h in raw if t in star_set and h in star_set)
        representative: dict[VertexId, VertexId] = {}
        for component in nx.connected_components(merged):
            rep = min(component, key=order.__getitem__)
            for s in component:
                representative[s] = rep
            if len(component) > 1:
                others = sorted((s for s in component if s != rep), key=order.__getitem__)
                log.append(f"identified stars {', '.join(others)} with {rep} (star-star arrow)")
        kept_stars = tuple(s for s in stars if representative[s] == s)

        cleaned: list[ArrowPair] = []
        seen: set[ArrowPair] = set()
        for tail, head in raw:
            t = representative.get(tail, tail)
            h = representative.get(head, head)
            if t == h:
                if tail in star_set:
                    continue
                log.append(f"dropped loop at {t}")
                continue
            if (t, h) in seen:
                log.append(f"removed duplicate arrow {t}->{h}")
                continue
            seen.add((t, h))
            cleaned.append((t, h))

        for entry in log:
            logger.debug(f"Quiver normalization: {entry}")
        if not normal:
            raise DegenerateQuiverError("quiver has no normal vertices after normalization")
        return cls(normal, kept_stars, tuple(cleaned), tuple(log))

    @property
    def dim(self) -> int:
        """Lattice dimension n (number of normal vertices)"""
        return len(self.normal_vertices)

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self.normal_vertices + self.starred_vertices

    @cached_property
    def index(self) -> dict[VertexId, int]:
        """Coordinate index of each normal vertex"""
        return {v: i for i, v in enumerate(self.normal_vertices)}

    def is_star(self, v: VertexId) -> bool:
        return v in self.starred_vertices

    def arrow_kind(self, arrow: ArrowPair) -> ArrowKind:
        tail, head = arrow
        if self.is_star(tail):
            return ArrowKind.STAR_TO_NORMAL
        if self.is_star(head):
            return ArrowKind.NORMAL_TO_STAR
        return ArrowKind.NORMAL_TO_NORMAL

    def point(self, arrow: ArrowPair) -> IVec:
        """Lattice point u_a of an arrow"""
        tail, head = arrow
        coords = [0] * self.dim
        if not self.is_star(head):
            coords[self.index[head]] += 1
        if not self.is_star(tail):
            coords[self.index[tail]] -= 1
        return tuple(coords)

    def digraph(self, identify: bool = True) -> nx.DiGraph:
        """Directed graph of the quiver, with all stars collapsed to ``IDENTIFIED_STARS`` when ``identify``"""
        graph = nx.DiGraph()
        if identify:
            collapse = {s: IDENTIFIED_STARS for s in self.starred_vertices}
            graph.add_nodes_from(self.normal_vertices)
            if self.starred_vertices:
                graph.add_node(IDENTIFIED_STARS)
            graph.add_edges_from((collapse.get(t, t), collapse.get(h, h)) for t, h in self.arrows)
        else:
            graph.add_nodes_from(self.vertices)
            graph.add_edges_from(self.arrows)
        return graph

    def arrow_label(self, i: int) -> str:
        tail, head = self.arrows[i]
        return f"{tail}->{head}"


@dataclass(frozen=True)
class ArrowPoint:
    """Root point of one arrow"""

    index: int
    arrow: ArrowPair
    point: IVec


@dataclass(frozen=True)
class StarReplacement:
    """Result of starring one vertex of an unstarred quiver

    The projection dropping the starred coordinate maps Root(original) onto
    Root(quiver) and is an integral equivalence.
    """

    original: StarredQuiver
    quiver: StarredQuiver
    vertex: VertexId
    dropped_index: int

    def project(self, point: Sequence[int]) -> IVec:
        return tuple(x for i, x in enumerate(point) if i != self.dropped_index)

    def linear_map(self) -> IMat:
        """Matrix of the projection, shape (n - 1) x n"""
        n = self.original.dim
        keep = [i for i in range(n) if i != self.dropped_index]
        return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in keep)


def identify_stars(q: StarredQuiver) -> StarredQuiver:
    """Collapse all starred vertices into the first one

    Root(q) is unchanged as a point set; duplicate arrows created by the
    identification are removed and logged.
    """
    if len(q.starred_vertices) <= 1:
        return q
    rep = q.starred_vertices[0]
    stars = set(q.starred_vertices)
    arrows = [(rep if t in stars else t, rep if h in stars else h) for t, h in q.arrows]
    result = StarredQuiver.from_arrows(q.normal_vertices, (rep,), arrows)
    log = (*q.normalization_log, f"identified stars {', '.join(q.starred_vertices[1:])} with {rep}")
    return StarredQuiver(result.normal_vertices, result.starred_vertices, result.arrows, log + result.normalization_log)


def find_unreachable_pair(q: StarredQuiver) -> tuple[VertexId, VertexId] | None:
    """A pair ``(u, v)`` with no oriented path ``u -> v`` once stars are identified, or None

    The identified stars are reported as the first starred vertex.
    """
    graph = q.digraph(identify=True)

    def name(node) -> VertexId:
        return q.starred_vertices[0] if node is IDENTIFIED_STARS else node

    root = next(iter(graph.nodes))
    reach = nx.descendants(graph, root) | {root}
    for v in graph.nodes:
        if v not in reach:
            return name(root), name(v)
    back = nx.ancestors(graph, root) | {root}
    for v in graph.nodes:
        if v not in back:
            return name(v), name(root)
    return None


def is_strongly_connected(q: StarredQuiver) -> bool:
    """Whether the quiver with identified stars is strongly connected"""
    return nx.is_strongly_connected(q.digraph(identify=True))


def require_strongly_connected(q: StarredQuiver) -> None:
    """Raise NotStronglyConnectedError naming a violating pair"""
    pair = find_unreachable_pair(q)
    if pair is not None:
        raise NotStronglyConnectedError(*pair)


def root_vertices(q: StarredQuiver) -> list[ArrowPoint]:
    """One root point per arrow, in arrow order"""
    return [ArrowPoint(i, a, q.point(a)) for i, a in enumerate(q.arrows)]


def distinct_root_points(q: StarredQuiver) -> tuple[IVec, ...]:
    """Root points with repeats removed, first occurrence kept"""
    return tuple(dict.fromkeys(q.point(a) for a in q.arrows))


def star_replace(q: StarredQuiver, v: VertexId) -> StarReplacement:
    """Star the vertex ``v`` of an unstarred quiver

    Raises:
        InvalidParameterError: If ``q`` already has stars or ``v`` is not a vertex of it
    """
    if q.starred_vertices:
        raise InvalidParameterError("star_replace needs a quiver without starred vertices")
    if v not in q.index:
        raise InvalidParameterError(f"{v!r} is not a vertex of the quiver")
    normal = tuple(u for u in q.normal_vertices if u != v)
    quiver = StarredQuiver.from_arrows(normal, (v,), q.arrows)
    return StarReplacement(original=q, quiver=quiver, vertex=v, dropped_index=q.index[v])


def ensure_starred(q: StarredQuiver) -> StarredQuiver:
    """Star the first normal vertex of an unstarred quiver; starred quivers pass through"""
    if q.starred_vertices:
        return q
    v = q.normal_vertices[0]
    logger.info(f"Quiver has no starred vertex; starring {v!r}")
    return star_replace(q, v).quiver


def from_acyclic(vertices: Sequence[VertexId], arrows: Iterable[Sequence[VertexId]]) -> StarredQuiver:
    """Star every source and sink of an acyclic quiver

    Raises:
        NotAcyclicError: If the quiver has an oriented cycle
        DegenerateQuiverError: If every vertex ends up starred and identified
    """
    arrow_list = [tuple(a) for a in arrows]
    graph = nx.DiGraph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(arrow_list)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise NotAcyclicError(f"quiver has an oriented cycle through {cycle[0][0]!r}")
    stars = [v for v in vertices if graph.in_degree(v) == 0 or graph.out_degree(v) == 0]
    normal = [v for v in vertices if v not in stars]
    logger.debug(f"from_acyclic: starring sources/sinks {stars}")
    return StarredQuiver.from_arrows(normal, stars, arrow_list)


def complete_bidirected(n: int) -> StarredQuiver:
    """Quiver on v1..vn and one star with every possible arrow"""
    if n < 1:
        raise InvalidParameterError(f"n must be at least 1, got {n}")
    normal = tuple(f"v{i}" for i in range(1, n + 1))
    arrows: list[ArrowPair] = []
    for v in normal:
        arrows += [("*", v), (v, "*")]
    arrows += [(u, v) for u in normal for v in normal if u != v]
    return StarredQuiver(normal, ("*",), tuple(arrows))
