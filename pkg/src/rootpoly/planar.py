"""Plane acyclic quivers, their dual starred quivers and flow polytopes

An embedding is combinatorial: a rotation system (counter-clockwise order of
the arrows at each vertex) plus the boundary of the outer face. Arrow ``i``
has two darts, ``2i`` running tail to head and ``2i + 1`` running back. Faces
are the cycles of the permutation sending a dart ``u -> v`` to the dart leaving
``v`` just before it in the rotation at ``v``; each dart then has its face on
the left.
"""

from __future__ import annotations

import functools
from collections.abc import Mapping
from collections.abc import Sequence
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from functools import cached_property

import networkx as nx
from loguru import logger

from . import exactlin
from .exceptions import EmbeddingError
from .exceptions import InvalidParameterError
from .exceptions import NotAcyclicError
from .exceptions import PreconditionError
from .polytope import Equation
from .polytope import HPolytope
from .polytope import Inequality
from .polytope import VPolytope
from .polytope import hull
from .polytope import is_reflexive
from .polytope import polar_dual
from .polytope import vertices_of
from .polytope import verify_integral_equivalence
from .quiver import StarredQuiver
from .quiver import distinct_root_points
from .types import ArrowPair
from .types import IMat
from .types import IVec
from .types import Scalar
from .types import VertexId

DUAL_STAR = "*"


@dataclass(frozen=True)
class PlaneQuiver:
    """Acyclic connected quiver with a rotation system and an outer face

    Attributes:
        vertices: Vertex ids
        arrows: ``(tail, head)`` per arrow; parallel arrows are allowed
        names: Arrow names, aligned with ``arrows``
        rotation: Counter-clockwise arrow indices at each vertex, aligned with ``vertices``
        outer_face: Indices of the arrows on the outer boundary
        outer_dart: Optional dart with the outer face on its left, needed only
            when several faces share the outer boundary (a quiver that is one cycle)
    """

    vertices: tuple[VertexId, ...]
    arrows: tuple[ArrowPair, ...]
    names: tuple[str, ...]
    rotation: tuple[tuple[int, ...], ...]
    outer_face: frozenset[int]
    outer_dart: int | None = None

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidParameterError("vertex ids must be unique")
        if len(self.names) != len(self.arrows) or len(set(self.names)) != len(self.names):
            raise InvalidParameterError("every arrow needs a unique name")
        known = set(self.vertices)
        for tail, head in self.arrows:
            if tail not in known or head not in known:
                raise InvalidParameterError(f"arrow {tail}->{head} uses an unknown vertex")
            if tail == head:
                raise InvalidParameterError(f"loop at {tail}")
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arrows)
        if not nx.is_directed_acyclic_graph(graph):
            raise NotAcyclicError("plane quiver has an oriented cycle")
        if not nx.is_weakly_connected(graph):
            raise PreconditionError("plane quiver is not connected")
        if len(self.rotation) != len(self.vertices):
            raise EmbeddingError("rotation system must list every vertex")
        for v, order in zip(self.vertices, self.rotation, strict=True):
            incident = {i for i, (t, h) in enumerate(self.arrows) if v in (t, h)}
            if len(order) != len(set(order)) or set(order) != incident:
                raise EmbeddingError(f"rotation at {v!r} must list each incident arrow exactly once")
        if self.outer_dart is not None and not 0 <= self.outer_dart < 2 * len(self.arrows):
            raise InvalidParameterError(f"outer dart {self.outer_dart} is out of range")

    @classmethod
    def build(
        cls,
        vertices: Sequence[VertexId],
        arrows: Mapping[str, Sequence[VertexId]],
        rotation: Mapping[VertexId, Sequence[str]],
        outer_face: Sequence[str],
        outer_dart: int | None = None,
    ) -> PlaneQuiver:
        """Build from named arrows, a rotation by arrow name and the outer-face arrow names"""
        names = tuple(arrows)
        index = {name: i for i, name in enumerate(names)}
        unknown = [a for order in rotation.values() for a in order if a not in index]
        unknown += [a for a in outer_face if a not in index]
        if unknown:
            raise InvalidParameterError(f"unknown arrow names {sorted(set(unknown))}")
        missing = [v for v in vertices if v not in rotation]
        if missing:
            raise EmbeddingError(f"no rotation given at {missing}")
        return cls(
            tuple(vertices),
            tuple((t, h) for t, h in arrows.values()),
            names,
            tuple(tuple(index[a] for a in rotation[v]) for v in vertices),
            frozenset(index[a] for a in outer_face),
            outer_dart,
        )

    @cached_property
    def position(self) -> dict[VertexId, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def dart_origin(self, dart: int) -> VertexId:
        tail, head = self.arrows[dart // 2]
        return tail if dart % 2 == 0 else head

    def dart_target(self, dart: int) -> VertexId:
        tail, head = self.arrows[dart // 2]
        return head if dart % 2 == 0 else tail


@dataclass(frozen=True)
class Face:
    """Face boundary as a cyclic dart sequence (face on the left of each dart)"""

    name: str
    darts: tuple[int, ...]

    @property
    def arrows(self) -> frozenset[int]:
        return frozenset(d // 2 for d in self.darts)


@dataclass(frozen=True)
class PlaneFaces:
    """Bounded faces in tracing order and the outer face"""

    bounded: tuple[Face, ...]
    outer: Face
    face_of_dart: dict[int, str] = field(compare=False)


@dataclass(frozen=True)
class PlanarDual:
    """Dual starred quiver of a plane quiver

    ``crossings[i]`` is the (left face, right face) pair crossed by primal
    arrow ``i``; the outer face is the star.
    """

    primal: PlaneQuiver
    faces: PlaneFaces
    quiver: StarredQuiver
    crossings: tuple[tuple[str, str], ...]

    def point(self, i: int) -> IVec:
        """Root point of the dual of primal arrow ``i``"""
        left, right = self.crossings[i]
        index = self.quiver.index
        coords = [0] * self.quiver.dim
        if right != DUAL_STAR:
            coords[index[right]] += 1
        if left != DUAL_STAR:
            coords[index[left]] -= 1
        return tuple(coords)


def _next_dart(pq: PlaneQuiver, dart: int) -> int:
    v = pq.dart_target(dart)
    order = pq.rotation[pq.position[v]]
    k = order.index(dart // 2)
    arrow = order[k - 1]
    return 2 * arrow if pq.arrows[arrow][0] == v else 2 * arrow + 1


def _trace(pq: PlaneQuiver) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    cycles = []
    for start in range(2 * len(pq.arrows)):
        if start in seen:
            continue
        cycle = []
        dart = start
        while dart not in seen:
            seen.add(dart)
            cycle.append(dart)
            dart = _next_dart(pq, dart)
        cycles.append(tuple(cycle))
    return cycles


def faces_of(pq: PlaneQuiver) -> PlaneFaces:
    """Trace the faces of the embedding

    Raises:
        EmbeddingError: If the rotation system is not planar (Euler
            characteristic is not 2) or the outer face does not match a traced face
    """
    cycles = _trace(pq)
    euler = len(pq.vertices) - len(pq.arrows) + len(cycles)
    if euler != 2:
        raise EmbeddingError(f"rotation system has Euler characteristic {euler}, not a plane embedding")
    matches = [i for i, c in enumerate(cycles) if frozenset(d // 2 for d in c) == pq.outer_face]
    if pq.outer_dart is not None:
        matches = [i for i in matches if pq.outer_dart in cycles[i]]
    if not matches:
        raise EmbeddingError(f"no face has boundary {sorted(pq.names[i] for i in pq.outer_face)}")
    if len(matches) > 1:
        logger.warning(f"{len(matches)} faces have the given outer boundary; using the first traced")
    outer = Face(DUAL_STAR, cycles[matches[0]])
    bounded = []
    for c in cycles:
        if c is not cycles[matches[0]]:
            bounded.append(Face(f"face{len(bounded) + 1}", c))
    face_of_dart = {d: f.name for f in (*bounded, outer) for d in f.darts}
    logger.debug(f"faces_of: {len(bounded)} bounded faces")
    return PlaneFaces(tuple(bounded), outer, face_of_dart)


def dual_quiver(pq: PlaneQuiver) -> PlanarDual:
    """Dual starred quiver: one vertex per bounded face, a star for the outer face

    The dual of arrow ``a`` runs from the face on the left of ``a`` to the face
    on its right.

    Raises:
        DegenerateQuiverError: If there is no bounded face
    """
    faces = faces_of(pq)
    crossings = tuple((faces.face_of_dart[2 * i], faces.face_of_dart[2 * i + 1]) for i in range(len(pq.arrows)))
    quiver = StarredQuiver.from_arrows(
        tuple(f.name for f in faces.bounded),
        (DUAL_STAR,),
        crossings,
    )
    return PlanarDual(pq, faces, quiver, crossings)


@dataclass(frozen=True)
class FlowPolytope:
    """Flow polytope ``{r in V_Q : r_a >= -1}``

    Attributes:
        arrows: Arrows of the quiver (one coordinate each)
        polytope: Inequalities ``r_a >= -1`` and one conservation equation per vertex
        basis: Integer basis of the flow lattice ``V_Q`` intersected with ``Z^arrows``
    """

    arrows: tuple[ArrowPair, ...]
    polytope: HPolytope
    basis: IMat

    @property
    def dim(self) -> int:
        return len(self.basis)

    def lattice_coordinates(self) -> HPolytope:
        """The polytope in coordinates ``y`` with ``r = sum y_i basis_i``"""
        inequalities = []
        for a in range(len(self.arrows)):
            column = tuple(b[a] for b in self.basis)
            if any(column):
                inequalities.append(Inequality.make(column, 1))
        return HPolytope(self.dim, tuple(sorted(set(inequalities), key=lambda f: (f.normal, f.offset))))

    def to_flow(self, y: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """Flow-space point of lattice coordinates ``y``"""
        return tuple(sum((Fraction(c) * b[a] for c, b in zip(y, self.basis, strict=True)), Fraction(0))
                     for a in range(len(self.arrows)))

    def vertices(self) -> VPolytope:
        """Vertices in lattice coordinates"""
        return vertices_of(self.lattice_coordinates())


def _incidence(vertices: Sequence[VertexId], arrows: Sequence[ArrowPair]) -> list[list[int]]:
    """Row per vertex: +1 on incoming arrows, -1 on outgoing"""
    rows = []
    for v in vertices:
        rows.append([(1 if h == v else 0) - (1 if t == v else 0) for t, h in arrows])
    return rows


def _require_acyclic(vertices: Sequence[VertexId], arrows: Sequence[ArrowPair]) -> None:
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(vertices)
    graph.add_edges_from(arrows)
    if not nx.is_directed_acyclic_graph(graph):
        raise NotAcyclicError("flow polytopes need an acyclic quiver")
    if not nx.is_weakly_connected(graph):
        raise PreconditionError("flow polytopes need a connected quiver")


def flow_polytope(vertices: Sequence[VertexId], arrows: Sequence[Sequence[VertexId]]) -> FlowPolytope:
    """Canonical-weight flow polytope of an acyclic connected quiver

    Raises:
        NotAcyclicError: If the quiver has an oriented cycle
    """
    arrow_pairs = tuple((t, h) for t, h in arrows)
    _require_acyclic(vertices, arrow_pairs)
    incidence = _incidence(vertices, arrow_pairs)
    width = len(arrow_pairs)
    unit = [tuple(1 if j == i else 0 for j in range(width)) for i in range(width)]
    inequalities = tuple(Inequality(u, Fraction(1)) for u in unit)
    equations = tuple(Equation(tuple(row), Fraction(0)) for row in incidence)
    basis = exactlin.integer_kernel(incidence, width)
    logger.debug(f"flow polytope: {width} arrows, flow lattice of rank {len(basis)}")
    return FlowPolytope(arrow_pairs, HPolytope(width, inequalities, equations), basis)


def nonnegative_flow_polytope(vertices: Sequence[VertexId], arrows: Sequence[Sequence[VertexId]]) -> HPolytope:
    """Flow polytope with canonical weights in ``R_a >= 0`` coordinates (``r_a = R_a - 1``)"""
    arrow_pairs = tuple((t, h) for t, h in arrows)
    _require_acyclic(vertices, arrow_pairs)
    width = len(arrow_pairs)
    inequalities = tuple(Inequality(tuple(1 if j == i else 0 for j in range(width)), Fraction(0)) for i in range(width))
    equations = tuple(Equation(tuple(row), Fraction(sum(row))) for row in _incidence(vertices, arrow_pairs))
    return HPolytope(width, inequalities, equations)


@dataclass(frozen=True)
class FlowDualityReport:
    """Outcome of ``verify_flow_duality``

    Attributes:
        holds: Overall verdict
        flows_are_labelings: Every flow-lattice basis vector is a 0-sum labeling of the dual
        lattices_match: Those labelings form a basis of the dual's 0-sum lattice
        polar_matches: The polar dual of Fl equals the hull of the arrow functionals
        equivalent: Root(dual) is integrally equivalent to that polar dual
        reflexive: Fl is reflexive in flow-lattice coordinates
        linear_map: Matrix sending each arrow functional to the dual root point
    """

    holds: bool
    flows_are_labelings: bool
    lattices_match: bool
    polar_matches: bool
    equivalent: bool
    reflexive: bool
    flow_dim: int
    dual_dim: int
    linear_map: IMat | None = None
    dual: PlanarDual | None = field(default=None, compare=False)


def _face_values(dual: PlanarDual, flow: Sequence[int]) -> dict[str, int] | None:
    """Bullet labeling of the dual with differences ``flow`` across each arrow, None if inconsistent"""
    graph = nx.MultiGraph()
    graph.add_nodes_from(dual.quiver.vertices)
    for i, (left, right) in enumerate(dual.crossings):
        graph.add_edge(left, right, key=i)
    values = {DUAL_STAR: 0}
    for u, v in nx.bfs_edges(graph, DUAL_STAR):
        key = next(iter(graph.get_edge_data(u, v)))
        left, right = dual.crossings[key]
        step = flow[key] if (left, right) == (u, v) else -flow[key]
        values[v] = values[u] + step
    for i, (left, right) in enumerate(dual.crossings):
        if values[right] - values[left] != flow[i]:
            return None
    return values


def verify_flow_duality(pq: PlaneQuiver) -> FlowDualityReport:
    """Check that Root of the dual quiver is integrally equivalent to the polar dual of Fl

    Each flow ``r`` is read as the arrow labeling ``r_dual(a) = r_a`` of the
    dual quiver. In flow-lattice coordinates the polar dual of Fl is the hull
    of the coordinate functionals ``r -> r_a``, and the map sending the
    functional of ``a`` to the root point of its dual arrow must be an integral
    equivalence.

    Raises:
        UnboundedPolytopeError: If the flow polytope is unbounded
        DegenerateQuiverError: If the embedding has no bounded face
    """
    dual = dual_quiver(pq)
    fl = flow_polytope(pq.vertices, pq.arrows)
    n = dual.quiver.dim
    flow_vertices = fl.vertices()

    labelings = [_face_values(dual, b) for b in fl.basis]
    flows_are_labelings = all(values is not None for values in labelings)
    lattices_match = False
    if flows_are_labelings and len(fl.basis) == n:
        bullets = [[values[v] for v in dual.quiver.normal_vertices] for values in labelings]
        lattices_match = n == 0 or abs(exactlin.determinant(bullets)) == 1

    functionals = [tuple(b[a] for b in fl.basis) for a in range(len(pq.arrows))]
    polar = polar_dual(HPolytope(fl.dim, fl.lattice_coordinates().inequalities))
    functional_hull = hull(functionals)[0]
    polar_matches = polar.vertices == functional_hull.vertices

    dual_points = [dual.point(i) for i in range(len(pq.arrows))]
    linear_map = _solve_linear_map(functionals, dual_points, fl.dim, n)
    equivalent = False
    if linear_map is not None:
        root = hull(distinct_root_points(dual.quiver))[0]
        equivalent = verify_integral_equivalence(functional_hull, root, linear_map)
    reflexive = bool(is_reflexive(flow_vertices))
    holds = flows_are_labelings and lattices_match and polar_matches and equivalent and reflexive
    logger.info(f"flow duality: {'holds' if holds else 'fails'} (flow dim {fl.dim}, dual dim {n})")
    return FlowDualityReport(
        holds, flows_are_labelings, lattices_match, polar_matches, equivalent, reflexive, fl.dim, n, linear_map, dual
    )


def _solve_linear_map(sources: Sequence[IVec], targets: Sequence[IVec], k: int, n: int) -> IMat | None:
    """Integer matrix ``A`` (n x k) with ``A s = t`` for every pair, or None"""
    rows = []
    for j in range(n):
        row = exactlin.solve_rational(sources, [t[j] for t in targets], k)
        if row is None:
            return None
        ints = exactlin.as_integral(row)
        if ints is None:
            return None
        rows.append(ints)
    return tuple(rows)


def _half(d: tuple[Fraction, Fraction]) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _angle_order(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def plane_quiver_from_coordinates(
    vertices: Sequence[VertexId],
    arrows: Mapping[str, Sequence[VertexId]] | Sequence[Sequence[VertexId]],
    coordinates: Mapping[VertexId, Sequence[Scalar]],
) -> PlaneQuiver:
    """Plane quiver from a straight-line drawing

    The rotation comes from sorting arrow directions by angle; the outer face
    is the one traced clockwise (negative signed area).

    Raises:
        EmbeddingError: If two arrows overlap or the drawing is not plane
    """
    named = dict(arrows) if isinstance(arrows, Mapping) else {f"a{i}": a for i, a in enumerate(arrows)}
    pairs = [frozenset(a) for a in named.values()]
    if len(set(pairs)) != len(pairs):
        raise EmbeddingError("parallel arrows cannot be drawn with straight lines")
    point = {v: (Fraction(coordinates[v][0]), Fraction(coordinates[v][1])) for v in vertices}

    def direction(v: VertexId, name: str) -> tuple[Fraction, Fraction]:
        tail, head = named[name]
        other = head if tail == v else tail
        return point[other][0] - point[v][0], point[other][1] - point[v][1]

    rotation = {}
    for v in vertices:
        incident = [name for name, (t, h) in named.items() if v in (t, h)]
        order = functools.cmp_to_key(lambda a, b, v=v: _angle_order(direction(v, a), direction(v, b)))
        rotation[v] = sorted(incident, key=order)

    draft = PlaneQuiver.build(vertices, named, rotation, list(named))
    outer = None
    for cycle in _trace(draft):
        corners = [point[draft.dart_origin(d)] for d in cycle]
        area = sum(x0 * y1 - x1 * y0 for (x0, y0), (x1, y1) in zip(corners, corners[1:] + corners[:1], strict=True))
        if area < 0:
            if outer is not None:
                raise EmbeddingError("drawing has crossing arrows")
            outer = cycle
    if outer is None:
        raise EmbeddingError("no clockwise face found; drawing is degenerate")
    names = list(named)
    return PlaneQuiver.build(vertices, named, rotation, [names[d // 2] for d in outer], outer_dart=outer[0])
