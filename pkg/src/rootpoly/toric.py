"""Toric invariants of the face fan of Root(Q)

Features:
- Small resolution of the face fan (no new rays, every cone unimodular)
- Unimodular triangulation of Root(Q) and an integer decomposition spot check
- 0-sum, independent-sum and Cartier lattices with SNF rank and torsion
- Picard group, class group and Fano index
- Canonical extension of a ranked poset and the Hibi resolution data
- Quiver Laurent polynomials, Newton and superpotential polytopes, divisor polytopes
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Mapping
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from fractions import Fraction
from functools import cached_property

import networkx as nx
import sympy
from loguru import logger

from . import exactlin
from .exceptions import InvalidParameterError
from .exceptions import InvariantError
from .facets import arrow_to_bullet
from .facets import face_fan
from .facets import facet_components
from .facets import facet_labelings
from .fans import Fan
from .fans import RefinementResult
from .fans import is_unimodular
from .fans import normal_fan
from .fans import refines
from .polytope import HPolytope
from .polytope import Inequality
from .polytope import VPolytope
from .polytope import hull
from .polytope import lattice_points
from .polytope import scale
from .polytope import triangulate
from .poset import FinitePoset
from .poset import StarredPoset
from .poset import bounded_quiver
from .poset import hasse_quiver
from .poset import max_extension
from .poset import order_polytope
from .poset import require_ranked
from .poset import top_name
from .quiver import StarredQuiver
from .quiver import distinct_root_points
from .quiver import ensure_starred
from .quiver import require_strongly_connected
from .types import IMat
from .types import IVec
from .types import Scalar
from .types import VertexId

DEFAULT_MAX_WORKERS = 4


# ---------------------------------------------------------------------------
# Small resolution and triangulations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    """Simplicial refinement of a face fan using only its rays

    Attributes:
        fan: The refined fan
        source: The face fan it refines
        parents: For each refined cone, the index of the source cone containing it
        subdivided: Indices of the source cones that were not simplicial
    """

    fan: Fan
    source: Fan
    parents: tuple[int, ...]
    subdivided: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.fan.cones)


def _subdivide(source: Fan, i: int) -> list[frozenset[int]]:
    """Pulling triangulation of one maximal cone over its rays in global order"""
    members = sorted(source.cones[i])
    gens = [source.rays[j] for j in members]
    if len(members) == source.dim:
        pieces = [frozenset(members)]
    else:
        pieces = [frozenset(members[k] for k in simplex) for simplex in triangulate(gens)]
    for piece in pieces:
        det = exactlin.determinant([source.rays[j] for j in sorted(piece)])
        if abs(det) != 1:
            raise InvariantError(f"cone {sorted(piece)} of the refinement has determinant {det}")
    return pieces


def small_resolution_fan(q: StarredQuiver, max_workers: int = DEFAULT_MAX_WORKERS) -> Triangulation:
    """Refine the face fan of Root(q) into unimodular cones without adding rays

    Each non-simplicial cone is triangulated by pulling its rays in the fan's
    ray order, so neighbouring cones induce the same subdivision on shared faces.

    Raises:
        InvariantError: If a resulting cone is not unimodular
    """
    source = face_fan(q)
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        results = list(pool.map(lambda i: _subdivide(source, i), range(len(source.cones))))
    cones: list[frozenset[int]] = []
    parents: list[int] = []
    subdivided = []
    for i, pieces in enumerate(results):
        if len(pieces) > 1 or len(source.cones[i]) != source.dim:
            subdivided.append(i)
        cones.extend(pieces)
        parents.extend([i] * len(pieces))
    fan = Fan(source.dim, source.rays, tuple(cones))
    logger.info(f"small resolution: {len(subdivided)} of {len(source.cones)} cones subdivided into {len(cones)} cones")
    return Triangulation(fan, source, tuple(parents), tuple(subdivided))


@dataclass(frozen=True)
class RootTriangulation:
    """Triangulation of Root(Q) into simplices through the origin

    ``points[0]`` is the origin; each simplex is a tuple of indices into ``points``.
    """

    points: tuple[IVec, ...]
    simplices: tuple[tuple[int, ...], ...]

    def volumes(self) -> list[int]:
        """Normalized volume of each simplex"""
        result = []
        for simplex in self.simplices:
            rows = [self.points[i] for i in simplex if i != 0]
            result.append(abs(exactlin.determinant(rows)))
        return result


def unimodular_triangulation(q: StarredQuiver, max_workers: int = DEFAULT_MAX_WORKERS) -> RootTriangulation:
    """Cones of the small resolution, each closed up with the origin"""
    refined = small_resolution_fan(q, max_workers).fan
    origin = (0,) * refined.dim
    points = (origin, *refined.rays)
    simplices = tuple(tuple(sorted((0, *(j + 1 for j in cone)))) for cone in refined.cones)
    return RootTriangulation(points, simplices)


def integer_decomposition_check(q: StarredQuiver, k: int = 2) -> bool:
    """Whether every lattice point of ``k * Root(q)`` is a sum of ``k`` lattice points of Root(q)"""
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    root = hull(distinct_root_points(ensure_starred(q)))[0]
    base = lattice_points(root)
    sums = set(base)
    for _ in range(k - 1):
        sums = {tuple(a + b for a, b in zip(s, p, strict=True)) for s in sums for p in base}
    for point in lattice_points(scale(root, k)):
        if point not in sums:
            logger.warning(f"IDP fails at {point} for k={k}")
            return False
    return True


# ---------------------------------------------------------------------------
# Lattices and groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePresentation:
    """Abelian group ``span(generators) / span(relations)`` inside ``Z^ambient``

    Attributes:
        ambient: Dimension of the ambient lattice (number of arrows)
        generators: Independent rows spanning the group lattice
        relations: Rows of a sublattice of the generator lattice
        conditions: Human-readable equations cutting the generator lattice out, when known
        named: Distinguished elements (for example Picard generators), by name
    """

    ambient: int
    generators: IMat
    relations: IMat = ()
    conditions: tuple[str, ...] = ()
    named: dict[str, IVec] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if exactlin.lattice_rank(self.generators, self.ambient) != len(self.generators):
            raise InvalidParameterError("generators must be linearly independent")
        for row in self.relations:
            if not exactlin.in_lattice(self.generators, row):
                raise InvariantError(f"relation {row} lies outside the generator lattice")

    @cached_property
    def _smith(self) -> exactlin.SmithForm:
        coords = [[int(c) for c in exactlin.lattice_coordinates(self.generators, r)] for r in self.relations]
        return exactlin.smith_normal_form(coords, len(self.generators))

    @property
    def rank(self) -> int:
        """Free rank of the quotient"""
        return len(self.generators) - self._smith.rank

    @property
    def torsion(self) -> tuple[int, ...]:
        """Invariant factors greater than one"""
        return tuple(d for d in self._smith.diagonal if d > 1)

    def contains(self, v: Sequence[Scalar]) -> bool:
        """Whether ``v`` lies in the generator lattice"""
        return exactlin.in_lattice(self.generators, v)

    def classify(self, v: Sequence[Scalar]) -> tuple[IVec, IVec]:
        """Class of ``v`` as (torsion residues, free coordinates)

        Raises:
            InvalidParameterError: If ``v`` is outside the generator lattice
        """
        coords = exactlin.lattice_coordinates(self.generators, v)
        if coords is None or any(c.denominator != 1 for c in coords):
            raise InvalidParameterError(f"{tuple(v)} is not in the generator lattice")
        smith = self._smith
        y = [sum(int(c) * smith.v[i][j] for i, c in enumerate(coords)) for j in range(len(self.generators))]
        diagonal = smith.diagonal
        torsion = tuple(y[j] % d for j, d in enumerate(diagonal) if d > 1)
        free = tuple(y[smith.rank:])
        return torsion, free

    def divisibility(self, v: Sequence[Scalar]) -> int:
        """Largest ``d`` such that the class of ``v`` is ``d`` times another class (0 for the zero class)"""
        torsion, free = self.classify(v)
        factors = [d for d in self._smith.diagonal if d > 1]
        g = math.gcd(*free) if free else 0
        if g == 0:
            return 0
        best = 1
        for d in range(1, g + 1):
            if g % d == 0 and all(t % math.gcd(d, n) == 0 for t, n in zip(torsion, factors, strict=True)):
                best = d
        return best


def _require_one_ray_per_arrow(q: StarredQuiver) -> None:
    if len(distinct_root_points(q)) != len(q.arrows):
        raise InvalidParameterError("divisor computations need distinct root points per arrow; identify stars first")


def _point_matrix(q: StarredQuiver) -> list[IVec]:
    return [q.point(a) for a in q.arrows]


def zero_sum_lattice(q: StarredQuiver) -> LatticePresentation:
    """Lattice of integral 0-sum arrow labelings (images of bullet labelings)"""
    require_strongly_connected(q)
    q = ensure_starred(q)
    points = _point_matrix(q)
    rows = [tuple(p[i] for p in points) for i in range(q.dim)]
    return LatticePresentation(len(q.arrows), exactlin.row_lattice_basis(rows, len(q.arrows)))


def independent_sum_lattice(q: StarredQuiver) -> LatticePresentation:
    """Lattice of labelings ``c_a = l(head) - l(tail)`` for vertex labelings ``l`` (stars included)"""
    require_strongly_connected(q)
    q = ensure_starred(q)
    rows = []
    for v in q.vertices:
        rows.append(tuple((1 if h == v else 0) - (1 if t == v else 0) for t, h in q.arrows))
    return LatticePresentation(len(q.arrows), exactlin.row_lattice_basis(rows, len(q.arrows)))


def _format_condition(w: Sequence[int]) -> str:
    def side(terms: list[tuple[int, int]]) -> str:
        if not terms:
            return "0"
        return " + ".join(f"c_{i}" if c == 1 else f"{c} c_{i}" for i, c in terms)

    left = [(i, c) for i, c in enumerate(w) if c > 0]
    right = [(i, -c) for i, c in enumerate(w) if c < 0]
    return f"{side(left)} = {side(right)}"


def cartier_conditions(q: StarredQuiver) -> list[IVec]:
    """Independent integer conditions ``<w, c> = 0`` defining the Cartier lattice

    For each facet, the values ``c_a`` on its -1 arrows must extend to a
    linear functional; the conditions are the integer relations among the
    root points of the facet.
    """
    require_strongly_connected(q)
    q = ensure_starred(q)
    points = _point_matrix(q)
    width = len(q.arrows)
    candidates: list[IVec] = []
    for labeling in facet_labelings(q):
        flat = sorted(labeling.flat)
        columns = [tuple(points[a][i] for a in flat) for i in range(q.dim)]
        for relation in exactlin.integer_kernel(columns, len(flat)):
            w = [0] * width
            for a, c in zip(flat, relation, strict=True):
                w[a] = c
            w = exactlin.primitive(w)
            if next(c for c in w if c) < 0:
                w = tuple(-c for c in w)
            candidates.append(w)
    chosen: list[IVec] = []
    for w in dict.fromkeys(candidates):
        if exactlin.rank([*chosen, w], width) > len(chosen):
            chosen.append(w)
    return chosen


def cartier_lattice(q: StarredQuiver) -> LatticePresentation:
    """Torus-invariant Cartier divisors as a sublattice of ``Z^arrows``"""
    conditions = cartier_conditions(q)
    q = ensure_starred(q)
    width = len(q.arrows)
    basis = exactlin.integer_kernel(conditions, width) if conditions else exactlin.identity(width)
    return LatticePresentation(width, basis, (), tuple(_format_condition(w) for w in conditions))


def is_cartier(q: StarredQuiver, d: Sequence[int]) -> bool:
    """Whether the divisor ``sum d_a D_a`` is Cartier"""
    q = ensure_starred(q)
    if len(d) != len(q.arrows):
        raise InvalidParameterError(f"divisor has {len(d)} coefficients, quiver has {len(q.arrows)} arrows")
    return all(exactlin.dot(w, d) == 0 for w in cartier_conditions(q))


def _source_star(q: StarredQuiver) -> VertexId:
    outgoing_only = [s for s in q.starred_vertices if all(h != s for _, h in q.arrows)]
    return (outgoing_only or list(q.starred_vertices))[0]


def picard_group(q: StarredQuiver) -> LatticePresentation:
    """Independent-sum lattice modulo the 0-sum lattice

    This is the Picard group when ``q`` comes from the canonical extension of a
    ranked poset. The classes ``D_j`` (arrows into a non-source star minus arrows out of it;
    for sink stars the sum of the incoming arrows) are recorded in ``named``.
    """
    q = ensure_starred(q)
    _require_one_ray_per_arrow(q)
    independent = independent_sum_lattice(q)
    cartier = cartier_lattice(q)
    if not exactlin.same_lattice(independent.generators, cartier.generators):
        logger.warning("independent-sum lattice differs from the Cartier lattice; "
                       "the quotient is not the Picard group for this quiver")
    zero_sum = zero_sum_lattice(q)
    source = _source_star(q)
    named = {}
    for star in q.starred_vertices:
        if star != source:
            named[f"D[{star}]"] = tuple(int(h == star) - int(t == star) for t, h in q.arrows)
    return LatticePresentation(len(q.arrows), independent.generators, zero_sum.generators, cartier.conditions, named)


def picard_group_general(q: StarredQuiver) -> LatticePresentation:
    """Cartier lattice modulo the 0-sum lattice"""
    q = ensure_starred(q)
    _require_one_ray_per_arrow(q)
    cartier = cartier_lattice(q)
    return LatticePresentation(len(q.arrows), cartier.generators, zero_sum_lattice(q).generators, cartier.conditions)


def class_group(q: StarredQuiver) -> LatticePresentation:
    """Weil divisors ``Z^arrows`` modulo the 0-sum lattice"""
    q = ensure_starred(q)
    _require_one_ray_per_arrow(q)
    width = len(q.arrows)
    return LatticePresentation(width, exactlin.identity(width), zero_sum_lattice(q).generators)


def fano_index(q: StarredQuiver) -> int:
    """Largest ``d`` dividing the anticanonical class in the Picard group"""
    pic = picard_group_general(q)
    anticanonical = (1,) * pic.ambient
    if not pic.contains(anticanonical):
        raise InvariantError("anticanonical divisor is not Cartier")
    return pic.divisibility(anticanonical)


# ---------------------------------------------------------------------------
# Posets
# ---------------------------------------------------------------------------


def canonical_extension(p: FinitePoset) -> StarredPoset:
    """Quotient of the maximal extension identifying tops whose stars share a facet component

    Raises:
        NotRankedError: If ``p`` is not ranked
        InvariantError: If tops of different rank end up identified
    """
    require_ranked(p)
    extended = max_extension(p)
    ranks = require_ranked(extended)
    tops = [top_name(m) for m in p.maximal]
    top_set = set(tops)
    classes = nx.utils.UnionFind(tops)
    by_rank: dict[int, list[VertexId]] = {}
    for t in tops:
        by_rank.setdefault(ranks[t], []).append(t)
    if any(len(group) > 1 for group in by_rank.values()):
        q = hasse_quiver(extended)
        for labeling in facet_labelings(q):
            for component in facet_components(q, labeling):
                members = [s for s in component.stars if s in top_set]
                if len({ranks[s] for s in members}) > 1:
                    raise InvariantError(f"tops of different rank share a facet component: {sorted(members)}")
                if len(members) > 1:
                    classes.union(*members)
    else:
        logger.debug("canonical extension: all tops have distinct ranks, nothing to identify")

    order = {t: i for i, t in enumerate(tops)}
    merged: dict[VertexId, VertexId] = {}
    for group in sorted((sorted(g, key=order.__getitem__) for g in classes.to_sets()), key=lambda g: order[g[0]]):
        name = group[0] if len(group) == 1 else top_name("|".join(t[len("hat1["):-1] for t in group))
        for t in group:
            merged[t] = name
    new_tops = tuple(dict.fromkeys(merged[t] for t in tops))
    covers = []
    for lower, upper in extended.poset.covers:
        covers.append((lower, merged.get(upper, upper)))
    elements = tuple(e for e in extended.poset.elements if e not in merged) + new_tops
    stars = (extended.stars[0], *new_tops)
    logger.info(f"canonical extension: {len(tops)} tops merged into {len(new_tops)}")
    return StarredPoset(FinitePoset(elements, tuple(covers)), stars)


@dataclass(frozen=True)
class HibiResolution:
    """Face fan of the bounded quiver against the normal fan of the order polytope

    Attributes:
        face_fan: Face fan of Root(Q) for the bounded extension
        normal_fan: Normal fan of the order polytope
        refinement: Whether (and how) the face fan refines the normal fan
        resolution: Unimodular refinement of the face fan
        picard_rank: Picard rank of the terminal partial resolution (tops of the canonical extension)
        smooth_picard_rank: Picard rank of the smooth resolution (class group rank)
    """

    face_fan: Fan
    normal_fan: Fan
    refinement: RefinementResult
    resolution: Triangulation
    picard_rank: int
    smooth_picard_rank: int


def hibi_resolution(p: FinitePoset, max_workers: int = DEFAULT_MAX_WORKERS) -> HibiResolution:
    """Small resolutions of the Hibi toric variety of a ranked poset"""
    require_ranked(p)
    q = bounded_quiver(p)
    ff = face_fan(q)
    nf = normal_fan(order_polytope(p))
    refinement = refines(ff, nf)
    resolution = small_resolution_fan(q, max_workers)
    canonical = hasse_quiver(canonical_extension(p))
    picard_rank = picard_group(canonical).rank
    smooth_rank = len(resolution.fan.rays) - ff.dim
    return HibiResolution(ff, nf, refinement, resolution, picard_rank, smooth_rank)


# ---------------------------------------------------------------------------
# Superpotentials and divisor polytopes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentTerm:
    """Monomial ``prod q_i^quantum[i] * prod x_j^exponents[j]`` of one arrow"""

    arrow: int
    quantum: IVec
    exponents: IVec


@dataclass(frozen=True)
class QuiverLaurent:
    """Quiver Laurent polynomial, one term per arrow"""

    variables: tuple[str, ...]
    parameters: tuple[str, ...]
    terms: tuple[LaurentTerm, ...]
    quiver: StarredQuiver | None = field(default=None, compare=False)

    def _monomial(self, term: LaurentTerm) -> str:
        num, den = [], []
        for name, e in itertools.chain(zip(self.parameters, term.quantum, strict=True),
                                       zip(self.variables, term.exponents, strict=True)):
            if e == 0:
                continue
            factor = name if abs(e) == 1 else f"{name}^{abs(e)}"
            (num if e > 0 else den).append(factor)
        text = "*".join(num) if num else "1"
        if den:
            text += "/" + ("*".join(den) if len(den) == 1 else f"({'*'.join(den)})")
        return text

    def __str__(self) -> str:
        return " + ".join(self._monomial(t) for t in self.terms)

    def as_expr(self) -> sympy.Expr:
        """The polynomial as a sympy expression"""
        q = sympy.symbols(self.parameters) if self.parameters else ()
        x = sympy.symbols(self.variables)
        q = q if isinstance(q, tuple) else (q,)
        x = x if isinstance(x, tuple) else (x,)
        expr = sympy.Integer(0)
        for term in self.terms:
            monomial = sympy.Integer(1)
            for symbol, e in itertools.chain(zip(q, term.quantum, strict=True), zip(x, term.exponents, strict=True)):
                monomial *= symbol**e
            expr += monomial
        return expr


def default_weights(q: StarredQuiver) -> dict[VertexId, str | int]:
    """Weight 1 on stars with outgoing arrows, a fresh parameter on every sink star"""
    sinks = [s for s in q.starred_vertices if all(t != s for t, _ in q.arrows)]
    names = ["q"] if len(sinks) == 1 else [f"q_{i}" for i in range(1, len(sinks) + 1)]
    weights: dict[VertexId, str | int] = {s: 1 for s in q.starred_vertices}
    weights.update(zip(sinks, names, strict=True))
    return weights


def superpotential(q: StarredQuiver, weights: Mapping[VertexId, str | int] | None = None) -> QuiverLaurent:
    """Head-over-tail Laurent monomial per arrow; stars contribute their weight

    ``weights`` maps each star to a parameter name or to 1.
    """
    require_strongly_connected(q)
    q = ensure_starred(q)
    weights = default_weights(q) if weights is None else dict(weights)
    missing = [s for s in q.starred_vertices if s not in weights]
    if missing:
        raise InvalidParameterError(f"no weight for stars {missing}")
    for s, w in weights.items():
        if w != 1 and not isinstance(w, str):
            raise InvalidParameterError(f"weight of {s!r} must be 1 or a parameter name, got {w!r}")
    parameters = tuple(dict.fromkeys(w for s in q.starred_vertices if isinstance(w := weights[s], str)))
    position = {name: i for i, name in enumerate(parameters)}
    terms = []
    for i, (tail, head) in enumerate(q.arrows):
        quantum = [0] * len(parameters)
        if q.is_star(tail) and isinstance(weights[tail], str):
            quantum[position[weights[tail]]] -= 1
        if q.is_star(head) and isinstance(weights[head], str):
            quantum[position[weights[head]]] += 1
        terms.append(LaurentTerm(i, tuple(quantum), q.point((tail, head))))
    variables = tuple(f"x_{i}" for i in range(1, q.dim + 1))
    return QuiverLaurent(variables, parameters, tuple(terms), q)


def newton_polytope(s: QuiverLaurent) -> VPolytope:
    """Hull of the exponent vectors

    Raises:
        InvariantError: If it differs from Root of the generating quiver
    """
    newton = hull([t.exponents for t in s.terms])[0]
    if s.quiver is not None and newton != hull(distinct_root_points(s.quiver))[0]:
        raise InvariantError("Newton polytope differs from the root polytope")
    return newton


def superpotential_polytope(s: QuiverLaurent, r: Mapping[str, Scalar] | Sequence[Scalar]) -> HPolytope:
    """Tropicalization ``Trop(S) >= 0``: one inequality per term"""
    if isinstance(r, Mapping):
        missing = [p for p in s.parameters if p not in r]
        if missing:
            raise InvalidParameterError(f"no value for parameters {missing}")
        values = [Fraction(r[p]) for p in s.parameters]
    else:
        if len(r) != len(s.parameters):
            raise InvalidParameterError(f"expected {len(s.parameters)} parameter values, got {len(r)}")
        values = [Fraction(x) for x in r]
    inequalities = {
        Inequality.make(t.exponents, sum((l * v for l, v in zip(t.quantum, values, strict=True)), Fraction(0)))
        for t in s.terms
    }
    return HPolytope(len(s.variables), tuple(sorted(inequalities, key=lambda f: (f.normal, f.offset))))


def divisor_polytope(q: StarredQuiver, d: Sequence[Scalar]) -> HPolytope:
    """``{x : <x, u_a> >= -d_a}`` for the divisor ``sum d_a D_a``"""
    q = ensure_starred(q)
    _require_one_ray_per_arrow(q)
    if len(d) != len(q.arrows):
        raise InvalidParameterError(f"divisor has {len(d)} coefficients, quiver has {len(q.arrows)} arrows")
    if not is_cartier(q, d):
        logger.warning("divisor is Weil but not Cartier; its polytope need not be a lattice polytope")
    inequalities = {Inequality.make(q.point(a), c) for a, c in zip(q.arrows, d, strict=True)}
    return HPolytope(q.dim, tuple(sorted(inequalities, key=lambda f: (f.normal, f.offset))))


@dataclass(frozen=True)
class ArrowCoordinateRoot:
    """Root(Q) written in the lattice dual to a basis of 0-sum labelings

    Attributes:
        basis: 0-sum labelings (rows over the arrows) forming a lattice basis
        points: Per arrow, the values of the basis labelings on it
        polytope: Hull of ``points``
        transfer: Bullet labelings of the basis rows; ``points[a] = transfer * u_a``
    """

    basis: IMat
    points: tuple[IVec, ...]
    polytope: VPolytope
    transfer: IMat

    def labeling_coordinates(self, m: Sequence[Scalar]) -> IVec:
        """Coordinates of a 0-sum labeling in ``basis``

        Raises:
            InvalidParameterError: If ``m`` is not an integral 0-sum labeling
        """
        coords = exactlin.lattice_coordinates(self.basis, m)
        ints = exactlin.as_integral(coords) if coords is not None else None
        if ints is None:
            raise InvalidParameterError("labeling is not an integral 0-sum labeling")
        return ints


def arrow_coordinate_root(q: StarredQuiver) -> ArrowCoordinateRoot:
    """Root(q) from cycle conditions alone

    The 0-sum lattice is computed as the labelings with zero signed sum around
    every cycle of the quiver with identified stars.
    """
    require_strongly_connected(q)
    q = ensure_starred(q)
    collapsed = {s: q.starred_vertices[0] for s in q.starred_vertices}
    vertices = list(dict.fromkeys(collapsed.get(v, v) for v in q.vertices))
    incidence = []
    for v in vertices:
        incidence.append([(1 if collapsed.get(h, h) == v else 0) - (1 if collapsed.get(t, t) == v else 0)
                          for t, h in q.arrows])
    width = len(q.arrows)
    cycles = exactlin.integer_kernel(incidence, width)
    basis = exactlin.integer_kernel(cycles, width) if cycles else exactlin.identity(width)
    if len(basis) != q.dim:
        raise InvariantError(f"0-sum lattice has rank {len(basis)}, expected {q.dim}")
    points = tuple(tuple(b[a] for b in basis) for a in range(width))
    transfer = []
    for row in basis:
        bullet = exactlin.as_integral(arrow_to_bullet(q, row))
        if bullet is None:
            raise InvariantError("0-sum basis labeling has a fractional bullet labeling")
        transfer.append(bullet)
    return ArrowCoordinateRoot(basis, points, hull(points)[0], tuple(transfer))


def anticanonical_polytope(q: StarredQuiver) -> HPolytope:
    """Divisor polytope of ``sum_a D_a``"""
    q = ensure_starred(q)
    return divisor_polytope(q, (1,) * len(q.arrows))


def is_unimodular_fan(f: Fan) -> bool:
    return all(is_unimodular(c, f.dim) for c in f.maximal_cones)
