"""Exact polytopes: dual descriptions, polar duals, lattice points and faces

Hulls are computed with an incremental double description over the integers
(points are homogenized, facets are the extreme rays of the dual cone).
Everything is exact; coordinates are ints or Fractions.

Features:
- V -> H (``hull``) and H -> V (``vertices_of``) conversion, lower-dimensional hulls included
- Polar duality, reflexive and terminal checks with certificates
- Lattice points by box scan with per-slab pruning
- Face lattice and f-vector from facet incidences
- Verification of explicitly given integral equivalences
- Pulling triangulations and normalized volume
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from . import exactlin
from .cache import generate_cache_key
from .cache import get_cache
from .exceptions import InvalidParameterError
from .exceptions import NotFullDimensionalError
from .exceptions import PreconditionError
from .exceptions import UnboundedPolytopeError
from .types import IMat
from .types import IVec
from .types import QVec
from .types import Scalar


def _qvec(v: Iterable[Scalar]) -> QVec:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class Inequality:
    """``<normal, x> >= -offset`` with a primitive integer normal"""

    normal: IVec
    offset: Fraction

    @classmethod
    def make(cls, normal: Sequence[Scalar], offset: Scalar) -> Inequality:
        """Scale a rational inequality so its normal is primitive"""
        ints, k = exactlin.clear_denominators(normal)
        g = math.gcd(*ints)
        if g == 0:
            raise InvalidParameterError("inequality normal must be nonzero")
        return cls(tuple(x // g for x in ints), Fraction(offset) * k / g)

    def value(self, x: Sequence[Scalar]) -> Fraction:
        """Slack ``<normal, x> + offset`` (nonnegative when satisfied)"""
        return Fraction(exactlin.dot(self.normal, x)) + self.offset

    def satisfied(self, x: Sequence[Scalar]) -> bool:
        return self.value(x) >= 0

    def tight(self, x: Sequence[Scalar]) -> bool:
        return self.value(x) == 0

    def __str__(self) -> str:
        terms = [f"{c:+d}*x{i + 1}" for i, c in enumerate(self.normal) if c]
        return f"{' '.join(terms)} >= {-self.offset}"


@dataclass(frozen=True)
class Equation:
    """``<normal, x> == value``"""

    normal: IVec
    value: Fraction

    def holds(self, x: Sequence[Scalar]) -> bool:
        return exactlin.dot(self.normal, x) == self.value


@dataclass(frozen=True)
class VPolytope:
    """Polytope given by its vertices (sorted lexicographically)"""

    dim: int
    vertices: tuple[QVec, ...]

    def __post_init__(self):
        for v in self.vertices:
            if len(v) != self.dim:
                raise InvalidParameterError(f"vertex {v} does not have dimension {self.dim}")

    @classmethod
    def of(cls, dim: int, points: Iterable[Sequence[Scalar]]) -> VPolytope:
        return cls(dim, tuple(sorted({_qvec(p) for p in points})))

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def integer_vertices(self) -> tuple[IVec, ...]:
        """Vertices as int tuples

        Raises:
            InvalidParameterError: If some vertex is not a lattice point
        """
        result = []
        for v in self.vertices:
            iv = exactlin.as_integral(v)
            if iv is None:
                raise InvalidParameterError(f"vertex {v} is not a lattice point")
            result.append(iv)
        return tuple(result)


@dataclass(frozen=True)
class HPolytope:
    """Polytope given by inequalities (and equations for lower-dimensional ones)"""

    dim: int
    inequalities: tuple[Inequality, ...]
    equations: tuple[Equation, ...] = ()

    def __post_init__(self):
        for ineq in self.inequalities:
            if len(ineq.normal) != self.dim:
                raise InvalidParameterError(f"inequality {ineq} does not have dimension {self.dim}")

    def contains(self, x: Sequence[Scalar]) -> bool:
        return all(i.satisfied(x) for i in self.inequalities) and all(e.holds(x) for e in self.equations)

    def interior_contains(self, x: Sequence[Scalar]) -> bool:
        """Strict inequalities (relative interior when equations are present)"""
        return all(i.value(x) > 0 for i in self.inequalities) and all(e.holds(x) for e in self.equations)

    def same_as(self, other: HPolytope) -> bool:
        """Same inequality and equation systems, ignoring order"""
        return (
            self.dim == other.dim
            and set(self.inequalities) == set(other.inequalities)
            and set(self.equations) == set(other.equations)
        )


@dataclass(frozen=True)
class AffineHull:
    """Affine hull ``base + span`` recorded as pivot coordinates plus equations"""

    base: QVec
    pivots: tuple[int, ...]
    equations: tuple[Equation, ...]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def project(self, x: Sequence[Scalar]) -> QVec:
        return tuple(Fraction(x[i]) for i in self.pivots)


@dataclass(frozen=True)
class FaceLattice:
    """Faces of a polytope as sets of vertex indices, grouped by dimension"""

    dim: int
    faces: dict[int, tuple[frozenset[int], ...]]

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces.get(k, ())) for k in range(self.dim))


@dataclass(frozen=True)
class ReflexivityCertificate:
    """Verdict of ``is_reflexive`` with the dual vertices or the offending one"""

    reflexive: bool
    reason: str
    dual_vertices: tuple[QVec, ...] = ()
    offending: QVec | None = None

    def __bool__(self) -> bool:
        return self.reflexive


# ---------------------------------------------------------------------------
# Double description
# ---------------------------------------------------------------------------


def _independent_rows(rows: Sequence[IVec], width: int) -> list[int]:
    chosen: list[int] = []
    for i in range(len(rows)):
        if exactlin.rank([rows[j] for j in chosen] + [rows[i]], width) > len(chosen):
            chosen.append(i)
            if len(chosen) == width:
                break
    return chosen


def _extreme_rays(rows: Sequence[IVec], width: int) -> list[tuple[IVec, int]]:
    """Extreme rays of the pointed cone ``{y : rows * y >= 0}``

    Returns:
        (primitive ray, bitmask of rows the ray is tight on) pairs

    Raises:
        PreconditionError: If the rows do not have full column rank (cone not pointed)
    """
    basis = _independent_rows(rows, width)
    if len(basis) < width:
        raise PreconditionError("cone has a lineality space")
    inv = exactlin.inverse([rows[i] for i in basis])
    all_basis = 0
    for i in basis:
        all_basis |= 1 << i
    rays: list[tuple[IVec, int]] = []
    for j, b in enumerate(basis):
        column = [inv[k][j] for k in range(width)]
        rays.append((exactlin.primitive(column), all_basis & ~(1 << b)))

    processed = all_basis
    for k, row in enumerate(rows):
        if processed >> k & 1:
            continue
        bit = 1 << k
        positive, negative, zero = [], [], []
        for ray, mask in rays:
            s = exactlin.dot(row, ray)
            if s > 0:
                positive.append((ray, mask, s))
            elif s < 0:
                negative.append((ray, mask, s))
            else:
                zero.append((ray, mask | bit))
        new_rays = [(ray, mask) for ray, mask, _ in positive] + zero
        masks = [mask for _, mask in rays]
        for p, pmask, ps in positive:
            for n, nmask, ns in negative:
                common = pmask & nmask
                if common.bit_count() < width - 2:
                    continue
                if any(m & common == common and m != pmask and m != nmask for m in masks):
                    continue
                combo = tuple(ps * y - ns * x for x, y in zip(p, n, strict=True))
                new_rays.append((exactlin.primitive(combo), common | bit))
        rays = new_rays
        processed |= bit
    return rays


# ---------------------------------------------------------------------------
# V -> H and H -> V
# ---------------------------------------------------------------------------


def affine_hull(points: Sequence[Sequence[Scalar]]) -> AffineHull:
    """Affine hull of a nonempty point set"""
    if not points:
        raise InvalidParameterError("affine hull of an empty point set")
    dim = len(points[0])
    base = _qvec(points[0])
    directions = [tuple(Fraction(x) - b for x, b in zip(p, base, strict=True)) for p in points[1:]]
    _, pivots = exactlin.rref(directions, dim) if directions else ((), ())
    equations = []
    for w in exactlin.nullspace(directions, dim) if directions else exactlin.identity(dim):
        normal = exactlin.primitive(w)
        equations.append(Equation(normal, Fraction(exactlin.dot(normal, base))))
    return AffineHull(base, tuple(pivots), tuple(equations))


def _full_hull(points: Sequence[QVec], dim: int) -> tuple[list[QVec], list[Inequality]]:
    rows = []
    for p in points:
        ints, k = exactlin.clear_denominators((1, *p))
        rows.append(ints)
    rays = _extreme_rays(rows, dim + 1)
    facets = sorted(
        {Inequality.make(ray[1:], ray[0]) for ray, _ in rays},
        key=lambda f: (f.normal, f.offset),
    )
    vertices = []
    for p in points:
        tight = [f.normal for f in facets if f.tight(p)]
        if tight and exactlin.rank(tight, dim) == dim:
            vertices.append(p)
    return sorted(vertices), facets


def hull(points: Iterable[Sequence[Scalar]]) -> tuple[VPolytope, HPolytope]:
    """Vertices and facets of the convex hull of a finite point set

    Lower-dimensional hulls are computed in pivot coordinates of their affine
    hull; their facet inequalities are lifted back and the affine hull is
    recorded as equations.

    Args:
        points: Nonempty collection of points of equal dimension

    Returns:
        (VPolytope, HPolytope), both canonically sorted
    """
    unique = sorted({_qvec(p) for p in points})
    if not unique:
        raise InvalidParameterError("hull of an empty point set")
    dim = len(unique[0])
    cache = get_cache()
    key = generate_cache_key("hull", unique)
    cached = cache.get(key)
    if cached is not None:
        return cached

    aff = affine_hull(unique)
    if aff.dim == dim:
        vertices, facets = _full_hull(unique, dim)
        result = (VPolytope(dim, tuple(vertices)), HPolytope(dim, tuple(facets)))
    elif aff.dim == 0:
        result = (VPolytope(dim, (unique[0],)), HPolytope(dim, (), aff.equations))
    else:
        projected = [aff.project(p) for p in unique]
        local_vertices, local_facets = _full_hull(projected, aff.dim)
        keep = set(local_vertices)
        vertices = tuple(p for p, q in zip(unique, projected, strict=True) if q in keep)
        lifted = []
        for f in local_facets:
            normal = [0] * dim
            for c, i in zip(f.normal, aff.pivots, strict=True):
                normal[i] = c
            lifted.append(Inequality(tuple(normal), f.offset))
        lifted.sort(key=lambda f: (f.normal, f.offset))
        result = (VPolytope(dim, vertices), HPolytope(dim, tuple(lifted), aff.equations))
    logger.debug(f"hull: {len(unique)} points in R^{dim} -> {len(result[0].vertices)} vertices, "
                 f"{len(result[1].inequalities)} facets (affine dim {aff.dim})")
    cache.set(key, result)
    return result


def vertices_of(h: HPolytope) -> VPolytope:
    """Vertices of a bounded inequality system

    Raises:
        UnboundedPolytopeError: If the system has recession directions
    """
    dim = h.dim
    rows: list[IVec] = []
    constraints = [(i.normal, i.offset) for i in h.inequalities]
    for e in h.equations:
        constraints += [(e.normal, -e.value), (tuple(-x for x in e.normal), e.value)]
    for normal, offset in constraints:
        ints, _ = exactlin.clear_denominators((offset, *normal))
        rows.append(ints)
    rows.append((1,) + (0,) * dim)
    try:
        rays = _extreme_rays(rows, dim + 1)
    except PreconditionError as e:
        raise UnboundedPolytopeError("inequality system has a lineality space") from e
    points = [ray for ray, _ in rays if ray[0] > 0]
    directions = [ray for ray, _ in rays if ray[0] == 0]
    if points and directions:
        raise UnboundedPolytopeError(f"polyhedron has recession direction {directions[0][1:]}")
    return VPolytope.of(dim, (tuple(Fraction(x, ray[0]) for x in ray[1:]) for ray in points))


def irredundant(h: HPolytope) -> HPolytope:
    """Facet description of a bounded nonempty system"""
    v = vertices_of(h)
    if not v.vertices:
        raise PreconditionError("inequality system is empty")
    return hull(v.vertices)[1]


def as_vpolytope(p: VPolytope | HPolytope) -> VPolytope:
    return p if isinstance(p, VPolytope) else vertices_of(p)


def scale(p: VPolytope, k: Scalar) -> VPolytope:
    """Dilate by ``k``"""
    return VPolytope.of(p.dim, (tuple(k * x for x in v) for v in p.vertices))


# ---------------------------------------------------------------------------
# Duality, lattice points, reflexivity
# ---------------------------------------------------------------------------


def _require_interior_origin(h: HPolytope) -> None:
    if h.equations:
        raise NotFullDimensionalError("polytope is not full-dimensional")
    bad = next((f for f in h.inequalities if f.offset <= 0), None)
    if bad is not None:
        raise PreconditionError(f"origin is not in the interior (facet {bad})")


def polar_dual(p: VPolytope | HPolytope) -> VPolytope:
    """Polar dual ``{y : <x, y> >= -1 for all x in p}``

    Raises:
        NotFullDimensionalError: If ``p`` is lower-dimensional
        PreconditionError: If the origin is not an interior point
    """
    h = irredundant(p) if isinstance(p, HPolytope) else hull(p.vertices)[1]
    _require_interior_origin(h)
    return VPolytope.of(h.dim, (tuple(Fraction(c) / f.offset for c in f.normal) for f in h.inequalities))


def lattice_points(p: VPolytope | HPolytope) -> list[IVec]:
    """All integer points, sorted

    The scan runs coordinate by coordinate over the bounding box and drops a
    partial point as soon as some inequality cannot be met by any completion.

    Raises:
        UnboundedPolytopeError: If an H-description is unbounded
    """
    v = as_vpolytope(p)
    if not v.vertices:
        return []
    h = p if isinstance(p, HPolytope) else hull(v.vertices)[1]
    dim = v.dim
    lo = [math.ceil(min(x[i] for x in v.vertices)) for i in range(dim)]
    hi = [math.floor(max(x[i] for x in v.vertices)) for i in range(dim)]
    if any(a > b for a, b in zip(lo, hi, strict=True)):
        return []
    constraints = [(f.normal, f.offset) for f in h.inequalities]
    for e in h.equations:
        constraints += [(e.normal, -e.value), (tuple(-x for x in e.normal), e.value)]
    # best[c][k]: largest possible contribution of coordinates k.. to constraint c
    best = []
    for normal, _ in constraints:
        suffix = [0] * (dim + 1)
        for k in range(dim - 1, -1, -1):
            suffix[k] = suffix[k + 1] + max(normal[k] * lo[k], normal[k] * hi[k])
        best.append(suffix)

    found: list[IVec] = []
    partial = [0] * len(constraints)

    def scan(k: int, prefix: list[int]) -> None:
        if k == dim:
            if all(partial[c] + off >= 0 for c, (_, off) in enumerate(constraints)):
                found.append(tuple(prefix))
            return
        for x in range(lo[k], hi[k] + 1):
            for c, (normal, _) in enumerate(constraints):
                partial[c] += normal[k] * x
            if all(partial[c] + best[c][k + 1] + off >= 0 for c, (_, off) in enumerate(constraints)):
                prefix.append(x)
                scan(k + 1, prefix)
                prefix.pop()
            for c, (normal, _) in enumerate(constraints):
                partial[c] -= normal[k] * x

    scan(0, [])
    return sorted(found)


def is_reflexive(p: VPolytope) -> ReflexivityCertificate:
    """Reflexivity check

    Returns:
        Certificate listing the dual vertices, or the reason and offending
        fractional dual vertex when ``p`` is not reflexive
    """
    if not p.is_lattice():
        return ReflexivityCertificate(False, "not a lattice polytope")
    h = hull(p.vertices)[1]
    if h.equations:
        return ReflexivityCertificate(False, "not full-dimensional")
    if any(f.offset <= 0 for f in h.inequalities):
        return ReflexivityCertificate(False, "origin is not an interior point")
    dual = polar_dual(p)
    for w in dual.vertices:
        if any(x.denominator != 1 for x in w):
            return ReflexivityCertificate(False, "polar dual has a fractional vertex", dual.vertices, w)
    return ReflexivityCertificate(True, "polar dual is a lattice polytope", dual.vertices)


def is_terminal(p: VPolytope) -> bool:
    """Whether the origin and the vertices are the only lattice points

    Raises:
        PreconditionError: If the origin is not an interior point
    """
    _require_interior_origin(hull(p.vertices)[1])
    expected = set(p.vertices) | {(Fraction(0),) * p.dim}
    return {_qvec(x) for x in lattice_points(p)} == expected


# ---------------------------------------------------------------------------
# Faces
# ---------------------------------------------------------------------------


def _affine_dim(points: Sequence[QVec]) -> int:
    if not points:
        return -1
    return affine_hull(points).dim


def face_lattice(p: VPolytope) -> FaceLattice:
    """All faces as vertex-index sets, by intersecting facet incidence sets"""
    h = hull(p.vertices)[1]
    vertices = p.vertices
    facets = {frozenset(i for i, v in enumerate(vertices) if f.tight(v)) for f in h.inequalities}
    faces = set(facets)
    frontier = list(facets)
    while frontier:
        face = frontier.pop()
        for facet in facets:
            meet = face & facet
            if meet not in faces:
                faces.add(meet)
                frontier.append(meet)
    faces.add(frozenset(range(len(vertices))))
    top = _affine_dim(vertices)
    grouped: dict[int, list[frozenset[int]]] = {}
    for face in faces:
        grouped.setdefault(_affine_dim([vertices[i] for i in face]), []).append(face)
    return FaceLattice(top, {k: tuple(sorted(fs, key=sorted)) for k, fs in sorted(grouped.items())})


def f_vector(p: VPolytope) -> tuple[int, ...]:
    """``(f_0, ..., f_{d-1})``"""
    return face_lattice(p).f_vector()


# ---------------------------------------------------------------------------
# Integral equivalence
# ---------------------------------------------------------------------------


def _direction_lattice(v: VPolytope) -> IMat:
    """Integer basis of the lattice of the affine hull's direction space"""
    aff = affine_hull(v.vertices)
    return exactlin.integer_kernel([e.normal for e in aff.equations], v.dim)


def verify_integral_equivalence(
    p1: VPolytope,
    p2: VPolytope,
    linear: Sequence[Sequence[int]],
    translation: Sequence[int] | None = None,
) -> bool:
    """Check that ``x -> linear * x + translation`` is an integral equivalence ``p1 -> p2``

    The map must send vertices bijectively onto vertices and restrict to an
    isomorphism between the lattices of the two affine hulls.

    Raises:
        InvalidParameterError: If the map is not integral or has the wrong shape
    """
    translation = tuple(translation) if translation is not None else (0,) * p2.dim
    if len(linear) != p2.dim or any(len(row) != p1.dim for row in linear) or len(translation) != p2.dim:
        raise InvalidParameterError(f"map must be {p2.dim}x{p1.dim} with a length-{p2.dim} translation")
    if not exactlin.is_integral(linear) or exactlin.as_integral(translation) is None:
        raise InvalidParameterError("map is not integral")
    linear = [[int(x) for x in row] for row in linear]
    translation = tuple(int(x) for x in translation)

    images = [tuple(Fraction(a) + b for a, b in zip(exactlin.matvec(linear, v), translation, strict=True))
              for v in p1.vertices]
    if len(set(images)) != len(images) or set(images) != set(p2.vertices):
        logger.debug("integral equivalence: map is not a bijection of vertices")
        return False

    basis1 = _direction_lattice(p1)
    basis2 = _direction_lattice(p2)
    if len(basis1) != len(basis2):
        logger.debug("integral equivalence: affine hulls differ in dimension")
        return False
    if not basis1:
        return True
    transfer = []
    for b in basis1:
        coords = exactlin.lattice_coordinates(basis2, exactlin.matvec(linear, b))
        if coords is None or any(c.denominator != 1 for c in coords):
            logger.debug("integral equivalence: image leaves the target lattice")
            return False
        transfer.append([int(c) for c in coords])
    diagonal = exactlin.smith_normal_form(transfer).diagonal
    if any(d != 1 for d in diagonal):
        logger.debug(f"integral equivalence: lattice index {math.prod(diagonal)}")
        return False
    return True


# ---------------------------------------------------------------------------
# Triangulation and volume
# ---------------------------------------------------------------------------


def triangulate(points: Sequence[Sequence[Scalar]]) -> list[tuple[int, ...]]:
    """Pulling triangulation of the hull of ``points``

    Simplices are index tuples into ``points``; only hull vertices are used.
    Each face is pulled from its smallest-index vertex and triangulated once.
    """
    qpoints = [_qvec(p) for p in points]
    vertex_set = set(hull(qpoints)[0].vertices)
    index: dict[QVec, int] = {}
    for i, p in enumerate(qpoints):
        if p in vertex_set and p not in index:
            index[p] = i
    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def pull(face: frozenset[int]) -> list[tuple[int, ...]]:
        if face in memo:
            return memo[face]
        members = sorted(face)
        pts = [qpoints[i] for i in members]
        if len(members) == _affine_dim(pts) + 1:
            memo[face] = [tuple(members)]
            return memo[face]
        apex = members[0]
        local = hull(pts)[1]
        simplices = []
        for f in local.inequalities:
            tight = frozenset(i for i in members if f.tight(qpoints[i]))
            if apex not in tight:
                simplices.extend(tuple(sorted((apex, *s))) for s in pull(tight))
        memo[face] = simplices
        return simplices

    return pull(frozenset(index.values()))


def simplex_volume(vertices: Sequence[Sequence[Scalar]]) -> Fraction:
    """Normalized volume ``|det(v_i - v_0)|`` of a full-dimensional simplex"""
    base = vertices[0]
    rows = [[Fraction(a) - b for a, b in zip(v, base, strict=True)] for v in vertices[1:]]
    return abs(Fraction(exactlin.determinant(rows)))


def normalized_volume(p: VPolytope) -> Fraction:
    """Normalized volume (``d!`` times Euclidean volume) of a full-dimensional polytope

    Raises:
        NotFullDimensionalError: If ``p`` is lower-dimensional
    """
    if _affine_dim(p.vertices) != p.dim:
        raise NotFullDimensionalError("normalized volume needs a full-dimensional polytope")
    simplices = triangulate(p.vertices)
    return sum((simplex_volume([p.vertices[i] for i in s]) for s in simplices), Fraction(0))
