"""Rational polyhedral cones and fans

Fans are stored by their maximal cones, each a set of indices into a shared
ray list. Cone inequalities come from the same double description used for
polytope hulls.
"""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Sequence
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property

from loguru import logger

from . import exactlin
from .exceptions import InvalidParameterError
from .exceptions import NotFullDimensionalError
from .polytope import HPolytope
from .polytope import VPolytope
from .polytope import _extreme_rays
from .polytope import as_vpolytope
from .polytope import hull
from .types import IVec
from .types import Scalar


@dataclass(frozen=True)
class ConeFacets:
    """H-description of a cone: ``<n, x> >= 0`` for each inequality, ``<e, x> == 0`` for each equation"""

    inequalities: tuple[IVec, ...]
    equations: tuple[IVec, ...]


@dataclass(frozen=True)
class Cone:
    """Cone spanned by primitive integer generators"""

    generators: tuple[IVec, ...]

    @classmethod
    def of(cls, generators: Iterable[Sequence[Scalar]]) -> Cone:
        """Cone with primitive, deduplicated, sorted generators"""
        prim = {exactlin.primitive(g) for g in generators}
        prim.discard(tuple(0 for _ in next(iter(prim), ())))
        return cls(tuple(sorted(prim)))

    @property
    def dim(self) -> int:
        """Ambient dimension"""
        return len(self.generators[0]) if self.generators else 0

    @cached_property
    def facets(self) -> ConeFacets:
        return cone_facets(self)


def cone_facets(c: Cone) -> ConeFacets:
    """Facet normals and linear-hull equations of a cone"""
    d = c.dim
    gens = list(c.generators)
    equations = tuple(exactlin.primitive(w) for w in exactlin.nullspace(gens, d))
    _, pivots = exactlin.rref(gens, d)
    k = len(pivots)
    if k == 0:
        return ConeFacets((), exactlin.identity(d))
    projected = [tuple(g[i] for i in pivots) for g in gens]
    rays = _extreme_rays(projected, k)
    normals = set()
    for ray, _ in rays:
        lifted = [0] * d
        for value, i in zip(ray, pivots, strict=True):
            lifted[i] = value
        normals.add(tuple(lifted))
    if k == 1:
        # a ray: the single projected normal bounds it on one side
        normals = {n for n in normals if any(exactlin.dot(n, g) > 0 for g in gens)}
    return ConeFacets(tuple(sorted(normals)), equations)


def cone_contains(c: Cone, v: Sequence[Scalar]) -> bool:
    """Whether ``v`` is a nonnegative combination of the generators"""
    if not c.generators:
        return not any(v)
    facets = c.facets
    return all(exactlin.dot(n, v) >= 0 for n in facets.inequalities) and all(
        exactlin.dot(e, v) == 0 for e in facets.equations
    )


def cone_in_cone(inner: Cone, outer: Cone) -> bool:
    return all(cone_contains(outer, g) for g in inner.generators)


def is_simplicial(c: Cone) -> bool:
    """Generators are linearly independent"""
    return exactlin.rank(c.generators, c.dim) == len(c.generators)


def is_unimodular(c: Cone, n: int | None = None) -> bool:
    """Exactly ``n`` generators with determinant +-1 (``n`` defaults to the ambient dimension)"""
    n = c.dim if n is None else n
    if len(c.generators) != n or c.dim != n:
        return False
    return abs(exactlin.determinant(c.generators)) == 1


@dataclass(frozen=True)
class Fan:
    """Fan stored by maximal cones over a shared ray list"""

    dim: int
    rays: tuple[IVec, ...]
    cones: tuple[frozenset[int], ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for cone in self.cones:
            if any(i < 0 or i >= len(self.rays) for i in cone):
                raise InvalidParameterError("cone refers to an unknown ray")
        used = set().union(*self.cones) if self.cones else set()
        unused = [self.rays[i] for i in range(len(self.rays)) if i not in used]
        if unused:
            raise InvalidParameterError(f"rays {unused} lie in no maximal cone")

    @classmethod
    def from_cones(cls, dim: int, cones: Iterable[Iterable[Sequence[Scalar]]], labels: Sequence[str] = ()) -> Fan:
        """Build a fan from generator lists, sharing one sorted ray list"""
        cone_list = [Cone.of(c) for c in cones]
        rays = tuple(sorted({g for c in cone_list for g in c.generators}))
        index = {r: i for i, r in enumerate(rays)}
        return cls(dim, rays, tuple(frozenset(index[g] for g in c.generators) for c in cone_list), tuple(labels))

    def cone(self, i: int) -> Cone:
        return Cone(tuple(sorted(self.rays[j] for j in self.cones[i])))

    @cached_property
    def maximal_cones(self) -> tuple[Cone, ...]:
        return tuple(self.cone(i) for i in range(len(self.cones)))

    def generator_sets(self) -> set[frozenset[IVec]]:
        return {frozenset(self.rays[j] for j in cone) for cone in self.cones}


@dataclass(frozen=True)
class RefinementResult:
    """Outcome of ``refines`` with the container map or a failing cone"""

    refines: bool
    containers: dict[int, int]
    witness: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.refines


def normal_fan(p: VPolytope | HPolytope) -> Fan:
    """Inner normal fan: one maximal cone per vertex, spanned by the normals of the facets through it

    Raises:
        NotFullDimensionalError: If ``p`` is lower-dimensional
    """
    v = as_vpolytope(p)
    h = hull(v.vertices)[1]
    if h.equations:
        raise NotFullDimensionalError("normal fan needs a full-dimensional polytope")
    cones = [[f.normal for f in h.inequalities if f.tight(x)] for x in v.vertices]
    return Fan.from_cones(v.dim, cones, [str(tuple(str(c) for c in x)) for x in v.vertices])


def refines(f1: Fan, f2: Fan) -> RefinementResult:
    """Whether ``f1`` refines ``f2``: equal rays and every cone of ``f1`` inside a cone of ``f2``"""
    if f1.dim != f2.dim:
        raise InvalidParameterError(f"fans live in R^{f1.dim} and R^{f2.dim}")
    if set(f1.rays) != set(f2.rays):
        return RefinementResult(False, {}, None, "ray sets differ")
    containers: dict[int, int] = {}
    for i, inner in enumerate(f1.maximal_cones):
        container = next((j for j, outer in enumerate(f2.maximal_cones) if cone_in_cone(inner, outer)), None)
        if container is None:
            logger.info(f"refines: cone {i} {sorted(inner.generators)} lies in no maximal cone of the coarser fan")
            return RefinementResult(False, containers, i, f"cone {i} lies in no maximal cone")
        containers[i] = container
    return RefinementResult(True, containers, None, "every cone has a container")


def fans_equal(f1: Fan, f2: Fan) -> bool:
    """Same maximal cones up to generator order"""
    if f1.dim != f2.dim:
        raise InvalidParameterError(f"fans live in R^{f1.dim} and R^{f2.dim}")
    return f1.generator_sets() == f2.generator_sets()


def cones_containing(f: Fan, v: Sequence[Scalar]) -> list[int]:
    """Indices of maximal cones containing ``v``"""
    return [i for i, c in enumerate(f.maximal_cones) if cone_contains(c, v)]
