"""Report models and the pipelines that fill them

Every report is a pydantic model. The machine format is its JSON dump; the
table format renders the same fields.
"""

from __future__ import annotations

from collections.abc import Mapping
from collections.abc import Sequence
from fractions import Fraction

from loguru import logger
from pydantic import BaseModel
from pydantic import Field

from .facets import face_fan
from .facets import facet_labelings
from .fans import fans_equal
from .fans import is_unimodular
from .fans import normal_fan
from .fans import refines
from .planar import PlaneQuiver
from .planar import flow_polytope
from .planar import verify_flow_duality
from .polytope import f_vector
from .polytope import hull
from .polytope import is_reflexive
from .polytope import is_terminal
from .polytope import vertices_of
from .poset import FinitePoset
from .poset import StarredPoset
from .poset import bounded_extension
from .poset import bounded_quiver
from .poset import count_linear_extensions
from .poset import filters
from .poset import hasse_quiver
from .poset import is_graded
from .poset import marked_order_polytope
from .poset import order_polytope
from .poset import rank_function
from .poset import shifted_marked_order
from .quiver import StarredQuiver
from .quiver import distinct_root_points
from .quiver import ensure_starred
from .quiver import require_strongly_connected
from .toric import DEFAULT_MAX_WORKERS
from .toric import canonical_extension
from .toric import class_group
from .toric import fano_index
from .toric import picard_group
from .toric import picard_group_general
from .toric import small_resolution_fan
from .toric import superpotential
from .toric import superpotential_polytope


def _text(v: Sequence[Fraction | int]) -> list[str]:
    return [str(x) for x in v]


class FacetRow(BaseModel):
    """One facet ``<coefficients, x> >= -offset``"""

    offset: int = Field(description="Right-hand side magnitude (always 1 for root polytopes)")
    coefficients: list[int] = Field(description="Bullet labeling of the facet")
    flat: list[str] = Field(description="Arrows labeled -1")


class RootReport(BaseModel):
    """Root polytope summary"""

    dim: int = Field(description="Number of normal vertices")
    vertices: list[list[int]] = Field(description="Vertices of Root(Q)")
    facets: list[FacetRow] = Field(description="Facets with their labelings")
    f_vector: list[int] = Field(description="Number of faces per dimension, vertices first")
    reflexive: bool = Field(description="Root(Q) is reflexive")
    terminal: bool = Field(description="Only the origin and the vertices are lattice points")
    normalization_log: list[str] = Field(description="Rewrites applied to the input quiver")


def root_report(q: StarredQuiver) -> RootReport:
    require_strongly_connected(q)
    q = ensure_starred(q)
    root = hull(distinct_root_points(q))[0]
    rows = [
        FacetRow(offset=1, coefficients=list(f.bullet), flat=[q.arrow_label(i) for i in sorted(f.flat)])
        for f in facet_labelings(q)
    ]
    return RootReport(
        dim=q.dim,
        vertices=[list(v) for v in root.integer_vertices()],
        facets=rows,
        f_vector=list(f_vector(root)),
        reflexive=bool(is_reflexive(root)),
        terminal=is_terminal(root),
        normalization_log=list(q.normalization_log),
    )


class DualArrowRow(BaseModel):
    """Dual arrow crossing one primal arrow from left to right"""

    primal: str = Field(description="Primal arrow name")
    tail: str = Field(description="Face on the left of the primal arrow")
    head: str = Field(description="Face on the right of the primal arrow")


class FlowDualReport(BaseModel):
    """Planar flow duality verdict"""

    faces: dict[str, list[str]] = Field(description="Bounded faces with their arrow names")
    outer_face: list[str] = Field(description="Arrow names on the outer face")
    dual_arrows: list[DualArrowRow] = Field(description="Arrows of the dual starred quiver")
    flow_vertices: list[list[str]] = Field(description="Vertices of the flow polytope in arrow coordinates")
    dual_root_vertices: list[list[int]] = Field(description="Vertices of Root of the dual quiver")
    flows_are_labelings: bool
    lattices_match: bool
    polar_matches: bool
    equivalent: bool
    reflexive: bool
    holds: bool = Field(description="Overall duality verdict")
    normalization_log: list[str] = Field(description="Rewrites applied to the dual quiver")


def flowdual_report(pq: PlaneQuiver) -> FlowDualReport:
    result = verify_flow_duality(pq)
    dual = result.dual
    faces = {f.name: [pq.names[i] for i in sorted(f.arrows)] for f in dual.faces.bounded}
    rows = [
        DualArrowRow(primal=pq.names[i], tail=left, head=right) for i, (left, right) in enumerate(dual.crossings)
    ]
    flow = flow_polytope(pq.vertices, pq.arrows)
    return FlowDualReport(
        faces=faces,
        outer_face=[pq.names[i] for i in sorted(dual.faces.outer.arrows)],
        dual_arrows=rows,
        flow_vertices=sorted(_text(flow.to_flow(y)) for y in flow.vertices().vertices),
        dual_root_vertices=[list(v) for v in hull(distinct_root_points(dual.quiver))[0].integer_vertices()],
        flows_are_labelings=result.flows_are_labelings,
        lattices_match=result.lattices_match,
        polar_matches=result.polar_matches,
        equivalent=result.equivalent,
        reflexive=result.reflexive,
        holds=result.holds,
        normalization_log=list(dual.quiver.normalization_log),
    )


class OrderSection(BaseModel):
    inequalities: list[str] = Field(description="Order polytope inequalities")
    vertices: int = Field(description="Number of filters (vertices)")
    linear_extensions: int = Field(description="Normalized volume of the order polytope")


class MarkedSection(BaseModel):
    marked: list[str] = Field(description="Marked order polytope inequalities (empty without marks)")
    shifted: list[str] = Field(description="Shifted marked order polytope inequalities, all with right side -1")
    ranks: dict[str, int] = Field(description="Rank of every element")


class FanCompareSection(BaseModel):
    refines: bool = Field(description="Face fan of the bounded quiver refines the normal fan of the order polytope")
    equal: bool = Field(description="The two fans coincide")
    witness: list[list[int]] | None = Field(description="Generators of a face-fan cone in no normal cone")
    reason: str


class PicardSection(BaseModel):
    picard_rank: int
    picard_torsion: list[int]
    class_rank: int
    class_torsion: list[int]
    generators: dict[str, list[int]] = Field(description="Picard generators as arrow coefficient vectors")
    arrows: list[str] = Field(description="Arrow order of the coefficient vectors")


class CanonicalSection(BaseModel):
    elements: list[str]
    covers: list[tuple[str, str]]
    stars: list[str]
    maximal: list[str] = Field(description="Maximal elements of the canonical extension")


class PosetReport(BaseModel):
    """Requested poset artifacts"""

    elements: list[str]
    ranked: bool
    graded: bool
    order: OrderSection | None = None
    marked: MarkedSection | None = None
    fan_compare: FanCompareSection | None = None
    picard: PicardSection | None = None
    canonical: CanonicalSection | None = None
    normalization_log: list[str] = Field(default_factory=list, description="Rewrites applied to the input poset")


def _marked_section(p: FinitePoset, starred: StarredPoset | None, marks: Mapping[str, int] | None) -> MarkedSection:
    sp = starred if starred is not None else bounded_extension(p)
    marked = [str(f) for f in marked_order_polytope(sp, marks).inequalities] if marks is not None else []
    shifted = shifted_marked_order(sp)
    ranks = rank_function(sp)
    return MarkedSection(
        marked=marked,
        shifted=[str(f) for f in shifted.inequalities],
        ranks=dict(ranks.ranks),
    )


def _fan_section(p: FinitePoset, q: StarredQuiver) -> FanCompareSection:
    ff = face_fan(q)
    nf = normal_fan(order_polytope(p))
    result = refines(ff, nf)
    witness = None
    if result.witness is not None:
        witness = [list(g) for g in ff.cone(result.witness).generators]
    return FanCompareSection(refines=result.refines, equal=fans_equal(ff, nf), witness=witness, reason=result.reason)


def _picard_section(q: StarredQuiver) -> PicardSection:
    pic = picard_group(q)
    cl = class_group(q)
    return PicardSection(
        picard_rank=pic.rank,
        picard_torsion=list(pic.torsion),
        class_rank=cl.rank,
        class_torsion=list(cl.torsion),
        generators={name: list(v) for name, v in pic.named.items()},
        arrows=[q.arrow_label(i) for i in range(len(q.arrows))],
    )


def _canonical_section(p: FinitePoset) -> CanonicalSection:
    sp = canonical_extension(p)
    return CanonicalSection(
        elements=list(sp.poset.elements),
        covers=[tuple(c) for c in sp.poset.covers],
        stars=list(sp.stars),
        maximal=list(sp.poset.maximal),
    )


def poset_report(
    p: FinitePoset,
    *,
    starred: StarredPoset | None = None,
    marks: Mapping[str, int] | None = None,
    order: bool = False,
    marked: bool = False,
    fan_compare: bool = False,
    picard: bool = False,
    canonical: bool = False,
    normalization_log: Sequence[str] = (),
) -> PosetReport:
    report = PosetReport(
        elements=list(p.elements),
        ranked=rank_function(p) is not None,
        graded=is_graded(p),
        normalization_log=list(normalization_log),
    )
    if order:
        h = order_polytope(p)
        report.order = OrderSection(
            inequalities=[str(f) for f in h.inequalities],
            vertices=len(filters(p)),
            linear_extensions=count_linear_extensions(p),
        )
    if marked:
        report.marked = _marked_section(p, starred, marks)
    if fan_compare:
        q = bounded_quiver(p)
        report.normalization_log.extend(q.normalization_log)
        report.fan_compare = _fan_section(p, q)
    if picard:
        q = hasse_quiver(canonical_extension(p))
        report.normalization_log.extend(q.normalization_log)
        report.picard = _picard_section(q)
    if canonical:
        report.canonical = _canonical_section(p)
    return report


class ResolveSection(BaseModel):
    maximal_cones: int
    subdivided: int = Field(description="Maximal cones that needed subdividing")
    cones: int = Field(description="Cones of the small resolution")
    unimodular: bool
    summary: str


class SuperpotentialSection(BaseModel):
    text: str = Field(description="Quiver Laurent polynomial")
    parameters: list[str]
    values: list[str] = Field(description="Parameter values used for the polytope")
    inequalities: list[str] = Field(description="Superpotential polytope inequalities")
    vertices: list[list[str]]


class FanoSection(BaseModel):
    fano_index: int
    picard_rank: int
    picard_torsion: list[int]
    class_rank: int
    class_torsion: list[int]
    cartier_conditions: list[str]


class ToricReport(BaseModel):
    """Toric invariants of the face fan of Root(Q)"""

    dim: int
    facets: int
    singular_cones: int = Field(description="Maximal cones that are not unimodular")
    reflexive: bool
    terminal: bool
    resolve: ResolveSection | None = None
    superpotential: SuperpotentialSection | None = None
    fano: FanoSection | None = None
    normalization_log: list[str]


def toric_report(
    q: StarredQuiver,
    *,
    resolve: bool = False,
    parameters: Sequence[Fraction] | None = None,
    weights: Mapping[str, str | int] | None = None,
    fano: bool = False,
    max_workers: int = DEFAULT_MAX_WORKERS,
) -> ToricReport:
    require_strongly_connected(q)
    q = ensure_starred(q)
    root = hull(distinct_root_points(q))[0]
    fan = face_fan(q)
    report = ToricReport(
        dim=q.dim,
        facets=len(fan.cones),
        singular_cones=sum(1 for c in fan.maximal_cones if not is_unimodular(c, q.dim)),
        reflexive=bool(is_reflexive(root)),
        terminal=is_terminal(root),
        normalization_log=list(q.normalization_log),
    )
    if resolve:
        t = small_resolution_fan(q, max_workers)
        if t.subdivided:
            summary = f"{len(t.subdivided)} subdivisions into {t.size} cones"
        else:
            summary = "already smooth, 0 subdivisions"
        report.resolve = ResolveSection(
            maximal_cones=len(fan.cones),
            subdivided=len(t.subdivided),
            cones=t.size,
            unimodular=all(is_unimodular(c, q.dim) for c in t.fan.maximal_cones),
            summary=summary,
        )
    if parameters is not None:
        s = superpotential(q, weights)
        gamma = superpotential_polytope(s, parameters)
        report.superpotential = SuperpotentialSection(
            text=str(s),
            parameters=list(s.parameters),
            values=_text(parameters),
            inequalities=[str(f) for f in gamma.inequalities],
            vertices=[_text(v) for v in vertices_of(gamma).vertices],
        )
    if fano:
        pic = picard_group_general(q)
        cl = class_group(q)
        report.fano = FanoSection(
            fano_index=fano_index(q),
            picard_rank=pic.rank,
            picard_torsion=list(pic.torsion),
            class_rank=cl.rank,
            class_torsion=list(cl.torsion),
            cartier_conditions=list(pic.conditions),
        )
    logger.debug(f"toric report: {report.facets} facets, {report.singular_cones} singular")
    return report
