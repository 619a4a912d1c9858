"""Finite posets, rank functions, extensions and (marked) order polytopes

Posets are given by their cover relations. The three extensions used for
quivers are the bounded extension (one new bottom ``hat0`` and one new top
``hat1``), the maximal extension (``hat0`` plus a separate top ``hat1[m]``
above each maximal element ``m``) and the canonical extension (see
``rootpoly.toric.canonical_extension``).
"""

from __future__ import annotations

from collections.abc import Iterable
from collections.abc import Mapping
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cache
from functools import cached_property

import networkx as nx
from loguru import logger

from .exceptions import InvalidParameterError
from .exceptions import NotAcyclicError
from .exceptions import NotRankedError
from .polytope import HPolytope
from .polytope import Inequality
from .quiver import StarredQuiver
from .types import VertexId

HAT0 = "hat0"
HAT1 = "hat1"


def top_name(m: VertexId) -> VertexId:
    """Name of the top adjoined above the maximal element ``m`` in the maximal extension"""
    return f"{HAT1}[{m}]"


@dataclass(frozen=True)
class FinitePoset:
    """Finite poset given by its cover relations"""

    elements: tuple[VertexId, ...]
    covers: tuple[tuple[VertexId, VertexId], ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise InvalidParameterError("poset element ids must be unique")
        known = set(self.elements)
        for lower, upper in self.covers:
            if lower not in known or upper not in known:
                raise InvalidParameterError(f"cover {lower}<{upper} uses an unknown element")
            if lower == upper:
                raise InvalidParameterError(f"element {lower} covers itself")
        if len(set(self.covers)) != len(self.covers):
            raise InvalidParameterError("duplicate cover relation")
        graph = self.hasse
        if not nx.is_directed_acyclic_graph(graph):
            raise NotAcyclicError("cover relation has an oriented cycle")
        reduced = set(nx.transitive_reduction(graph).edges)
        redundant = sorted(set(self.covers) - reduced)
        if redundant:
            lower, upper = redundant[0]
            raise InvalidParameterError(f"{lower}<{upper} is not a cover (an element lies between)")

    @classmethod
    def from_relations(cls, elements: Sequence[VertexId], relations: Iterable[Sequence[VertexId]]) -> FinitePoset:
        """Poset generated by arbitrary order relations (reduced to covers)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(elements)
        graph.add_edges_from(tuple(r) for r in relations)
        if not nx.is_directed_acyclic_graph(graph):
            raise NotAcyclicError("order relations contain a cycle")
        order = {e: i for i, e in enumerate(elements)}
        covers = sorted(nx.transitive_reduction(graph).edges, key=lambda c: (order[c[0]], order[c[1]]))
        return cls(tuple(elements), tuple(covers))

    @cached_property
    def hasse(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.elements)
        graph.add_edges_from(self.covers)
        return graph

    @cached_property
    def _above(self) -> dict[VertexId, frozenset[VertexId]]:
        return {e: frozenset(nx.descendants(self.hasse, e)) for e in self.elements}

    def less(self, a: VertexId, b: VertexId) -> bool:
        """Strict order ``a < b``"""
        return b in self._above[a]

    def comparable(self, a: VertexId, b: VertexId) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def up_closure(self, subset: Iterable[VertexId]) -> frozenset[VertexId]:
        result = set(subset)
        for e in list(result):
            result |= self._above[e]
        return frozenset(result)

    @property
    def minimal(self) -> tuple[VertexId, ...]:
        return tuple(e for e in self.elements if self.hasse.in_degree(e) == 0)

    @property
    def maximal(self) -> tuple[VertexId, ...]:
        return tuple(e for e in self.elements if self.hasse.out_degree(e) == 0)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class StarredPoset:
    """Poset with designated star elements (all minima and maxima among them)"""

    poset: FinitePoset
    stars: tuple[VertexId, ...]

    def __post_init__(self):
        known = set(self.poset.elements)
        unknown = [s for s in self.stars if s not in known]
        if unknown:
            raise InvalidParameterError(f"stars {unknown} are not poset elements")
        star_set = set(self.stars)
        missing = [e for e in self.poset.minimal + self.poset.maximal if e not in star_set]
        if missing:
            raise InvalidParameterError(f"minimal/maximal elements {missing} must be stars")
        for lower, upper in self.poset.covers:
            if lower in star_set and upper in star_set:
                raise InvalidParameterError(f"cover {lower}<{upper} joins two stars")

    @property
    def normal_elements(self) -> tuple[VertexId, ...]:
        star_set = set(self.stars)
        return tuple(e for e in self.poset.elements if e not in star_set)


@dataclass(frozen=True)
class RankFunction:
    """Rank of each element; covers raise the rank by exactly one"""

    ranks: Mapping[VertexId, int]

    def __getitem__(self, v: VertexId) -> int:
        return self.ranks[v]

    def __contains__(self, v: VertexId) -> bool:
        return v in self.ranks


def bounded_extension(p: FinitePoset) -> StarredPoset:
    """Adjoin a global bottom ``hat0`` and top ``hat1``"""
    _check_free_names(p, (HAT0, HAT1))
    covers = [(HAT0, m) for m in p.minimal] + list(p.covers) + [(m, HAT1) for m in p.maximal]
    return StarredPoset(FinitePoset((HAT0, *p.elements, HAT1), tuple(covers)), (HAT0, HAT1))


def max_extension(p: FinitePoset) -> StarredPoset:
    """Adjoin ``hat0`` and a separate top ``hat1[m]`` above every maximal ``m``"""
    tops = tuple(top_name(m) for m in p.maximal)
    _check_free_names(p, (HAT0, *tops))
    covers = [(HAT0, m) for m in p.minimal] + list(p.covers) + [(m, top_name(m)) for m in p.maximal]
    return StarredPoset(FinitePoset((HAT0, *p.elements, *tops), tuple(covers)), (HAT0, *tops))


def _check_free_names(p: FinitePoset, names: Iterable[VertexId]) -> None:
    clash = [n for n in names if n in set(p.elements)]
    if clash:
        raise InvalidParameterError(f"element names {clash} are reserved for extensions")


def _potential(poset: FinitePoset) -> dict[VertexId, int] | None:
    """Integer potential rising by one along every cover, per connected component

    Each component is anchored at its first element with value 0. None if no
    consistent potential exists.
    """
    undirected = poset.hasse.to_undirected(as_view=True)
    value: dict[VertexId, int] = {}
    for start in poset.elements:
        if start in value:
            continue
        value[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in undirected.neighbors(u):
                step = 1 if poset.hasse.has_edge(u, w) else -1
                if w not in value:
                    value[w] = value[u] + step
                    stack.append(w)
                elif value[w] != value[u] + step:
                    return None
    return value


def _ranks_from_minima(poset: FinitePoset) -> dict[VertexId, int] | None:
    value = _potential(poset)
    if value is None:
        return None
    undirected = poset.hasse.to_undirected(as_view=True)
    ranks: dict[VertexId, int] = {}
    for component in nx.connected_components(undirected):
        minima = {value[e] for e in component if poset.hasse.in_degree(e) == 0}
        if len(minima) != 1:
            return None
        low = minima.pop()
        for e in component:
            ranks[e] = value[e] - low
    return ranks


def rank_function(p: FinitePoset | StarredPoset) -> RankFunction | None:
    """The rank function, or None if the poset is not ranked

    A plain poset is ranked when ``P`` plus a new bottom ``hat0`` is; then
    ``hat0`` has rank 0 and the minimal elements rank 1. A starred poset is
    ranked when all its minimal elements can get rank 0.
    """
    if isinstance(p, StarredPoset):
        ranks = _ranks_from_minima(p.poset)
        return RankFunction(ranks) if ranks is not None else None
    if HAT0 in p.elements:
        raise InvalidParameterError(f"element name {HAT0!r} is reserved")
    below = FinitePoset((HAT0, *p.elements), tuple((HAT0, m) for m in p.minimal) + p.covers)
    ranks = _ranks_from_minima(below)
    return RankFunction(ranks) if ranks is not None else None


def is_ranked_generalized(p: FinitePoset | StarredPoset) -> bool:
    """Ranked in the weaker sense where minimal elements may have different ranks"""
    poset = p.poset if isinstance(p, StarredPoset) else p
    return _potential(poset) is not None


def require_ranked(p: FinitePoset | StarredPoset) -> RankFunction:
    """Rank function, raising NotRankedError when there is none"""
    r = rank_function(p)
    if r is None:
        if is_ranked_generalized(p):
            logger.warning("poset is ranked only in the generalized sense (minimal elements of unequal rank)")
        raise NotRankedError("poset is not ranked: maximal chains below some element have different lengths")
    return r


def is_graded(p: FinitePoset) -> bool:
    """Whether all maximal chains of the bounded extension have equal length"""
    return rank_function(bounded_extension(p)) is not None


def hasse_quiver(sp: StarredPoset) -> StarredQuiver:
    """Starred quiver of the Hasse diagram, covers directed upwards

    Raises:
        PreconditionError: If the Hasse diagram is disconnected
    """
    return StarredQuiver.from_arrows(sp.normal_elements, sp.stars, sp.poset.covers)


def bounded_quiver(p: FinitePoset) -> StarredQuiver:
    """Quiver of the bounded extension"""
    return hasse_quiver(bounded_extension(p))


def filters(p: FinitePoset) -> list[frozenset[VertexId]]:
    """All up-sets, ordered by size and then by element positions

    Every filter is the up-closure of exactly one antichain, its set of minimal
    elements; antichains are enumerated depth-first.
    """
    elements = p.elements
    result: list[frozenset[VertexId]] = []

    def extend(start: int, chosen: list[VertexId]) -> None:
        result.append(p.up_closure(chosen))
        for i in range(start, len(elements)):
            e = elements[i]
            if all(not p.comparable(e, c) for c in chosen):
                chosen.append(e)
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    position = {e: i for i, e in enumerate(elements)}
    return sorted(result, key=lambda f: (len(f), sorted(position[e] for e in f)))


def order_polytope(p: FinitePoset) -> HPolytope:
    """Order polytope in R^P, one inequality per cover of the bounded extension

    ``f(v) >= 0`` above ``hat0``, ``f(v) <= 1`` below ``hat1`` and
    ``f(a) <= f(b)`` for covers ``a < b``.
    """
    index = {e: i for i, e in enumerate(p.elements)}
    n = len(p.elements)

    def unit(e: VertexId, sign: int = 1) -> list[int]:
        v = [0] * n
        v[index[e]] = sign
        return v

    inequalities = [Inequality.make(unit(m), 0) for m in p.minimal]
    for a, b in p.covers:
        normal = unit(b)
        normal[index[a]] = -1
        inequalities.append(Inequality.make(normal, 0))
    inequalities += [Inequality.make(unit(m, -1), 1) for m in p.maximal]
    return HPolytope(n, tuple(inequalities))


def _marked_inequalities(sp: StarredPoset, marks: Mapping[VertexId, int]) -> list[Inequality]:
    normal_elements = sp.normal_elements
    index = {e: i for i, e in enumerate(normal_elements)}
    n = len(normal_elements)
    inequalities = []
    for a, b in sp.poset.covers:
        normal = [0] * n
        offset = 0
        if b in index:
            normal[index[b]] += 1
        else:
            offset += marks[b]
        if a in index:
            normal[index[a]] -= 1
        else:
            offset -= marks[a]
        inequalities.append(Inequality.make(normal, offset))
    return inequalities


def marked_order_polytope(sp: StarredPoset, marks: Mapping[VertexId, int], check_marks: bool = True) -> HPolytope:
    """Marked order polytope in R^(normal elements)

    One inequality per cover with at least one normal endpoint; star
    endpoints are replaced by their marks.

    Args:
        sp: Starred poset
        marks: Integer mark of every star
        check_marks: Reject marks that are not order-preserving on comparable
            stars; with False the (possibly empty) system is returned as is

    Raises:
        InvalidParameterError: If a star has no mark or marks are not order-preserving
    """
    missing = [s for s in sp.stars if s not in marks]
    if missing:
        raise InvalidParameterError(f"stars {missing} have no mark")
    if check_marks:
        for s in sp.stars:
            for t in sp.stars:
                if sp.poset.less(s, t) and marks[s] > marks[t]:
                    raise InvalidParameterError(f"marks are not order-preserving: {s}={marks[s]} > {t}={marks[t]}")
    return HPolytope(len(sp.normal_elements), tuple(_marked_inequalities(sp, marks)))


def shifted_marked_order(sp: StarredPoset, r: RankFunction | None = None) -> HPolytope:
    """Marked order polytope with the ranks as marks, translated so the rank vector sits at 0

    Every inequality takes the form ``<L, x> >= -1``.

    Raises:
        NotRankedError: If ``sp`` is not ranked
        InvalidParameterError: If ``r`` is not a rank function of ``sp``
    """
    if r is None:
        r = require_ranked(sp)
    for e in sp.poset.elements:
        if e not in r:
            raise InvalidParameterError(f"rank function has no value for {e!r}")
    for a, b in sp.poset.covers:
        if r[b] != r[a] + 1:
            raise InvalidParameterError(f"rank function does not rise along cover {a}<{b}")
    marks = {s: r[s] for s in sp.stars}
    u = [r[e] for e in sp.normal_elements]
    shifted = []
    for ineq in _marked_inequalities(sp, marks):
        moved = Inequality(ineq.normal, ineq.offset + sum(c * x for c, x in zip(ineq.normal, u, strict=True)))
        shifted.append(moved)
    return HPolytope(len(u), tuple(shifted))


def count_linear_extensions(p: FinitePoset) -> int:
    """Number of linear extensions, by dynamic programming over down-sets"""
    elements = p.elements
    index = {e: i for i, e in enumerate(elements)}
    below = [0] * len(elements)
    for a, b in p.covers:
        below[index[b]] |= 1 << index[a]
    full = (1 << len(elements)) - 1

    @cache
    def count(placed: int) -> int:
        if placed == full:
            return 1
        total = 0
        for i in range(len(elements)):
            if not placed >> i & 1 and below[i] & placed == below[i]:
                total += count(placed | 1 << i)
        return total

    return count(0)
