"""Tests for poset module"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings

from rootpoly.exceptions import InvalidParameterError
from rootpoly.exceptions import NotAcyclicError
from rootpoly.exceptions import NotRankedError
from rootpoly.polytope import Inequality
from rootpoly.polytope import lattice_points
from rootpoly.polytope import normalized_volume
from rootpoly.polytope import polar_dual
from rootpoly.polytope import vertices_of
from rootpoly.poset import HAT0
from rootpoly.poset import HAT1
from rootpoly.poset import FinitePoset
from rootpoly.poset import RankFunction
from rootpoly.poset import StarredPoset
from rootpoly.poset import bounded_extension
from rootpoly.poset import bounded_quiver
from rootpoly.poset import count_linear_extensions
from rootpoly.poset import filters
from rootpoly.poset import hasse_quiver
from rootpoly.poset import is_graded
from rootpoly.poset import is_ranked_generalized
from rootpoly.poset import marked_order_polytope
from rootpoly.poset import max_extension
from rootpoly.poset import order_polytope
from rootpoly.poset import rank_function
from rootpoly.poset import require_ranked
from rootpoly.poset import shifted_marked_order
from rootpoly.poset import top_name
from rootpoly.quiver import distinct_root_points

from .strategies import ranked_posets


def unit(n: int, i: int, sign: int = 1) -> tuple[int, ...]:
    return tuple(sign if j == i else 0 for j in range(n))


class TestFinitePoset:
    """Test poset construction"""

    def test_minimal_maximal(self, ranked_poset):
        """Test extremal elements"""
        assert ranked_poset.minimal == ("a",)
        assert ranked_poset.maximal == ("e", "f")

    def test_order(self, ranked_poset):
        """Test the order is the transitive closure of covers"""
        assert ranked_poset.less("a", "f")
        assert not ranked_poset.less("c", "d")
        assert not ranked_poset.comparable("c", "d")

    def test_non_cover_rejected(self):
        """Test a relation implied by others is not a cover"""
        with pytest.raises(InvalidParameterError):
            FinitePoset(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))

    def test_cycle_rejected(self):
        """Test cover relations must be acyclic"""
        with pytest.raises(NotAcyclicError):
            FinitePoset(("a", "b"), (("a", "b"), ("b", "a")))

    def test_from_relations(self):
        """Test arbitrary relations are reduced to covers"""
        p = FinitePoset.from_relations(("a", "b", "c"), [("a", "b"), ("b", "c"), ("a", "c")])
        assert p.covers == (("a", "b"), ("b", "c"))

    def test_starred_poset_needs_extremal_stars(self):
        """Test minimal and maximal elements must be stars"""
        p = FinitePoset(("s", "v", "t"), (("s", "v"), ("v", "t")))
        StarredPoset(p, ("s", "t"))
        with pytest.raises(InvalidParameterError):
            StarredPoset(p, ("s",))


class TestRanks:
    """Test rank functions and gradedness"""

    def test_plain_ranks_start_at_one(self, ranked_poset):
        """Test minima of a plain poset have rank 1"""
        r = rank_function(ranked_poset)
        assert r is not None
        assert [r[e] for e in "abcdef"] == [1, 2, 2, 3, 3, 4]

    def test_starred_ranks_start_at_zero(self, chain_poset):
        """Test minima of a starred poset have rank 0"""
        r = rank_function(chain_poset)
        assert r is not None
        assert [r[f"v{i}"] for i in range(1, 7)] == [1, 2, 3, 4, 2, 3]
        assert (r["s0"], r["s1"], r["s2"]) == (0, 5, 4)

    def test_not_ranked(self, unranked_poset):
        """Test a poset with chains of unequal length below an element"""
        assert rank_function(unranked_poset) is None
        with pytest.raises(NotRankedError):
            require_ranked(unranked_poset)

    def test_generalized_ranked(self):
        """Test minima of unequal rank fail only the strict notion"""
        p = FinitePoset(("a", "b", "c", "d"), (("a", "b"), ("b", "c"), ("d", "c")))
        assert rank_function(p) is None
        assert is_ranked_generalized(p)
        covers = (("a", "b"), ("b", "c"), ("c", "d"), ("a", "e"), ("e", "d"))
        assert not is_ranked_generalized(FinitePoset(tuple("abcde"), covers))

    def test_graded(self, ranked_poset):
        """Test gradedness needs all maxima at one rank"""
        assert not is_graded(ranked_poset)
        chain = FinitePoset(("a", "b", "c"), (("a", "b"), ("b", "c")))
        assert is_graded(chain)


class TestExtensions:
    """Test bounded and maximal extensions"""

    def test_bounded_extension(self, ranked_poset):
        """Test one bottom and one top are adjoined"""
        sp = bounded_extension(ranked_poset)
        assert sp.stars == (HAT0, HAT1)
        assert (HAT0, "a") in sp.poset.covers
        assert ("e", HAT1) in sp.poset.covers
        assert ("f", HAT1) in sp.poset.covers

    def test_max_extension(self, ranked_poset):
        """Test one top per maximal element"""
        sp = max_extension(ranked_poset)
        assert sp.stars == (HAT0, top_name("e"), top_name("f"))
        assert ("e", "hat1[e]") in sp.poset.covers

    def test_reserved_names(self):
        """Test extension names cannot clash with elements"""
        with pytest.raises(InvalidParameterError):
            bounded_extension(FinitePoset((HAT0,), ()))

    def test_bounded_quiver_points(self, ranked_poset):
        """Test the bounded quiver has one arrow per cover of the extension"""
        q = bounded_quiver(ranked_poset)
        assert q.dim == 6
        assert len(q.arrows) == 1 + 6 + 2


class TestFilters:
    """Test filter enumeration"""

    def test_chain(self):
        """Test a chain of length 3 has 4 filters"""
        chain = FinitePoset(("a", "b", "c"), (("a", "b"), ("b", "c")))
        assert filters(chain) == [frozenset(), frozenset("c"), frozenset("bc"), frozenset("abc")]

    def test_filters_are_order_polytope_vertices(self, ranked_poset):
        """Test indicator vectors of filters are the order polytope vertices"""
        indicators = {tuple(Fraction(int(e in f)) for e in ranked_poset.elements) for f in filters(ranked_poset)}
        assert set(vertices_of(order_polytope(ranked_poset)).vertices) == indicators


class TestOrderPolytopes:
    """Test order and marked order polytopes"""

    def test_order_polytope_inequalities(self, ranked_poset):
        """Test one inequality per cover of the bounded extension"""
        h = order_polytope(ranked_poset)
        assert len(h.inequalities) == 1 + 6 + 2
        assert Inequality.make(unit(6, 0), 0) in h.inequalities
        assert Inequality.make(unit(6, 4, -1), 1) in h.inequalities

    def test_volume_counts_linear_extensions(self, ranked_poset):
        """Test normalized volume equals the number of linear extensions"""
        assert count_linear_extensions(ranked_poset) == 9
        assert normalized_volume(vertices_of(order_polytope(ranked_poset))) == 9

    def test_marked_order_polytope(self, chain_poset):
        """Test star endpoints are replaced by marks"""
        h = marked_order_polytope(chain_poset, {"s0": 0, "s1": 5, "s2": 4})
        assert len(h.inequalities) == 9
        assert Inequality.make(unit(6, 3, -1), 5) in h.inequalities
        assert h.contains((1, 2, 3, 4, 2, 3))

    def test_marks_must_be_order_preserving(self, chain_poset):
        """Test decreasing marks on comparable stars are rejected"""
        with pytest.raises(InvalidParameterError):
            marked_order_polytope(chain_poset, {"s0": 6, "s1": 5, "s2": 4})
        h = marked_order_polytope(chain_poset, {"s0": 6, "s1": 5, "s2": 4}, check_marks=False)
        assert len(h.inequalities) == 9

    def test_missing_mark(self, chain_poset):
        """Test every star needs a mark"""
        with pytest.raises(InvalidParameterError):
            marked_order_polytope(chain_poset, {"s0": 0, "s1": 5})

    def test_shifted_marked_order(self, chain_poset):
        """Test the shifted polytope has all offsets 1 and the expected normals"""
        h = shifted_marked_order(chain_poset)
        assert all(f.offset == 1 for f in h.inequalities)
        e = [unit(6, i) for i in range(6)]

        def diff(i: int, j: int) -> tuple[int, ...]:
            return tuple(a - b for a, b in zip(e[i], e[j], strict=True))

        expected = {
            e[0],
            diff(1, 0),
            diff(2, 1),
            diff(3, 2),
            unit(6, 3, -1),
            diff(5, 1),
            diff(4, 0),
            diff(5, 4),
            unit(6, 5, -1),
        }
        assert {f.normal for f in h.inequalities} == expected

    def test_shifted_polar_is_root(self, chain_poset):
        """Test the polar dual of the shifted polytope is Root of the Hasse quiver"""
        dual = polar_dual(vertices_of(shifted_marked_order(chain_poset)))
        q = hasse_quiver(chain_poset)
        assert set(dual.vertices) == {tuple(Fraction(x) for x in p) for p in distinct_root_points(q)}

    def test_shifted_rejects_bad_rank(self, chain_poset):
        """Test a function that does not rise along covers is rejected"""
        bad = RankFunction({e: 0 for e in chain_poset.poset.elements})
        with pytest.raises(InvalidParameterError):
            shifted_marked_order(chain_poset, bad)

    @settings(max_examples=15, deadline=None)
    @given(ranked_posets())
    def test_shifted_is_reflexive_lattice_polytope(self, p):
        """Test the shifted order polytope has the origin as its only interior lattice point"""
        h = shifted_marked_order(max_extension(p))
        interior = [x for x in lattice_points(h) if h.interior_contains(x)]
        assert interior == [(0,) * len(p)]
