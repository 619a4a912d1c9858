"""Tests for facets module"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings

from rootpoly.exceptions import InvalidParameterError
from rootpoly.exceptions import NotStronglyConnectedError
from rootpoly.facets import arrow_to_bullet
from rootpoly.facets import bullet_to_arrow
from rootpoly.facets import face_fan
from rootpoly.facets import facet_components
from rootpoly.facets import facet_labelings
from rootpoly.facets import facet_labelings_by_search
from rootpoly.facets import is_zero_sum
from rootpoly.polytope import f_vector
from rootpoly.polytope import hull
from rootpoly.polytope import is_reflexive
from rootpoly.polytope import is_terminal
from rootpoly.polytope import lattice_points
from rootpoly.quiver import StarredQuiver
from rootpoly.quiver import distinct_root_points
from rootpoly.toric import is_unimodular_fan
from rootpoly.toric import small_resolution_fan

from .conftest import CHAIN_FACETS
from .strategies import starred_quivers


class TestLabelings:
    """Test bullet and arrow labelings"""

    def test_bullet_to_arrow(self, square_quiver):
        """Test arrow values are head minus tail with stars at 0"""
        assert bullet_to_arrow(square_quiver, (1, 0)) == (1, -1, -1, 0)

    def test_arrow_to_bullet_inverts(self, chain_quiver):
        """Test the bullet labeling is recovered from its arrow labeling"""
        bullet = (3, 2, 2, 1, 2, 1)
        assert arrow_to_bullet(chain_quiver, bullet_to_arrow(chain_quiver, bullet)) == bullet

    def test_zero_sum(self, square_quiver):
        """Test a labeling with nonzero cycle sum is not 0-sum"""
        assert is_zero_sum(square_quiver, (1, -1, -1, 0))
        assert not is_zero_sum(square_quiver, (1, 0, 0, 0))
        with pytest.raises(InvalidParameterError):
            arrow_to_bullet(square_quiver, (1, 0, 0, 0))

    def test_length_checked(self, square_quiver):
        """Test labelings of the wrong length are rejected"""
        with pytest.raises(InvalidParameterError):
            bullet_to_arrow(square_quiver, (1, 0, 0))

    def test_fractional_bullet(self, segment):
        """Test fractional bullet labelings pass through exactly"""
        assert bullet_to_arrow(segment, (Fraction(1, 2),)) == (Fraction(1, 2), Fraction(-1, 2))


class TestFacetLabelings:
    """Test facet enumeration"""

    def test_square(self, square_quiver):
        """Test the four facets of the quadrilateral, sorted by bullet"""
        labelings = facet_labelings(square_quiver)
        assert [f.bullet for f in labelings] == [(-1, -2), (-1, 1), (1, 0), (1, 1)]
        assert labelings[2].values == (1, -1, -1, 0)
        assert labelings[2].flat == frozenset({1, 2})
        assert set(labelings[2].vertices) == {(-1, 0), (-1, 1)}

    def test_chain_quiver_table(self, chain_quiver):
        """Test all 18 facets of the chain quiver"""
        labelings = facet_labelings(chain_quiver)
        assert len(labelings) == 18
        assert {f.bullet for f in labelings} == set(CHAIN_FACETS)
        for f in labelings:
            assert min(f.values) == -1

    def test_chain_quiver_f_vector(self, chain_quiver):
        """Test the face numbers of Root"""
        root = hull(distinct_root_points(chain_quiver))[0]
        assert f_vector(root) == (9, 34, 70, 84, 57, 18)

    def test_not_strongly_connected(self):
        """Test facets need strong connectivity"""
        q = StarredQuiver.from_arrows(["a", "b"], ["s"], [("s", "a"), ("a", "b"), ("s", "b")])
        with pytest.raises(NotStronglyConnectedError):
            facet_labelings(q)

    def test_unstarred_quiver_gets_a_star(self):
        """Test a quiver without stars is starred before enumeration"""
        q = StarredQuiver(("a", "b", "c"), (), (("a", "b"), ("b", "c"), ("c", "a"), ("b", "a")))
        assert len(facet_labelings(q)) == 4

    def test_search_agrees(self, square_quiver, three_cycle_quiver, segment):
        """Test brute-force search finds the same facets"""
        for q in (square_quiver, three_cycle_quiver, segment):
            assert [f.bullet for f in facet_labelings_by_search(q)] == [f.bullet for f in facet_labelings(q)]


class TestComponents:
    """Test facet components"""

    def test_every_component_has_a_star(self, chain_quiver):
        """Test components of the -1 arrows each contain a star"""
        for labeling in facet_labelings(chain_quiver):
            components = facet_components(chain_quiver, labeling)
            covered = set().union(*(c.vertices for c in components))
            assert covered == set(chain_quiver.vertices)
            assert all(c.stars for c in components)

    def test_square_components(self, square_quiver):
        """Test the flat set v1 -> *, v1 -> v2 is one component"""
        labeling = facet_labelings(square_quiver)[2]
        components = facet_components(square_quiver, labeling)
        assert len(components) == 1
        assert components[0].vertices == frozenset({"*", "v1", "v2"})


class TestFaceFan:
    """Test the face fan"""

    def test_square_fan_is_smooth(self, square_quiver):
        """Test one cone per facet with unimodular generators"""
        fan = face_fan(square_quiver)
        assert len(fan.cones) == 4
        assert len(fan.rays) == 4

    def test_unstarred_cycle(self):
        """Test a quiver without stars gets a fan in the dimension of its rays"""
        q = StarredQuiver.from_arrows(["a", "b", "c"], [], [("a", "b"), ("b", "c"), ("c", "a")])
        fan = face_fan(q)
        assert fan.dim == 2
        assert all(len(ray) == fan.dim for ray in fan.rays)
        assert is_unimodular_fan(small_resolution_fan(q).fan)


class TestRootProperties:
    """Property tests on random strongly connected quivers"""

    @pytest.mark.slow
    @settings(max_examples=200, deadline=None)
    @given(starred_quivers(max_normal=6))
    def test_reflexive_and_terminal(self, q):
        """Test Root is reflexive and terminal"""
        root = hull(distinct_root_points(q))[0]
        assert is_reflexive(root)
        assert is_terminal(root)
        expected = set(distinct_root_points(q)) | {(0,) * q.dim}
        assert set(lattice_points(root)) == expected

    @settings(max_examples=25, deadline=None)
    @given(starred_quivers())
    def test_facet_labelings_are_integral(self, q):
        """Test every facet labeling is integral with minimum -1"""
        for f in facet_labelings(q):
            assert min(f.values) == -1
            assert f.values == tuple(bullet_to_arrow(q, f.bullet))
