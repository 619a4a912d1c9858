"""Tests for fans module"""

import pytest
from hypothesis import given
from hypothesis import settings

from rootpoly.exceptions import InvalidParameterError
from rootpoly.exceptions import NotFullDimensionalError
from rootpoly.facets import face_fan
from rootpoly.fans import Cone
from rootpoly.fans import Fan
from rootpoly.fans import cone_contains
from rootpoly.fans import cone_facets
from rootpoly.fans import cones_containing
from rootpoly.fans import fans_equal
from rootpoly.fans import is_simplicial
from rootpoly.fans import is_unimodular
from rootpoly.fans import normal_fan
from rootpoly.fans import refines
from rootpoly.polytope import VPolytope
from rootpoly.poset import bounded_quiver
from rootpoly.poset import order_polytope

from .strategies import graded_posets
from .strategies import ranked_posets


class TestCone:
    """Test cones"""

    def test_of_makes_primitive(self):
        """Test generators are primitive, deduplicated and sorted"""
        c = Cone.of([(2, 0), (0, 3), (1, 0)])
        assert c.generators == ((0, 1), (1, 0))

    def test_contains(self):
        """Test membership in the positive quadrant"""
        c = Cone.of([(1, 0), (0, 1)])
        assert cone_contains(c, (2, 3))
        assert not cone_contains(c, (-1, 1))

    def test_lower_dimensional_cone(self):
        """Test a ray contains only its nonnegative multiples"""
        c = Cone.of([(1, 1)])
        assert cone_contains(c, (2, 2))
        assert not cone_contains(c, (-1, -1))
        assert not cone_contains(c, (1, 0))

    def test_simplicial_and_unimodular(self):
        """Test simplicial cones and determinant checks"""
        assert is_unimodular(Cone.of([(1, 0), (1, 1)]))
        assert not is_unimodular(Cone.of([(1, 0), (1, 2)]))
        assert is_simplicial(Cone.of([(1, 0), (1, 2)]))
        assert not is_simplicial(Cone.of([(1, 0, 0), (0, 1, 0), (1, 1, 0)]))

    def test_cone_facets(self):
        """Test facet normals of a quadrant and the equation of a ray"""
        quadrant = cone_facets(Cone.of([(1, 0), (0, 1)]))
        assert set(quadrant.inequalities) == {(1, 0), (0, 1)}
        assert quadrant.equations == ()
        assert len(cone_facets(Cone.of([(1, 1)])).equations) == 1


class TestFan:
    """Test fan construction and comparison"""

    def test_from_cones_shares_rays(self):
        """Test rays are shared between cones"""
        fan = Fan.from_cones(2, [[(1, 0), (0, 1)], [(0, 1), (-1, 0)]])
        assert len(fan.rays) == 3
        assert cones_containing(fan, (0, 1)) == [0, 1]

    def test_unknown_ray(self):
        """Test cones must index existing rays"""
        with pytest.raises(InvalidParameterError):
            Fan(2, ((1, 0),), (frozenset({0, 1}),))

    def test_normal_fan_of_square(self):
        """Test the normal fan of a square has the four quadrants"""
        square = VPolytope.of(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
        fan = normal_fan(square)
        assert len(fan.cones) == 4
        assert set(fan.rays) == {(1, 0), (0, 1), (-1, 0), (0, -1)}

    def test_normal_fan_needs_full_dimension(self):
        """Test lower-dimensional polytopes have no complete normal fan here"""
        with pytest.raises(NotFullDimensionalError):
            normal_fan(VPolytope.of(2, [(0, 0), (1, 1)]))

    def test_refinement_of_quadrants(self):
        """Test splitting a quadrant refines the coarser fan"""
        coarse = Fan.from_cones(2, [[(1, 0), (0, 1)], [(0, 1), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)]])
        fine = Fan.from_cones(
            2,
            [[(1, 0), (1, 1)], [(1, 1), (0, 1)], [(0, 1), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)]],
        )
        assert not refines(fine, coarse)
        assert refines(fine, fine)
        assert fans_equal(coarse, coarse)
        assert not fans_equal(coarse, fine)


class TestOrderPolytopeFans:
    """Test the face fan of the bounded quiver against the order polytope's normal fan"""

    def test_ranked_refines_not_equal(self, ranked_poset):
        """Test a ranked non-graded poset gives a proper refinement"""
        ff = face_fan(bounded_quiver(ranked_poset))
        nf = normal_fan(order_polytope(ranked_poset))
        result = refines(ff, nf)
        assert result
        assert result.witness is None
        assert len(result.containers) == len(ff.cones)
        assert not fans_equal(ff, nf)

    def test_unranked_fails_with_witness(self, unranked_poset):
        """Test the refinement can fail for posets that are not ranked"""
        ff = face_fan(bounded_quiver(unranked_poset))
        nf = normal_fan(order_polytope(unranked_poset))
        result = refines(ff, nf)
        assert not result
        assert result.witness is not None

    @pytest.mark.slow
    @settings(max_examples=25, deadline=None)
    @given(ranked_posets(max_levels=4, max_width=3, max_elements=7))
    def test_ranked_posets_refine(self, p):
        """Test the refinement for random ranked posets with up to 7 elements"""
        assert refines(face_fan(bounded_quiver(p)), normal_fan(order_polytope(p)))

    @settings(max_examples=15, deadline=None)
    @given(graded_posets())
    def test_graded_posets_coincide(self, p):
        """Test the fans coincide for graded posets"""
        assert fans_equal(face_fan(bounded_quiver(p)), normal_fan(order_polytope(p)))
