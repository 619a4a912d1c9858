"""Tests for documents module"""

import pytest
from pydantic import ValidationError

from rootpoly.documents import PlaneQuiverDocument
from rootpoly.documents import PosetDocument
from rootpoly.documents import QuiverDocument
from rootpoly.documents import load_document
from rootpoly.exceptions import ParseError
from rootpoly.facets import facet_labelings
from rootpoly.planar import faces_of


class TestQuiverDocument:
    """Test quiver documents"""

    def test_load_chain(self, data_dir, chain_quiver):
        """Test the chain document builds the chain quiver"""
        q = load_document(data_dir / "chain.json", QuiverDocument).to_quiver()
        assert q == chain_quiver
        assert len(facet_labelings(q)) == 18

    def test_acyclic_flag(self, data_dir):
        """Test sources and sinks are starred and then identified"""
        q = load_document(data_dir / "acyclic.json", QuiverDocument).to_quiver()
        assert q.normal_vertices == ("B",)
        assert q.starred_vertices == ("A",)
        assert q.normalization_log

    def test_weights_default_to_none(self, data_dir):
        """Test documents without weights leave them unset"""
        assert load_document(data_dir / "segment.json", QuiverDocument).weights is None


class TestPlaneQuiverDocument:
    """Test plane quiver documents"""

    def test_rotation_document(self, data_dir, lens_plane_quiver):
        """Test a rotation system with an outer face"""
        pq = load_document(data_dir / "lens_plane.json", PlaneQuiverDocument).to_plane_quiver()
        assert len(faces_of(pq).bounded) == len(faces_of(lens_plane_quiver).bounded) == 2

    def test_coordinates_document(self, data_dir):
        """Test a straight-line drawing"""
        pq = load_document(data_dir / "diamond_plane.json", PlaneQuiverDocument).to_plane_quiver()
        assert len(faces_of(pq).bounded) == 1

    def test_needs_exactly_one_embedding(self):
        """Test rotation and coordinates are mutually exclusive"""
        with pytest.raises(ValidationError):
            PlaneQuiverDocument(vertices=["a", "b"], arrows={"x": ("a", "b")})
        with pytest.raises(ValidationError):
            PlaneQuiverDocument(
                vertices=["a", "b"],
                arrows={"x": ("a", "b")},
                rotation={"a": ["x"], "b": ["x"]},
                outer_face=["x"],
                coordinates={"a": (0, 0), "b": (1, 0)},
            )


class TestPosetDocument:
    """Test poset documents"""

    def test_starred_with_marks(self, data_dir, chain_poset):
        """Test stars and marks are read"""
        document = load_document(data_dir / "chain_poset.json", PosetDocument)
        assert document.to_starred() == chain_poset
        assert document.marks == {"s0": 0, "s1": 5, "s2": 4}

    def test_relations_reduced(self, data_dir, unranked_poset):
        """Test relations are reduced to covers"""
        document = load_document(data_dir / "unranked_poset.json", PosetDocument)
        p = document.to_poset()
        assert p.elements == unranked_poset.elements
        assert set(p.covers) == set(unranked_poset.covers)
        assert document.to_starred() is None

    def test_reduction_log(self):
        """Test relations implied by transitivity are listed once"""
        document = PosetDocument(elements=["a", "b", "c"], relations=[("a", "b"), ("b", "c"), ("a", "c"), ("a", "c")])
        assert document.reduction_log() == ["dropped relation a < c (implied by transitivity)"]
        assert PosetDocument(elements=["a", "b"], covers=[("a", "b")]).reduction_log() == []


class TestLoadDocument:
    """Test reading documents from disk"""

    def test_malformed_json(self, data_dir):
        """Test invalid JSON is a parse error"""
        with pytest.raises(ParseError):
            load_document(data_dir / "malformed.json", QuiverDocument)

    def test_missing_file(self, tmp_path):
        """Test an unreadable path is a parse error with its location"""
        path = tmp_path / "missing.json"
        with pytest.raises(ParseError) as exc_info:
            load_document(path, QuiverDocument)
        assert exc_info.value.location == str(path)

    def test_covers_and_relations(self, data_dir):
        """Test a poset document cannot give both covers and relations"""
        with pytest.raises(ParseError):
            load_document(data_dir / "covers_and_relations.json", PosetDocument)

    def test_unknown_vertex(self, data_dir):
        """Test an arrow naming an undeclared vertex is a parse error"""
        with pytest.raises(ParseError, match="unknown vertex 't'"):
            load_document(data_dir / "unknown_vertex.json", QuiverDocument)

    def test_unknown_element(self):
        """Test covers and plane arrows are checked against the declared names"""
        with pytest.raises(ValidationError):
            PosetDocument(elements=["a"], covers=[("a", "b")])
        with pytest.raises(ValidationError):
            PlaneQuiverDocument(vertices=["a"], arrows={"x": ("a", "b")}, coordinates={"a": (0, 0)})

    def test_missing_field_location(self, tmp_path):
        """Test the location names the missing field"""
        path = tmp_path / "quiver.json"
        path.write_text('{"normal_vertices": ["v"]}', encoding="utf-8")
        with pytest.raises(ParseError) as exc_info:
            load_document(path, QuiverDocument)
        assert exc_info.value.location == "arrows"
