"""JSON input documents for quivers, plane quivers and posets"""

from __future__ import annotations

from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel
from pydantic import Field
from pydantic import ValidationError
from pydantic import model_validator

from .exceptions import ParseError
from .planar import PlaneQuiver
from .planar import plane_quiver_from_coordinates
from .poset import FinitePoset
from .poset import StarredPoset
from .quiver import StarredQuiver
from .quiver import from_acyclic


def _check_endpoints(kind: str, known: list[str], pairs: list[tuple[str, str]]) -> None:
    names = set(known)
    for tail, head in pairs:
        unknown = [v for v in (tail, head) if v not in names]
        if unknown:
            raise ValueError(f"{kind} {tail}->{head} names unknown vertex {unknown[0]!r}")


class QuiverDocument(BaseModel):
    """Starred quiver as vertex lists and (tail, head) arrows"""

    normal_vertices: list[str] = Field(description="Normal vertex ids; their order fixes the coordinates")
    starred_vertices: list[str] = Field(default_factory=list, description="Starred vertex ids")
    arrows: list[tuple[str, str]] = Field(description="Arrows as [tail, head] pairs")
    acyclic: bool = Field(
        default=False,
        description="Treat the arrows as an acyclic quiver on normal_vertices and star its sources and sinks",
    )
    weights: dict[str, str | int] | None = Field(
        default=None,
        description="Superpotential weight per star: 1 or a parameter name",
    )

    @model_validator(mode="after")
    def _known_vertices(self) -> QuiverDocument:
        known = self.normal_vertices if self.acyclic else self.normal_vertices + self.starred_vertices
        _check_endpoints("arrow", known, self.arrows)
        return self

    def to_quiver(self) -> StarredQuiver:
        if self.acyclic:
            return from_acyclic(self.normal_vertices, self.arrows)
        return StarredQuiver.from_arrows(self.normal_vertices, self.starred_vertices, self.arrows)


class PlaneQuiverDocument(BaseModel):
    """Acyclic quiver with a plane embedding

    The embedding is either a rotation system with the outer face, or
    straight-line coordinates for every vertex.
    """

    vertices: list[str] = Field(description="Vertex ids")
    arrows: dict[str, tuple[str, str]] = Field(description="Arrow name to [tail, head]")
    rotation: dict[str, list[str]] | None = Field(
        default=None,
        description="Counterclockwise order of incident arrow names at each vertex",
    )
    outer_face: list[str] | None = Field(default=None, description="Arrow names on the outer face")
    outer_dart: int | None = Field(
        default=None,
        description="Dart on the outer face (2i forward, 2i+1 backward along arrow i) when the arrow set is ambiguous",
    )
    coordinates: dict[str, tuple[int, int]] | None = Field(
        default=None,
        description="Integer position of each vertex in a straight-line drawing",
    )

    @model_validator(mode="after")
    def _one_embedding(self) -> PlaneQuiverDocument:
        combinatorial = self.rotation is not None and self.outer_face is not None
        if combinatorial == (self.coordinates is not None):
            raise ValueError("give either rotation with outer_face, or coordinates")
        _check_endpoints("arrow", self.vertices, list(self.arrows.values()))
        return self

    def to_plane_quiver(self) -> PlaneQuiver:
        if self.coordinates is not None:
            return plane_quiver_from_coordinates(self.vertices, self.arrows, self.coordinates)
        return PlaneQuiver.build(self.vertices, self.arrows, self.rotation, self.outer_face, self.outer_dart)


class PosetDocument(BaseModel):
    """Finite poset by covers or arbitrary relations, optionally starred and marked"""

    elements: list[str] = Field(description="Element ids")
    covers: list[tuple[str, str]] = Field(default_factory=list, description="Cover relations [lower, upper]")
    relations: list[tuple[str, str]] = Field(
        default_factory=list,
        description="Order relations [lower, upper], reduced to covers",
    )
    stars: list[str] = Field(default_factory=list, description="Starred elements (for marked order polytopes)")
    marks: dict[str, int] | None = Field(default=None, description="Integer mark of each star")

    @model_validator(mode="after")
    def _covers_or_relations(self) -> PosetDocument:
        if self.covers and self.relations:
            raise ValueError("give covers or relations, not both")
        _check_endpoints("relation", self.elements, self.covers + self.relations)
        return self

    def to_poset(self) -> FinitePoset:
        if self.relations:
            return FinitePoset.from_relations(self.elements, self.relations)
        return FinitePoset(tuple(self.elements), tuple(self.covers))

    def reduction_log(self) -> list[str]:
        """Relations dropped because transitivity implies them"""
        if not self.relations:
            return []
        covers = set(self.to_poset().covers)
        return [
            f"dropped relation {lower} < {upper} (implied by transitivity)"
            for lower, upper in dict.fromkeys(self.relations)
            if (lower, upper) not in covers
        ]

    def to_starred(self) -> StarredPoset | None:
        """The starred poset, or None when no stars are given"""
        if not self.stars:
            return None
        return StarredPoset(self.to_poset(), tuple(self.stars))


T = TypeVar("T", bound=BaseModel)


def load_document(path: Path, model: type[T]) -> T:
    """Read and validate a JSON document

    Raises:
        ParseError: If the file cannot be read or does not match ``model``
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(str(e), str(path)) from e
    try:
        return model.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or str(path)
        raise ParseError(first["msg"], location) from e
