from __future__ import annotations

from .exceptions import DegenerateQuiverError
from .exceptions import EmbeddingError
from .exceptions import InvalidParameterError
from .exceptions import InvariantError
from .exceptions import NotAcyclicError
from .exceptions import NotFullDimensionalError
from .exceptions import NotRankedError
from .exceptions import NotStronglyConnectedError
from .exceptions import ParseError
from .exceptions import PreconditionError
from .exceptions import RootPolyError
from .exceptions import UnboundedPolytopeError
from .facets import FacetLabeling
from .facets import arrow_to_bullet
from .facets import bullet_to_arrow
from .facets import face_fan
from .facets import facet_components
from .facets import facet_labelings
from .fans import Cone
from .fans import Fan
from .fans import fans_equal
from .fans import normal_fan
from .fans import refines
from .planar import PlaneQuiver
from .planar import dual_quiver
from .planar import flow_polytope
from .planar import plane_quiver_from_coordinates
from .planar import verify_flow_duality
from .polytope import HPolytope
from .polytope import Inequality
from .polytope import VPolytope
from .polytope import hull
from .polytope import is_reflexive
from .polytope import is_terminal
from .polytope import lattice_points
from .polytope import polar_dual
from .poset import FinitePoset
from .poset import StarredPoset
from .poset import bounded_extension
from .poset import hasse_quiver
from .poset import marked_order_polytope
from .poset import max_extension
from .poset import order_polytope
from .poset import rank_function
from .poset import shifted_marked_order
from .quiver import StarredQuiver
from .quiver import distinct_root_points
from .quiver import from_acyclic
from .quiver import star_replace
from .toric import canonical_extension
from .toric import class_group
from .toric import fano_index
from .toric import picard_group
from .toric import small_resolution_fan
from .toric import superpotential
from .toric import superpotential_polytope

__all__ = [
    "StarredQuiver",
    "from_acyclic",
    "star_replace",
    "distinct_root_points",
    "HPolytope",
    "VPolytope",
    "Inequality",
    "hull",
    "polar_dual",
    "lattice_points",
    "is_reflexive",
    "is_terminal",
    "FacetLabeling",
    "facet_labelings",
    "facet_components",
    "bullet_to_arrow",
    "arrow_to_bullet",
    "face_fan",
    "Cone",
    "Fan",
    "normal_fan",
    "refines",
    "fans_equal",
    "PlaneQuiver",
    "plane_quiver_from_coordinates",
    "dual_quiver",
    "flow_polytope",
    "verify_flow_duality",
    "FinitePoset",
    "StarredPoset",
    "bounded_extension",
    "max_extension",
    "hasse_quiver",
    "rank_function",
    "order_polytope",
    "marked_order_polytope",
    "shifted_marked_order",
    "canonical_extension",
    "small_resolution_fan",
    "picard_group",
    "class_group",
    "fano_index",
    "superpotential",
    "superpotential_polytope",
    "RootPolyError",
    "ParseError",
    "InvalidParameterError",
    "PreconditionError",
    "NotStronglyConnectedError",
    "NotRankedError",
    "NotAcyclicError",
    "EmbeddingError",
    "UnboundedPolytopeError",
    "NotFullDimensionalError",
    "DegenerateQuiverError",
    "InvariantError",
]
