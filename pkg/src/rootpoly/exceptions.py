"""Exception hierarchy"""

from __future__ import annotations


class RootPolyError(Exception):
    """Base class for all rootpoly errors"""


class ParseError(RootPolyError):
    """Malformed input document"""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class InvalidParameterError(RootPolyError):
    """Malformed argument (shape, arity, integrality)"""


class PreconditionError(RootPolyError):
    """A mathematical precondition of an operation does not hold"""


class NotStronglyConnectedError(PreconditionError):
    """Quiver with identified stars is not strongly connected"""

    def __init__(self, source: str, target: str):
        self.source = source
        self.target = target
        super().__init__(f"no oriented path from {source!r} to {target!r}")


class NotRankedError(PreconditionError):
    """Poset is not ranked"""


class NotAcyclicError(PreconditionError):
    """Quiver or cover relation contains an oriented cycle"""


class EmbeddingError(PreconditionError):
    """Rotation system does not describe a plane embedding"""


class UnboundedPolytopeError(PreconditionError):
    """Inequality system does not define a bounded set"""


class NotFullDimensionalError(PreconditionError):
    """Polytope or cone is not full-dimensional where that is required"""


class DegenerateQuiverError(PreconditionError):
    """Quiver has no normal vertices, or a dual has no bounded faces"""


class InvariantError(RootPolyError):
    """An internal guarantee was violated"""
