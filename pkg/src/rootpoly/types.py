"""Type aliases"""

from __future__ import annotations

from fractions import Fraction

from typing_extensions import TypeAliasType

# Vertex identifiers of quivers and posets
VertexId = TypeAliasType("VertexId", str)

# An arrow as (tail, head)
ArrowPair = TypeAliasType("ArrowPair", tuple[str, str])

# Exact vectors and matrices (row-major)
IVec = TypeAliasType("IVec", tuple[int, ...])
QVec = TypeAliasType("QVec", tuple[Fraction, ...])
IMat = TypeAliasType("IMat", tuple[IVec, ...])
QMat = TypeAliasType("QMat", tuple[QVec, ...])

# Anything a matrix can be built from
Scalar = TypeAliasType("Scalar", int | Fraction)
MatrixLike = TypeAliasType("MatrixLike", list[list[Scalar]] | tuple[tuple[Scalar, ...], ...])
