"""Exact linear algebra over the integers and the rationals

Determinants and row reduction go through sympy's DomainMatrix over ZZ/QQ.
The Smith normal form is computed here together with its unimodular
transforms, which sympy does not expose.

Features:
- Determinant, rank, reduced row echelon form, rational kernels
- Smith normal form with U, V such that U * M * V = D
- Saturated integer kernels and lattice bases of integer rows
- Primitive integer vectors from rational directions
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import gcd
from math import lcm
from typing import NamedTuple

from sympy.polys.domains import QQ
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from typing_extensions import TypeAliasType

from .exceptions import InvalidParameterError
from .types import IMat
from .types import IVec
from .types import QMat
from .types import QVec
from .types import Scalar

Rows = TypeAliasType("Rows", Sequence[Sequence[Scalar]])


class SmithForm(NamedTuple):
    """Smith normal form ``u * m * v == d`` with unimodular ``u`` and ``v``"""

    u: IMat
    d: IMat
    v: IMat

    @property
    def diagonal(self) -> IVec:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def _shape(m: Rows, ncols: int | None = None) -> tuple[int, int]:
    nrows = len(m)
    if nrows == 0:
        return 0, ncols or 0
    width = len(m[0])
    if any(len(row) != width for row in m):
        raise InvalidParameterError("ragged matrix: rows have different lengths")
    if ncols is not None and width != ncols:
        raise InvalidParameterError(f"expected {ncols} columns, got {width}")
    return nrows, width


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    # QQ elements (python or gmpy backed) expose numerator/denominator
    return Fraction(int(x.numerator), int(x.denominator))


def is_integral(m: Rows) -> bool:
    return all(isinstance(x, int) or Fraction(x).denominator == 1 for row in m for x in row)


def _domain_matrix(m: Rows) -> DomainMatrix:
    nrows, ncols = _shape(m)
    if is_integral(m):
        return DomainMatrix([[ZZ(int(x)) for x in row] for row in m], (nrows, ncols), ZZ)
    return DomainMatrix(
        [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in m], (nrows, ncols), QQ
    )


def determinant(m: Rows) -> int | Fraction:
    """Exact determinant of a square matrix

    Args:
        m: Square matrix with int or Fraction entries

    Returns:
        The determinant (an int for integer matrices)

    Raises:
        InvalidParameterError: If the matrix is not square
    """
    nrows, ncols = _shape(m)
    if nrows != ncols:
        raise InvalidParameterError(f"determinant needs a square matrix, got {nrows}x{ncols}")
    if nrows == 0:
        return 1
    value = _to_fraction(_domain_matrix(m).det())
    return int(value) if value.denominator == 1 else value


def rref(m: Rows, ncols: int | None = None) -> tuple[QMat, tuple[int, ...]]:
    """Reduced row echelon form over QQ

    Returns:
        (nonzero rows of the echelon form, pivot columns)
    """
    nrows, width = _shape(m, ncols)
    if nrows == 0 or width == 0:
        return (), ()
    reduced, pivots = _domain_matrix(m).convert_to(QQ).rref()
    rows = [[_to_fraction(x) for x in row] for row in reduced.to_list()]
    return tuple(tuple(row) for row in rows[: len(pivots)]), tuple(int(p) for p in pivots)


def rank(m: Rows, ncols: int | None = None) -> int:
    """Rank over QQ"""
    return len(rref(m, ncols)[1])


def lattice_rank(m: Rows, ncols: int | None = None) -> int:
    """Rank of the lattice spanned by integer rows (their rank over QQ)"""
    return rank(m, ncols)


def nullspace(m: Rows, ncols: int) -> QMat:
    """Basis of the rational kernel ``{x : m x = 0}``

    Args:
        m: Matrix (possibly with zero rows)
        ncols: Number of columns (needed when ``m`` has no rows)
    """
    reduced, pivots = rref(m, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(reduced, pivots, strict=True):
            x[p] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def solve_rational(a: Rows, b: Sequence[Scalar], ncols: int | None = None) -> QVec | None:
    """One rational solution of ``a x = b``, or None if inconsistent"""
    nrows, width = _shape(a, ncols)
    if len(b) != nrows:
        raise InvalidParameterError(f"right-hand side has length {len(b)}, expected {nrows}")
    augmented = [list(row) + [b[i]] for i, row in enumerate(a)]
    reduced, pivots = rref(augmented, width + 1)
    if width in pivots:
        return None
    x = [Fraction(0)] * width
    for row, p in zip(reduced, pivots, strict=True):
        x[p] = row[width]
    return tuple(x)


def inverse(m: Rows) -> QMat:
    """Exact inverse of a square nonsingular matrix"""
    nrows, ncols = _shape(m)
    if nrows != ncols:
        raise InvalidParameterError(f"inverse needs a square matrix, got {nrows}x{ncols}")
    if determinant(m) == 0:
        raise InvalidParameterError("matrix is singular")
    inv = _domain_matrix(m).convert_to(QQ).inv()
    return tuple(tuple(_to_fraction(x) for x in row) for row in inv.to_list())


def matmul(a: Rows, b: Rows) -> tuple[tuple[Fraction | int, ...], ...]:
    """Matrix product (entries stay ints when both factors are integral)"""
    if not a or not b:
        return ()
    if len(a[0]) != len(b):
        raise InvalidParameterError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = list(zip(*b, strict=True))
    return tuple(tuple(sum(x * y for x, y in zip(row, col, strict=True)) for col in cols) for row in a)


def matvec(a: Rows, v: Sequence[Scalar]) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v, strict=True)) for row in a)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]):
    return sum(x * y for x, y in zip(u, v, strict=True))


def transpose(m: Rows) -> tuple[tuple, ...]:
    return tuple(zip(*m, strict=True)) if m else ()


def identity(n: int) -> IMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def primitive(v: Sequence[Scalar]) -> IVec:
    """Primitive integer vector in the direction of ``v`` (zero stays zero)"""
    fractions = [Fraction(x) for x in v]
    denominator = lcm(*(f.denominator for f in fractions)) if fractions else 1
    ints = [int(f * denominator) for f in fractions]
    g = gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def clear_denominators(v: Sequence[Scalar]) -> tuple[IVec, int]:
    """Integer vector ``k * v`` with the least positive ``k``"""
    fractions = [Fraction(x) for x in v]
    k = lcm(*(f.denominator for f in fractions)) if fractions else 1
    return tuple(int(f * k) for f in fractions), k


def as_integral(v: Sequence[Scalar]) -> IVec | None:
    """``v`` as ints, or None if some entry is not an integer"""
    fractions = [Fraction(x) for x in v]
    if any(f.denominator != 1 for f in fractions):
        return None
    return tuple(int(f) for f in fractions)


def smith_normal_form(m: Rows, ncols: int | None = None) -> SmithForm:
    """Smith normal form of an integer matrix with its transforms

    Pivot on the smallest nonzero entry, clear its row and column by integer
    division, and fold in any entry the pivot does not divide, until the
    matrix is diagonal with each entry dividing the next.

    Args:
        m: Integer matrix
        ncols: Number of columns (needed when ``m`` has no rows)

    Returns:
        SmithForm(u, d, v) with ``u * m * v == d``

    Raises:
        InvalidParameterError: If ``m`` has non-integer entries
    """
    nrows, width = _shape(m, ncols)
    if not is_integral(m):
        raise InvalidParameterError("Smith normal form needs an integer matrix")
    a = [[int(x) for x in row] for row in m]
    u = [list(row) for row in identity(nrows)]
    v = [list(row) for row in identity(width)]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(target: int, source: int, k: int) -> None:
        a[target] = [x + k * y for x, y in zip(a[target], a[source], strict=True)]
        u[target] = [x + k * y for x, y in zip(u[target], u[source], strict=True)]

    def add_col(target: int, source: int, k: int) -> None:
        for row in a:
            row[target] += k * row[source]
        for row in v:
            row[target] += k * row[source]

    for t in range(min(nrows, width)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, width) if a[i][j] != 0]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, width):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            offender = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, width) if a[i][j] % pivot != 0),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, 1)
        if t < nrows and t < width and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithForm(
        u=tuple(tuple(row) for row in u),
        d=tuple(tuple(row) for row in a),
        v=tuple(tuple(row) for row in v),
    )


def integer_kernel(m: Rows, ncols: int) -> IMat:
    """Saturated integer basis of ``{x in Z^ncols : m x = 0}``

    The trailing columns of the Smith column transform span the kernel, and
    since the transform is unimodular they span it over the integers.
    """
    if not m:
        return identity(ncols)
    snf = smith_normal_form(m, ncols)
    r = snf.rank
    return tuple(tuple(snf.v[i][j] for i in range(ncols)) for j in range(r, ncols))


def row_lattice_basis(rows: Rows, ncols: int) -> IMat:
    """Basis of the lattice spanned by integer rows (integer echelon reduction)"""
    _shape(rows, ncols)
    if not is_integral(rows):
        raise InvalidParameterError("lattice basis needs integer rows")
    pool = [[int(x) for x in row] for row in rows if any(row)]
    basis: list[IVec] = []
    for col in range(ncols):
        while True:
            active = [r for r in pool if r[col] != 0]
            if len(active) <= 1:
                break
            pivot = min(active, key=lambda r: abs(r[col]))
            for r in active:
                if r is not pivot:
                    q = r[col] // pivot[col]
                    for k in range(ncols):
                        r[k] -= q * pivot[k]
        active = [r for r in pool if r[col] != 0]
        if active:
            row = active[0]
            if row[col] < 0:
                row = [-x for x in row]
            basis.append(tuple(row))
            pool = [r for r in pool if r is not active[0]]
        pool = [r for r in pool if any(r)]
    return tuple(basis)


def lattice_coordinates(basis: Rows, v: Sequence[Scalar]) -> QVec | None:
    """Coordinates of ``v`` in terms of independent ``basis`` rows, or None if outside their span"""
    if not basis:
        return () if not any(v) else None
    return solve_rational(transpose(basis), list(v))


def in_lattice(basis: Rows, v: Sequence[Scalar]) -> bool:
    """Whether ``v`` is an integer combination of independent ``basis`` rows"""
    coords = lattice_coordinates(basis, v)
    return coords is not None and all(c.denominator == 1 for c in coords)


def same_lattice(a: Rows, b: Rows) -> bool:
    """Whether two sets of independent rows span the same lattice"""
    return len(a) == len(b) and all(in_lattice(a, row) for row in b) and all(in_lattice(b, row) for row in a)
