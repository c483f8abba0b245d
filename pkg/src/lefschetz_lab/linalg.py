"""Exact rational matrix helpers.

Matrices are plain lists of rows of :class:`fractions.Fraction`.  Row
reduction is delegated to sympy's ``DomainMatrix`` over ``QQ``; everything
that leaves this module is converted back to ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def _to_qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _domain(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [[_to_qq(Fraction(x)) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def ncols_of(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    if ncols is not None:
        return ncols
    return len(rows[0]) if rows else 0


def zeros(nrows: int, ncols: int) -> Matrix:
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> Matrix:
    ncols = ncols_of(rows, ncols)
    return [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]],
           inner: int | None = None, ncols: int | None = None) -> Matrix:
    """Product ``a @ b``; ``inner``/``ncols`` are needed when a shape is empty."""
    inner = ncols_of(a, inner)
    ncols = ncols_of(b, ncols)
    out = zeros(len(a), ncols)
    for i, row in enumerate(a):
        acc = out[i]
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] += x * bk[j]
    return out


def matvec(a: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (leftmost-first)."""
    ncols = ncols_of(rows, ncols)
    if not rows or ncols == 0:
        return [list(r) for r in rows], ()
    reduced, pivots = _domain(rows, ncols).rref()
    out = [[_from_qq(x) for x in row] for row in reduced.to_list()]
    return out, tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    ncols = ncols_of(rows, ncols)
    if not rows or ncols == 0:
        return 0
    return _domain(rows, ncols).rank()


def nullspace_with_free(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[Vector], list[int]]:
    """Kernel basis of ``rows`` together with its free columns.

    Vector ``k`` is 1 in free column ``k`` and 0 in every other free column,
    so the coordinates of a kernel element are its entries at the free
    columns.
    """
    if not rows:
        basis = [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
        return basis, list(range(ncols))
    reduced, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row_index, pc in enumerate(pivots):
            v[pc] = -reduced[row_index][f]
        basis.append(v)
    return basis, free


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{x : rows @ x = 0}`` read off the reduced echelon form."""
    return nullspace_with_free(rows, ncols)[0]


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
          ncols: int | None = None) -> Vector | None:
    """One solution of ``rows @ x = rhs`` (free variables zero), or None."""
    ncols = ncols_of(rows, ncols)
    if len(rows) == 0:
        return [Fraction(0)] * ncols
    augmented = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row_index, pc in enumerate(pivots):
        x[pc] = reduced[row_index][ncols]
    return x


def is_zero(rows: Sequence[Sequence[Fraction]]) -> bool:
    return all(not x for row in rows for x in row)


def columns(vectors: Sequence[Sequence[Fraction]], length: int) -> Matrix:
    """Matrix whose columns are ``vectors`` (each of ``length`` entries)."""
    return [[v[i] for v in vectors] for i in range(length)]


@dataclass(frozen=True)
class DegreeOperator:
    """Exact matrix of a linear map between two graded pieces.

    ``matrix`` has one row per target basis element and one column per
    source basis element.
    """

    kind: str
    source_degree: int
    target_degree: int
    matrix: tuple[tuple[Fraction, ...], ...]
    source_dim: int
    target_dim: int

    @classmethod
    def from_columns(cls, kind: str, source_degree: int, target_degree: int,
                     cols: Sequence[Sequence[Fraction]], target_dim: int) -> "DegreeOperator":
        mat = columns(cols, target_dim)
        return cls(kind, source_degree, target_degree,
                   tuple(tuple(row) for row in mat), len(cols), target_dim)

    @property
    def shape(self) -> tuple[int, int]:
        return self.target_dim, self.source_dim

    def rows(self) -> Matrix:
        return [list(r) for r in self.matrix]

    @property
    def rank(self) -> int:
        return rank(self.rows(), self.source_dim)

    def is_invertible(self) -> bool:
        return self.source_dim == self.target_dim and self.rank == self.source_dim

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return matvec(self.matrix, v)

    def __matmul__(self, other: "DegreeOperator") -> "DegreeOperator":
        if other.target_degree != self.source_degree or other.target_dim != self.source_dim:
            raise ValueError("operators are not composable")
        prod = matmul(self.matrix, other.matrix, self.source_dim, other.source_dim)
        return DegreeOperator(f"{self.kind}*{other.kind}", other.source_degree,
                              self.target_degree, tuple(tuple(r) for r in prod),
                              other.source_dim, self.target_dim)

    def __add__(self, other: "DegreeOperator") -> "DegreeOperator":
        if self.shape != other.shape or self.source_degree != other.source_degree:
            raise ValueError("operators have different shapes")
        mat = tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.matrix, other.matrix))
        return DegreeOperator(f"{self.kind}+{other.kind}", self.source_degree,
                              self.target_degree, mat, self.source_dim, self.target_dim)

    def __neg__(self) -> "DegreeOperator":
        return self.scaled(Fraction(-1))

    def __sub__(self, other: "DegreeOperator") -> "DegreeOperator":
        return self + (-other)

    def scaled(self, c) -> "DegreeOperator":
        c = Fraction(c)
        mat = tuple(tuple(c * x for x in r) for r in self.matrix)
        return DegreeOperator(self.kind, self.source_degree, self.target_degree,
                              mat, self.source_dim, self.target_dim)

    def is_zero(self) -> bool:
        return is_zero(self.matrix)
