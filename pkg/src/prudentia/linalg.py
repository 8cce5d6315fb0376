"""Exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]


def vec(values) -> Vector:
    from .core import to_fraction

    return tuple(to_fraction(v) for v in values)


def dot(u: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, w)), Fraction(0))


def add(u: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, w))


def sub(u: Sequence[Fraction], w: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, w))


def scale(q, u: Sequence[Fraction]) -> Vector:
    return tuple(q * a for a in u)


def is_zero(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)


def sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and the pivot columns."""
    mat = [[Fraction(a) for a in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_in_span(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Vector | None:
    """Coefficients c with sum c_i basis_i = target, or None.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(target)
    aug = [[basis[i][r] for i in range(k)] + [target[r]] for r in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    coeffs = [Fraction(0)] * k
    for row, p in zip(red, pivots):
        coeffs[p] = row[k]
    return tuple(coeffs)


def collinear(u: Sequence[Fraction], w: Sequence[Fraction]) -> bool:
    """True when u and w are linearly dependent (a zero vector counts as collinear)."""
    return rank([u, w]) < 2


def primitive_direction(u: Sequence[Fraction]) -> Vector:
    """Scale u so its first nonzero entry is +1."""
    for a in u:
        if a != 0:
            return tuple(b / a for b in u)
    raise ValueError("zero vector has no direction")


def in_span(basis: Sequence[Sequence[Fraction]], u: Sequence[Fraction]) -> bool:
    return rank(list(basis) + [list(u)]) == rank(basis)
