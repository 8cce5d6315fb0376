"""Exact two-phase simplex over Fractions (Bland's rule, so no cycling).

Only what the rest of the package needs: a general ``maximize`` and a
strict-feasibility test for homogeneous systems of sign conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Vector, dot, nullspace


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Vector | None
    value: Fraction | None
    pivots: int
    work: int = 0  # tableau entries updated, a machine-independent cost measure


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.pivots = 0
        self.work = 0

    def pivot(self, r: int, c: int, obj: list[Fraction]) -> None:
        rows = self.rows
        inv = 1 / rows[r][c]
        rows[r] = [a * inv for a in rows[r]]
        pr = rows[r]
        for i, row in enumerate(rows):
            if i != r and row[c] != 0:
                f = row[c]
                rows[i] = [a - f * b for a, b in zip(row, pr)]
        if obj[c] != 0:
            f = obj[c]
            obj[:] = [a - f * b for a, b in zip(obj, pr)]
        self.basis[r] = c
        self.pivots += 1
        self.work += len(rows) * len(pr)

    def reduced(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # obj[j] = c_j - c_B B^-1 A_j ; obj[-1] = -z
        obj = list(cost) + [Fraction(0)]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb != 0:
                obj = [a - cb * t for a, t in zip(obj, self.rows[i])]
        return obj

    def run(self, obj: list[Fraction], allowed: int) -> str:
        while True:
            enter = next((j for j in range(allowed) if obj[j] > 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter, obj)


def maximize(
    c: Sequence[Fraction],
    A_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    A_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq.

    Variables are nonnegative except those listed in ``free``.
    """
    nvar = len(c)
    free_set = set(free)
    # column map: each original variable -> list of (column, sign)
    cols: list[list[tuple[int, int]]] = []
    ncol = 0
    for j in range(nvar):
        if j in free_set:
            cols.append([(ncol, 1), (ncol + 1, -1)])
            ncol += 2
        else:
            cols.append([(ncol, 1)])
            ncol += 1
    n_struct = ncol
    n_slack = len(A_ub)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int | None] = []

    def expand(a: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * n_struct
        for j, coef in enumerate(a):
            if coef:
                for col, s in cols[j]:
                    out[col] = Fraction(coef) * s
        return out

    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = expand(a) + [Fraction(0)] * n_slack
        row[n_struct + i] = Fraction(1)
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
            basis.append(None)
        else:
            basis.append(n_struct + i)
        rows.append(row)
        rhs.append(b)
    for a, b in zip(A_eq, b_eq):
        row = expand(a) + [Fraction(0)] * n_slack
        b = Fraction(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        basis.append(None)

    n_real = n_struct + n_slack
    need = [i for i, b in enumerate(basis) if b is None]
    n_art = len(need)
    for row in rows:
        row.extend([Fraction(0)] * n_art)
    for k, i in enumerate(need):
        rows[i][n_real + k] = Fraction(1)
        basis[i] = n_real + k
    for row, b in zip(rows, rhs):
        row.append(b)
    tab = _Tableau(rows, list(basis))  # type: ignore[arg-type]
    total = n_real + n_art

    if n_art:
        cost1 = [Fraction(0)] * n_real + [Fraction(-1)] * n_art
        obj = tab.reduced(cost1)
        tab.run(obj, total)
        if -obj[-1] < 0:
            return LPResult("infeasible", None, None, tab.pivots, tab.work)
        # drive zero-valued artificials out of the basis
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n_real:
                col = next((j for j in range(n_real) if tab.rows[i][j] != 0), None)
                if col is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col, [Fraction(0)] * (total + 1))
            i += 1
        tab.rows = [r[:n_real] + [r[-1]] for r in tab.rows]

    cost2 = [Fraction(0)] * n_real
    for j in range(nvar):
        for col, s in cols[j]:
            cost2[col] = Fraction(c[j]) * s
    obj = tab.reduced(cost2)
    status = tab.run(obj, n_real)
    if status == "unbounded":
        return LPResult("unbounded", None, None, tab.pivots, tab.work)
    values = [Fraction(0)] * n_real
    for i, b in enumerate(tab.basis):
        values[b] = tab.rows[i][-1]
    x = tuple(sum((values[col] * s for col, s in cols[j]), Fraction(0)) for j in range(nvar))
    return LPResult("optimal", x, -obj[-1], tab.pivots, tab.work)


def feasible(
    A_ub: Sequence[Sequence[Fraction]] = (),
    b_ub: Sequence[Fraction] = (),
    A_eq: Sequence[Sequence[Fraction]] = (),
    b_eq: Sequence[Fraction] = (),
    nvar: int | None = None,
    free: Sequence[int] = (),
) -> LPResult:
    if nvar is None:
        nvar = len(A_ub[0]) if A_ub else len(A_eq[0])
    return maximize([Fraction(0)] * nvar, A_ub, b_ub, A_eq, b_eq, free)


def _integral(u: Sequence[Fraction]) -> Vector:
    den = 1
    for a in u:
        den = math.lcm(den, a.denominator)
    ints = [int(a * den) for a in u]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    g = g or 1
    return tuple(Fraction(a // g) for a in ints)


def strict_point(
    strict_rows: Sequence[Sequence[Fraction]],
    n: int,
    eq_rows: Sequence[Sequence[Fraction]] = (),
    positive: bool = False,
    weak_rows: Sequence[Sequence[Fraction]] = (),
) -> Vector | None:
    """A point J with a.J > 0 (strict rows), b.J = 0 (eq rows), c.J >= 0 (weak rows).

    With ``positive`` every coordinate of J must also be > 0. Returns a
    primitive integer witness, or None when no such point exists.

    J is parametrised over a basis of the equality solution space and a
    margin s is maximised subject to s <= 1; the system is strictly
    feasible exactly when the optimal margin is positive. The origin is
    always feasible for the margin problem, so phase one is never needed.
    """
    basis = nullspace([list(r) for r in eq_rows], n) if eq_rows else nullspace([], n)
    k = len(basis)
    strict = [list(r) for r in strict_rows]
    if positive:
        strict += [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if k == 0:
        return None if strict else tuple(Fraction(0) for _ in range(n))
    if not strict:
        return tuple(Fraction(0) for _ in range(n))
    proj = lambda a: [dot(a, b) for b in basis]  # noqa: E731
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for a in strict:
        A.append([-x for x in proj(a)] + [Fraction(1)])
        b.append(Fraction(0))
    for a in weak_rows:
        A.append([-x for x in proj(a)] + [Fraction(0)])
        b.append(Fraction(0))
    A.append([Fraction(0)] * k + [Fraction(1)])
    b.append(Fraction(1))
    res = maximize([Fraction(0)] * k + [Fraction(1)], A, b, free=range(k))
    if res.status != "optimal" or res.value <= 0:
        return None
    t = res.x[:k]
    J = [sum((t[j] * basis[j][i] for j in range(k)), Fraction(0)) for i in range(n)]
    return _integral(J)
