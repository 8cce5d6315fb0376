"""Fitting pairwise representations, the Jacobi prudence test, and matrix conditions."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .axioms import check_conditional_2_diversity
from .core import FREE_CASE, Database, RankingFamily, to_fraction
from .engine import PairwiseMatrix, SimilarityMatrix, as_vector, rank_all_pairwise
from .errors import (
    Degenerate,
    Infeasible,
    JacobiViolated,
    NotConditionally2Diverse,
    NotTotal,
    Underdetermined,
)
from .linalg import Vector, add, collinear, dot, nullspace, scale, solve_in_span, sub
from .lp import feasible, strict_point


@dataclass(frozen=True)
class LabeledObservation:
    """``sign`` is +1 for x ≺ y, 0 for x ≃ y and -1 for y ≺ x at ``database``."""

    database: Database
    pair: tuple[str, str]
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")


def _normalize(v: Sequence[Fraction]) -> Vector:
    first = next(a for a in v if a != 0)
    return tuple(a / abs(first) for a in v)


def fit_separating_hyperplane(
    obs: Sequence[LabeledObservation],
    case_types: Sequence[str] | None = None,
) -> Vector:
    """Normal v with sign <v, J> equal to every observed label.

    The valid normals form an open cone inside the subspace orthogonal to
    the tied databases; the answer is unique up to positive scale only when
    that subspace is a line. Otherwise :class:`Underdetermined` is raised
    with one valid normal and a basis of the subspace.
    """
    if case_types is None:
        case_types = sorted({c for o in obs for c in o.database})
    case_types = list(case_types)
    n = len(case_types)
    seen: dict[Database, int] = {}
    for o in obs:
        if seen.setdefault(o.database, o.sign) != o.sign:
            raise Infeasible(f"database {o.database!r} carries two different labels")
    signs = {o.sign for o in obs}
    if 1 not in signs or -1 not in signs:
        raise ValueError("need at least one strict observation on each side")
    zero_rows = [list(J.dense(case_types)) for J, s in seen.items() if s == 0]
    strict_rows = [[s * a for a in J.dense(case_types)] for J, s in seen.items() if s != 0]
    w = strict_point(strict_rows, n, eq_rows=zero_rows)
    if w is None:
        raise Infeasible("no linear functional reproduces the labels")
    basis = nullspace(zero_rows, n)
    if len(basis) != 1:
        raise Underdetermined(
            f"valid normals span {len(basis)} dimensions; densify the grid",
            witness=_normalize(w),
            basis=basis,
        )
    b = basis[0]
    # w is a nonzero multiple of b; keep the orientation that satisfies the labels
    sgn = 1 if dot(w, b) > 0 else -1
    return _normalize(scale(sgn, b))


def default_grid(case_types: Sequence[str], max_entry: int = 3) -> list[Database]:
    return [
        Database.from_dense(case_types, vals)
        for vals in itertools.product(range(max_entry + 1), repeat=len(case_types))
        if any(vals)
    ]


def observe(family: RankingFamily, x: str, y: str, J: Database) -> LabeledObservation:
    R = family(J)
    if R.strict(x, y):
        s = 1
    elif R.strict(y, x):
        s = -1
    elif R.indifferent(x, y):
        s = 0
    else:
        raise Infeasible(f"{x} and {y} are unranked at {J!r}")
    return LabeledObservation(J, (x, y), s)


def build_pairwise_representation(
    family: RankingFamily,
    X: Sequence[str] | None = None,
    grid: Sequence[Database] | None = None,
) -> PairwiseMatrix:
    X = list(family.eventualities if X is None else X)
    case_types = list(family.case_types)
    grid = default_grid(case_types) if grid is None else list(grid)
    rows: dict[tuple[str, str], Vector] = {}
    for i, x in enumerate(sorted(X)):
        for y in sorted(X)[i + 1:]:
            obs = [observe(family, x, y, J) for J in grid]
            try:
                rows[(x, y)] = fit_separating_hyperplane(obs, case_types)
            except (Infeasible, Underdetermined, ValueError) as exc:
                exc.pair = (x, y)
                exc.args = (f"pair ({x}, {y}): {exc.args[0] if exc.args else exc}",) + exc.args[1:]
                raise
    return PairwiseMatrix(X, case_types, rows)


@dataclass(frozen=True)
class PrudenceVerdict:
    prudent: bool
    scalars: dict[tuple[str, str], Fraction] = field(default_factory=dict)
    witness: dict | None = None
    scaled: PairwiseMatrix | None = None


def _primitive_positive(values: Mapping[tuple[str, str], Fraction]) -> dict[tuple[str, str], Fraction]:
    den = 1
    for v in values.values():
        den = math.lcm(den, v.denominator)
    ints = {k: v * den for k, v in values.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, int(v))
    g = g or 1
    return {k: v / g for k, v in ints.items()}


def _triple_coefficients(vp: PairwiseMatrix, x: str, y: str, z: str) -> tuple[Fraction, Fraction] | None:
    """(a, b) with v^(x,z) = a v^(x,y) + b v^(y,z), or None if outside the span."""
    return solve_in_span([vp.row(x, y), vp.row(y, z)], vp.row(x, z))


def solve_jacobi_scaling(vp: PairwiseMatrix) -> PrudenceVerdict:
    """Search positive scalars making the rescaled rows satisfy the Jacobi identity.

    For each triple x < y < z the equation
    ``lam_xz v^(x,z) = lam_xy v^(x,y) + lam_yz v^(y,z)`` fixes two of the
    scalars in terms of the third. Scalars are propagated from the first
    pair across triples, every triple is then re-verified, and the result
    is rescaled to the smallest positive integer vector.
    """
    c2d = check_conditional_2_diversity(vp)
    if not c2d.ok:
        raise NotConditionally2Diverse("conditional 2-diversity fails", witness=c2d.witness)
    pairs = vp.upper_pairs()
    if not pairs:
        return PrudenceVerdict(True, {}, scaled=vp)
    triples = list(itertools.combinations(vp.eventualities, 3))
    coeffs: dict[tuple[str, str, str], tuple[Fraction, Fraction]] = {}
    for t in triples:
        ab = _triple_coefficients(vp, *t)
        if ab is None:
            return PrudenceVerdict(False, witness={"triple": t, "reason": "v^(x,z) outside span of v^(x,y), v^(y,z)"})
        a, b = ab
        if a <= 0 or b <= 0:
            return PrudenceVerdict(
                False, witness={"triple": t, "reason": "non-positive scalar", "coefficients": (a, b)}
            )
        coeffs[t] = ab

    lam: dict[tuple[str, str], Fraction] = {pairs[0]: Fraction(1)}
    queue = deque([pairs[0]])
    by_pair: dict[tuple[str, str], list[tuple[str, str, str]]] = {p: [] for p in pairs}
    for t in triples:
        x, y, z = t
        for p in ((x, y), (y, z), (x, z)):
            by_pair[p].append(t)
    while queue:
        p = queue.popleft()
        for t in by_pair[p]:
            x, y, z = t
            a, b = coeffs[t]
            # lam_xy = a * lam_xz and lam_yz = b * lam_xz
            if (x, z) in lam:
                base = lam[(x, z)]
            elif (x, y) in lam:
                base = lam[(x, y)] / a
            else:
                base = lam[(y, z)] / b
            for q, val in (((x, z), base), ((x, y), a * base), ((y, z), b * base)):
                if q not in lam:
                    lam[q] = val
                    queue.append(q)
    for t in triples:
        x, y, z = t
        lhs = scale(lam[(x, z)], vp.row(x, z))
        rhs = add(scale(lam[(x, y)], vp.row(x, y)), scale(lam[(y, z)], vp.row(y, z)))
        if lhs != rhs:
            return PrudenceVerdict(
                False,
                witness={"triple": t, "reason": "scalars inconsistent across triples", "residual": sub(lhs, rhs)},
            )
    lam = _primitive_positive(lam)
    scaled = PairwiseMatrix(
        vp.eventualities,
        vp.case_types,
        {p: scale(lam[p], vp.row(*p)) for p in pairs},
        vp.free_case,
    )
    return PrudenceVerdict(True, lam, scaled=scaled)


def test_prudence(vp: PairwiseMatrix) -> PrudenceVerdict:
    """Decide prudence as solvability of the Jacobi scaling problem."""
    return solve_jacobi_scaling(vp)


test_prudence.__test__ = False  # not a pytest test despite the name


def jacobi_residual(vp: PairwiseMatrix, x: str, y: str, z: str) -> Vector:
    """v^(x,z) - v^(x,y) - v^(y,z)."""
    return sub(vp.row(x, z), add(vp.row(x, y), vp.row(y, z)))


def assemble_global_matrix(vp: PairwiseMatrix, base: str | None = None) -> SimilarityMatrix:
    xs = vp.eventualities
    base = xs[0] if base is None else base
    if base not in xs:
        from .errors import UnknownLabel

        raise UnknownLabel(f"unknown eventuality {base!r}")
    for x, y, z in itertools.permutations(xs, 3):
        r = jacobi_residual(vp, x, y, z)
        if any(r):
            raise JacobiViolated(f"Jacobi identity fails on ({x}, {y}, {z})", triple=(x, y, z), residual=r)
    return SimilarityMatrix(xs, vp.case_types, {x: vp.row(base, x) for x in xs})


@dataclass(frozen=True)
class RowsReport:
    passes: bool
    clause: str
    witness: tuple | None = None
    scans: int = 0
    determinant_tests: int = 0
    lp_count: int = 0
    pivots: int = 0
    steps: int = 0


def check_rows_main(v: SimilarityMatrix) -> RowsReport:
    """No row dominated by another, and no three rows affinely collinear."""
    xs = v.eventualities
    n = v.n
    scans = steps = 0
    for x, y in itertools.permutations(xs, 2):
        scans += 1
        rx, ry = v.rows[x], v.rows[y]
        dominated = True
        for a, b in zip(rx, ry):
            steps += 1
            if a > b:
                dominated = False
                break
        if dominated:
            return RowsReport(False, "dominance", (x, y), scans, 0, steps=steps)
    tests = 0
    for x, y, z in itertools.combinations(xs, 3):
        tests += 1
        steps += n
        if collinear(sub(v.rows[x], v.rows[z]), sub(v.rows[y], v.rows[z])):
            return RowsReport(False, "affine", (x, y, z), scans, tests, steps=steps)
    return RowsReport(True, "main", None, scans, tests, steps=steps)


def _affinely_dominated(target: Vector, others: Sequence[Vector]) -> tuple[bool, int, int]:
    """Is target <= sum w_i others_i for some real weights summing to one?"""
    k = len(others)
    n = len(target)
    # variables: free weights w_1..w_k; constraints target_t - sum w_i o_i[t] <= 0
    A_ub = [[-o[t] for o in others] for t in range(n)]
    b_ub = [-target[t] for t in range(n)]
    res = feasible(A_ub, b_ub, [[Fraction(1)] * k], [Fraction(1)], nvar=k, free=range(k))
    return res.status == "optimal", res.pivots, res.work


def check_rows_gsii(v: SimilarityMatrix) -> RowsReport:
    """Affine-dominance conditions, one exact LP per (4-subset, dominated row)."""
    xs = v.eventualities
    lps = pivots = steps = 0
    if len(xs) < 4:
        if len(xs) < 2:
            return RowsReport(True, "small-cardinality")
        for x in xs:
            others = [v.rows[y] for y in xs if y != x]
            dom, p, w = _affinely_dominated(v.rows[x], others)
            lps, pivots, steps = lps + 1, pivots + p, steps + w
            if dom:
                return RowsReport(False, "small-cardinality", (x,), lp_count=lps, pivots=pivots, steps=steps)
        return RowsReport(True, "small-cardinality", lp_count=lps, pivots=pivots, steps=steps)
    for Y in itertools.combinations(xs, 4):
        for x in Y:
            others = [v.rows[y] for y in Y if y != x]
            dom, p, w = _affinely_dominated(v.rows[x], others)
            lps, pivots, steps = lps + 1, pivots + p, steps + w
            if dom:
                return RowsReport(False, "four-subset", (x,) + tuple(y for y in Y if y != x), lp_count=lps, pivots=pivots, steps=steps)
    return RowsReport(True, "four-subset", lp_count=lps, pivots=pivots, steps=steps)


def complexity_table(m: int, n: int) -> tuple[int, int]:
    """Naive operation counts for the two row conditions on an m x n matrix."""
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    main = math.comb(m, 3) * n if m >= 3 else math.comb(m, 2) * n
    return main, math.comb(m, 4) * n**3


def check_uniqueness_equivalence(u: SimilarityMatrix, v: SimilarityMatrix) -> tuple[Fraction, Vector] | None:
    """(lam, beta) with lam > 0 and u = lam v + beta (beta a constant column vector), or None."""
    if u.eventualities != v.eventualities or u.case_types != v.case_types:
        raise ValueError("matrices must share eventualities and case types")
    xs = v.eventualities
    lam = None
    for x, y in itertools.combinations(xs, 2):
        d = sub(v.rows[x], v.rows[y])
        t = next((i for i, a in enumerate(d) if a != 0), None)
        if t is not None:
            lam = (u.rows[x][t] - u.rows[y][t]) / d[t]
            break
    if lam is None:
        raise Degenerate("all rows of v coincide; any lam > 0 with beta = u(x) - lam v(x) works if u's rows coincide too")
    if lam <= 0:
        return None
    beta = sub(u.rows[xs[0]], scale(lam, v.rows[xs[0]]))
    for x in xs:
        if u.rows[x] != add(scale(lam, v.rows[x]), beta):
            return None
    return lam, beta


def make_testworthy_extension(
    vp: PairwiseMatrix,
    J,
    iota,
    free_case: str = FREE_CASE,
) -> PairwiseMatrix:
    """Append a free-case column making ((1 - iota) J, iota) lie on every hyperplane.

    The new column is ``-((1 - iota) / iota) <v^(x,y), J>``, so the free case
    alone ranks the eventualities in the reverse of the order at J. If J has
    zero entries it is first nudged into the open orthant without changing
    its ranking.
    """
    iota = to_fraction(iota)
    if not 0 < iota < 1:
        raise ValueError("iota must lie strictly between 0 and 1")
    if vp.free_case is not None:
        raise ValueError("matrix already carries a free-case column")
    Jv = list(as_vector(J, vp.case_types))
    R = rank_all_pairwise(vp, Jv)
    if not R.is_total():
        raise NotTotal("the ranking at J is not a strict total order")
    Jv = list(strictly_positive_representative(vp, Jv))
    factor = (1 - iota) / iota
    rows = {}
    for p in vp.upper_pairs():
        r = vp.row(*p)
        rows[p] = tuple(r) + (-factor * dot(r, Jv),)
    return PairwiseMatrix(vp.eventualities, tuple(vp.case_types) + (free_case,), rows, free_case=free_case)


def strictly_positive_representative(vp: PairwiseMatrix, J: Sequence[Fraction]) -> Vector:
    """J itself if strictly positive, else J + eps*1 with eps small enough to keep every strict sign."""
    J = [to_fraction(a) for a in J]
    if all(a > 0 for a in J):
        return tuple(J)
    margins = [abs(dot(vp.row(*p), J)) for p in vp.upper_pairs()]
    margins = [m for m in margins if m != 0]
    spread = max((sum(abs(a) for a in vp.row(*p)) for p in vp.upper_pairs()), default=Fraction(1))
    eps = Fraction(1) if not margins else min(margins) / (2 * spread)
    return tuple(a + eps for a in J)


def testworthy_center(J: Sequence[Fraction], iota) -> Vector:
    iota = to_fraction(iota)
    return tuple((1 - iota) * to_fraction(a) for a in J) + (iota,)


testworthy_center.__test__ = False
