"""Rankings induced by similarity and pairwise matrices."""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Database, Ranking, canonical_labels, to_fraction
from .errors import UnknownLabel
from .linalg import Vector, dot, is_zero, sign, sub


class Order(str, enum.Enum):
    PREC = "x≺y"
    TIE = "x≃y"
    SUCC = "y≺x"


def as_vector(J, case_types: Sequence[str]) -> Vector:
    """Dense view of a database (or an already dense sequence) in column order."""
    if isinstance(J, Database):
        return J.dense(case_types)
    vals = tuple(to_fraction(a) for a in J)
    if len(vals) != len(case_types):
        raise ValueError(f"expected {len(case_types)} entries, got {len(vals)}")
    return vals


class SimilarityMatrix:
    """Rows ``v(x, .)`` over case types; x ≼_J y iff <v(x),J> <= <v(y),J>."""

    def __init__(
        self,
        eventualities: Iterable[str],
        case_types: Iterable[str],
        v: Sequence[Sequence[object]] | Mapping[str, Sequence[object]],
    ):
        given_x = list(eventualities)
        given_t = list(case_types)
        self.eventualities = canonical_labels(given_x)
        self.case_types = canonical_labels(given_t)
        if isinstance(v, Mapping):
            raw = {x: v[x] for x in given_x}
        else:
            if len(v) != len(given_x):
                raise ValueError("one row per eventuality is required")
            raw = dict(zip(given_x, v))
        col = [given_t.index(t) for t in self.case_types]
        rows = {}
        for x in self.eventualities:
            r = list(raw[x])
            if len(r) != len(given_t):
                raise ValueError(f"row {x!r} has {len(r)} entries, expected {len(given_t)}")
            rows[x] = tuple(to_fraction(r[j]) for j in col)
        self.rows: dict[str, Vector] = rows

    @property
    def m(self) -> int:
        return len(self.eventualities)

    @property
    def n(self) -> int:
        return len(self.case_types)

    def row(self, x: str) -> Vector:
        try:
            return self.rows[x]
        except KeyError:
            raise UnknownLabel(f"unknown eventuality {x!r}") from None

    def score(self, x: str, J) -> Fraction:
        return dot(self.row(x), as_vector(J, self.case_types))

    def matrix(self) -> list[Vector]:
        return [self.rows[x] for x in self.eventualities]

    def scaled(self, lam, beta: Sequence[object] | None = None) -> "SimilarityMatrix":
        lam = to_fraction(lam)
        beta = [to_fraction(b) for b in beta] if beta is not None else [Fraction(0)] * self.n
        return SimilarityMatrix(
            self.eventualities,
            self.case_types,
            [[lam * a + b for a, b in zip(self.rows[x], beta)] for x in self.eventualities],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimilarityMatrix):
            return NotImplemented
        return (self.eventualities, self.case_types, self.rows) == (
            other.eventualities,
            other.case_types,
            other.rows,
        )

    def __repr__(self) -> str:
        return f"SimilarityMatrix(m={self.m}, n={self.n})"


class PairwiseMatrix:
    """Skew-symmetric rows ``v^(x,y)`` over case types; x ≼_J y iff <v^(x,y),J> >= 0.

    Only one orientation of each pair needs to be given. Diagonal rows are
    zero. The free case, if present, is an ordinary trailing column here.
    """

    def __init__(
        self,
        eventualities: Iterable[str],
        case_types: Iterable[str],
        rows: Mapping[tuple[str, str], Sequence[object]],
        free_case: str | None = None,
    ):
        self.eventualities = canonical_labels(eventualities)
        given_t = list(case_types)
        self.free_case = free_case
        self.case_types = canonical_labels(given_t, free_case or "__free__")
        col = [given_t.index(t) for t in self.case_types]
        n = len(given_t)
        members = set(self.eventualities)
        store: dict[tuple[str, str], Vector] = {}
        for (x, y), raw in rows.items():
            if x not in members or y not in members:
                raise UnknownLabel(f"pair ({x}, {y}) uses an unknown eventuality")
            raw = list(raw)
            if len(raw) != n:
                raise ValueError(f"row ({x}, {y}) has {len(raw)} entries, expected {n}")
            r = tuple(to_fraction(raw[j]) for j in col)
            if x == y:
                if not is_zero(r):
                    raise ValueError(f"diagonal row ({x}, {x}) must be zero")
                continue
            neg = tuple(-a for a in r)
            for key, val in (((x, y), r), ((y, x), neg)):
                if key in store and store[key] != val:
                    raise ValueError(f"rows ({x}, {y}) and ({y}, {x}) are not skew-symmetric")
                store[key] = val
        zero = tuple(Fraction(0) for _ in range(n))
        for x in self.eventualities:
            store[(x, x)] = zero
        self.rows: dict[tuple[str, str], Vector] = store

    @property
    def m(self) -> int:
        return len(self.eventualities)

    @property
    def n(self) -> int:
        return len(self.case_types)

    def row(self, x: str, y: str) -> Vector:
        try:
            return self.rows[(x, y)]
        except KeyError:
            raise UnknownLabel(f"no row for pair ({x}, {y})") from None

    def has_all_rows(self) -> bool:
        return all((x, y) in self.rows for x in self.eventualities for y in self.eventualities)

    def upper_pairs(self, subset: Sequence[str] | None = None) -> list[tuple[str, str]]:
        """Pairs (x, y) with x before y in canonical order."""
        xs = self.eventualities if subset is None else [x for x in self.eventualities if x in set(subset)]
        return [(x, y) for i, x in enumerate(xs) for y in xs[i + 1:]]

    def with_rows(self, rows: Mapping[tuple[str, str], Sequence[object]]) -> "PairwiseMatrix":
        """Copy with the given rows (and their skew partners) replaced."""
        out = {p: r for p, r in self.rows.items() if p[0] < p[1] or p[0] == p[1]}
        for (x, y), r in rows.items():
            out.pop((y, x), None)
            out[(x, y)] = r
        return PairwiseMatrix(self.eventualities, self.case_types, out, self.free_case)

    def restrict(self, subset: Iterable[str]) -> "PairwiseMatrix":
        keep = set(subset)
        rows = {p: r for p, r in self.rows.items() if p[0] in keep and p[1] in keep}
        return PairwiseMatrix(sorted(keep), self.case_types, rows, self.free_case)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairwiseMatrix):
            return NotImplemented
        return (self.eventualities, self.case_types, self.rows) == (
            other.eventualities,
            other.case_types,
            other.rows,
        )

    def __repr__(self) -> str:
        return f"PairwiseMatrix(m={self.m}, n={self.n})"


def rank_pair(v: SimilarityMatrix, x: str, y: str, J) -> Order:
    J = as_vector(J, v.case_types)
    a, b = dot(v.row(x), J), dot(v.row(y), J)
    if a < b:
        return Order.PREC
    if a > b:
        return Order.SUCC
    return Order.TIE


def rank_all(v: SimilarityMatrix, J) -> Ranking:
    J = as_vector(J, v.case_types)
    return Ranking.from_scores({x: dot(v.rows[x], J) for x in v.eventualities})


def pairwise_from_global(v: SimilarityMatrix) -> PairwiseMatrix:
    rows = {(x, y): sub(v.rows[y], v.rows[x]) for x in v.eventualities for y in v.eventualities}
    return PairwiseMatrix(v.eventualities, v.case_types, rows)


def eval_pairwise(vp: PairwiseMatrix, x: str, y: str, J) -> int:
    """Sign of <v^(x,y), J>; nonnegative exactly when x ≼_J y."""
    return sign(dot(vp.row(x, y), as_vector(J, vp.case_types)))


def rank_all_pairwise(vp: PairwiseMatrix, J) -> Ranking:
    J = as_vector(J, vp.case_types)
    xs = vp.eventualities
    return Ranking(xs, ((x, y) for x in xs for y in xs if dot(vp.row(x, y), J) >= 0))
