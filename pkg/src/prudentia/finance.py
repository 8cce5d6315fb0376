"""Zero-coupon bond prices and implied yields from a pairwise representation over dates.

Orderings are decided on the exact rational side; ``math.exp`` is only
used for the displayed prices and yields.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import Database, Ranking, to_fraction
from .engine import PairwiseMatrix, as_vector
from .errors import EmptyDatabase, NotTwoDiverse, UnknownLabel
from .linalg import dot


def date_label(d: Fraction) -> str:
    return str(d)


class YieldCurveModel:
    """Trading dates (containing the spot date 0) and a pairwise matrix indexed by them.

    The Jacobi identity is deliberately not enforced here so that
    :func:`check_no_arbitrage` can diagnose models that violate it.
    """

    def __init__(self, dates: Sequence[object], vp: PairwiseMatrix):
        ds = sorted({to_fraction(d) for d in dates})
        if Fraction(0) not in ds:
            raise ValueError("the spot date 0 must be a trading date")
        if any(d < 0 for d in ds):
            raise ValueError("dates must be nonnegative")
        labels = {date_label(d) for d in ds}
        if labels != set(vp.eventualities):
            raise UnknownLabel(f"pairwise matrix is indexed by {list(vp.eventualities)}, not by the dates")
        if not vp.has_all_rows():
            raise ValueError("every pair of dates needs a row")
        self.dates: tuple[Fraction, ...] = tuple(ds)
        self.vp = vp

    @property
    def case_types(self) -> tuple[str, ...]:
        return self.vp.case_types

    def v(self, x, y) -> tuple[Fraction, ...]:
        return self.vp.row(date_label(to_fraction(x)), date_label(to_fraction(y)))

    @classmethod
    def from_rows(
        cls,
        dates: Sequence[object],
        case_types: Sequence[str],
        rows: Mapping[tuple[object, object], Sequence[object]],
    ) -> "YieldCurveModel":
        labelled = {(date_label(to_fraction(x)), date_label(to_fraction(y))): r for (x, y), r in rows.items()}
        ds = [to_fraction(d) for d in dates]
        return cls(ds, PairwiseMatrix([date_label(d) for d in ds], case_types, labelled))

    @classmethod
    def from_spot_log_accumulations(
        cls,
        case_types: Sequence[str],
        spot: Mapping[object, Sequence[object]],
    ) -> "YieldCurveModel":
        """Build from exact v^(x,0) rows; v^(x,y) = v^(x,0) - v^(y,0) makes the model arbitrage-free."""
        spot = {to_fraction(x): [to_fraction(a) for a in r] for x, r in spot.items()}
        spot.setdefault(Fraction(0), [Fraction(0)] * len(case_types))
        if any(spot[Fraction(0)]):
            raise ValueError("v^(0,0) must be zero")
        ds = sorted(spot)
        rows = {
            (x, y): [a - b for a, b in zip(spot[x], spot[y])]
            for x, y in itertools.combinations(ds, 2)
        }
        return cls.from_rows(ds, case_types, rows)

    @classmethod
    def from_spot_yields(
        cls,
        case_types: Sequence[str],
        yields: Mapping[object, Mapping[str, object]],
    ) -> "YieldCurveModel":
        """Per-case-type spot yields r^{0,x}_c; logarithms are stored as exact images of float64 values."""
        spot = {}
        for x, per_case in yields.items():
            xf = to_fraction(x)
            spot[xf] = [Fraction(float(xf) * math.log1p(float(to_fraction(per_case[c])))) for c in case_types]
        return cls.from_spot_log_accumulations(case_types, spot)

    def rescaled(self, lam) -> "YieldCurveModel":
        lam = to_fraction(lam)
        rows = {p: [lam * a for a in r] for p, r in self.vp.rows.items() if p[0] != p[1]}
        return YieldCurveModel(self.dates, PairwiseMatrix(self.vp.eventualities, self.vp.case_types, rows))


def implied_yield(model: YieldCurveModel, x, y, c: str) -> float:
    """exp(v^(y,x)_c / (y - x)) - 1, symmetric in x and y, zero when x = y."""
    x, y = to_fraction(x), to_fraction(y)
    if x == y:
        return 0.0
    try:
        col = model.case_types.index(c)
    except ValueError:
        raise UnknownLabel(f"unknown case type {c!r}") from None
    return math.expm1(float(model.v(y, x)[col] / (y - x)))


def _log_price_numerator(model: YieldCurveModel, x, D: Database) -> Fraction:
    # -|D| * log B(x, D), exactly
    return dot(model.v(x, 0), as_vector(D, model.case_types))


def bond_price(model: YieldCurveModel, x, D: Database) -> float:
    mass = D.total()
    if mass == 0:
        raise EmptyDatabase("bond price needs a nonempty database")
    return math.exp(-float(_log_price_numerator(model, x, D) / mass))


def ranking_by_price(model: YieldCurveModel, D: Database) -> Ranking:
    """x ≼ y iff B(x, D) <= B(y, D), decided on exact log-price numerators."""
    if D.total() == 0:
        raise EmptyDatabase("ranking by price needs a nonempty database")
    scores = {date_label(x): -_log_price_numerator(model, x, D) for x in model.dates}
    return Ranking.from_scores(scores)


@dataclass(frozen=True)
class ArbitrageFinding:
    triple: tuple[Fraction, Fraction, Fraction]
    case_type: str
    direction: str
    trade: tuple[str, str, str]
    residual: Fraction
    magnitude: float


def check_no_arbitrage(model: YieldCurveModel) -> list[ArbitrageFinding]:
    """One finding per dates x < z < y and case type where v^(x,y) != v^(x,z) + v^(z,y)."""
    out = []
    for x, z, y in itertools.combinations(model.dates, 3):
        r = [a - b - c for a, b, c in zip(model.v(x, y), model.v(x, z), model.v(z, y))]
        for col, res in enumerate(r):
            if res == 0:
                continue
            fx, fz, fy = (date_label(d) for d in (x, z, y))
            if res > 0:
                # log a^(x,y) < log a^(x,z) + log a^(z,y): the forward is cheap to sell
                direction = "log a(x,y) < log a(x,z) + log a(z,y)"
                trade = (f"sell forward ({fx},{fy})", f"buy spot ({fx},{fz})", f"sell spot ({fz},{fy})")
            else:
                direction = "log a(x,y) > log a(x,z) + log a(z,y)"
                trade = (f"buy forward ({fx},{fy})", f"sell spot ({fx},{fz})", f"buy spot ({fz},{fy})")
            out.append(ArbitrageFinding((x, z, y), model.case_types[col], direction, trade, res, float(res)))
    return out


@dataclass(frozen=True)
class NegativeYieldReport:
    pair: tuple[Fraction, Fraction]
    negative: tuple[str, ...]
    positive: tuple[str, ...]
    conditional: dict


def _grid(n: int, max_entry: int) -> list[tuple[int, ...]]:
    return [v for v in itertools.product(range(max_entry + 1), repeat=n) if any(v)]


def detect_negative_yields(model: YieldCurveModel, max_entry: int = 3) -> list[NegativeYieldReport]:
    """Case types with negative and positive implied yields for each pair of dates.

    The conditional part searches a grid of databases: for each third date
    z and each side of the comparison between x and z, it looks for
    databases C and D on that side whose database-level yields between x
    and y have opposite signs.
    """
    for x, y in itertools.combinations(model.dates, 2):
        row = model.v(y, x)
        if not (any(a > 0 for a in row) and any(a < 0 for a in row)):
            raise NotTwoDiverse(f"row for dates ({x}, {y}) does not mix signs")
    grid = _grid(len(model.case_types), max_entry)
    out = []
    for x, y in itertools.combinations(model.dates, 2):
        row = model.v(y, x)
        neg = tuple(c for c, a in zip(model.case_types, row) if a < 0)
        pos = tuple(c for c, a in zip(model.case_types, row) if a > 0)
        cond: dict = {}
        for z in model.dates:
            if z in (x, y):
                continue
            side_row = model.v(x, z)
            for side, sgn in (("x<z", 1), ("z<x", -1)):
                C = D = None
                for J in grid:
                    if sgn * dot(side_row, J) <= 0:
                        continue
                    s = dot(row, J)
                    if s > 0 and C is None:
                        C = J
                    elif s < 0 and D is None:
                        D = J
                    if C is not None and D is not None:
                        break
                to_db = lambda J: None if J is None else Database.from_dense(model.case_types, J)  # noqa: E731
                cond[(date_label(z), side)] = {"C": to_db(C), "D": to_db(D)}
        out.append(NegativeYieldReport((x, y), neg, pos, cond))
    return out
