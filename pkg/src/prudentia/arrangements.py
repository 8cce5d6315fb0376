"""Central hyperplane arrangements over rational vectors.

Two ambients are supported: the whole space and the open positive
orthant. Region counts are available three ways (Möbius sum over the
intersection poset, signed sum over central subarrangements, explicit
chamber enumeration) and agree exactly.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Ranking, car_list, to_fraction
from .engine import PairwiseMatrix
from .errors import Budget, DimensionBudget, NotFound, ZeroNormal
from .linalg import Vector, dot, is_zero, nullspace, primitive_direction, rank, rref
from .lp import strict_point

MAX_DIM = 8
MAX_HYPERPLANES = 12


class Ambient(str, enum.Enum):
    FULL = "full"
    POSITIVE = "positive"

    @classmethod
    def parse(cls, value) -> "Ambient":
        if isinstance(value, Ambient):
            return value
        value = str(value).lower()
        aliases = {"full": cls.FULL, "fullspace": cls.FULL, "positive": cls.POSITIVE, "positiveorthant": cls.POSITIVE}
        try:
            return aliases[value]
        except KeyError:
            raise ValueError(f"unknown ambient {value!r}; use 'full' or 'positive'") from None


@dataclass(frozen=True)
class Hyperplane:
    """{J : <normal, J> = 0}, with the normal scaled so its first nonzero entry is 1.

    Each label ``(x, y, o)`` records that ``v^(x,y)`` is a positive multiple
    of ``o * normal``.
    """

    normal: Vector
    labels: tuple[tuple[str, str, int], ...] = ()

    def side(self, J: Sequence[Fraction]) -> int:
        d = dot(self.normal, J)
        return (d > 0) - (d < 0)


@dataclass(frozen=True)
class Arrangement:
    hyperplanes: tuple[Hyperplane, ...]
    ambient: Ambient
    n: int
    eventualities: tuple[str, ...] = ()
    case_types: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @property
    def normals(self) -> list[Vector]:
        return [h.normal for h in self.hyperplanes]

    @classmethod
    def from_normals(
        cls,
        normals: Iterable[Sequence[object]],
        ambient="full",
        n: int | None = None,
    ) -> "Arrangement":
        """Arrangement of unlabeled hyperplanes; collinear normals are merged."""
        normals = [tuple(to_fraction(a) for a in v) for v in normals]
        if n is None:
            if not normals:
                raise ValueError("dimension required for an empty arrangement")
            n = len(normals[0])
        seen: dict[Vector, Hyperplane] = {}
        for v in normals:
            if is_zero(v):
                raise ZeroNormal("hyperplane normal is zero")
            d = primitive_direction(v)
            seen.setdefault(d, Hyperplane(d))
        return cls(tuple(seen.values()), Ambient.parse(ambient), n)


def build_arrangement(vp: PairwiseMatrix, Y: Sequence[str] | None = None, ambient="positive") -> Arrangement:
    """Hyperplanes H^{x,y} for distinct x, y in Y, one per collinearity class."""
    Y = list(vp.eventualities if Y is None else Y)
    for y in Y:
        if y not in vp.eventualities:
            from .errors import UnknownLabel

            raise UnknownLabel(f"unknown eventuality {y!r}")
    Y = [x for x in vp.eventualities if x in set(Y)]
    groups: dict[Vector, list[tuple[str, str, int]]] = {}
    for x, y in vp.upper_pairs(Y):
        row = vp.row(x, y)
        if is_zero(row):
            raise ZeroNormal(f"row ({x}, {y}) is zero")
        d = primitive_direction(row)
        first = next(a for a in row if a != 0)
        groups.setdefault(d, []).append((x, y, 1 if first > 0 else -1))
    hyps = tuple(Hyperplane(d, tuple(lbl)) for d, lbl in groups.items())
    if len(Y) == 4 and not 4 <= len(hyps) <= 6:
        warnings.warn(f"{len(hyps)} hyperplanes for four eventualities, expected 4 to 6", stacklevel=2)
    return Arrangement(hyps, Ambient.parse(ambient), vp.n, tuple(Y), vp.case_types)


# --- intersection poset -------------------------------------------------


@dataclass(frozen=True)
class Flat:
    """An intersection of hyperplanes, identified by the set it is cut out by.

    ``closure`` holds the indices of every hyperplane containing the flat,
    ``basis`` spans the flat, ``rank`` is its codimension.
    """

    closure: frozenset[int]
    basis: tuple[Vector, ...]
    rank: int

    def __le__(self, other: "Flat") -> bool:
        # reverse inclusion: larger flats sit lower
        return self.closure <= other.closure

    def __lt__(self, other: "Flat") -> bool:
        return self.closure < other.closure


@dataclass
class IntersectionPoset:
    arrangement: Arrangement
    elements: list[Flat]
    mobius: dict[frozenset[int], int] = field(default_factory=dict)

    @property
    def bottom(self) -> Flat:
        return self.elements[0]

    def hasse_edges(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        """Cover relations (A, B) with A directly below B."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if a < b and not any(a < c < b for c in self.elements):
                    out.append((a.closure, b.closure))
        return out

    def __len__(self) -> int:
        return len(self.elements)


def _closure(normals: Sequence[Vector], idx: Iterable[int], n: int) -> tuple[frozenset[int], list[Vector], int]:
    rows = [normals[i] for i in idx]
    if not rows:
        basis = nullspace([], n)
        return frozenset(i for i, v in enumerate(normals) if is_zero(v)), basis, 0
    red, piv = rref(rows, n)
    r = len(piv)
    closed = frozenset(i for i, v in enumerate(normals) if rank(red + [list(v)]) == r)
    return closed, nullspace(red, n), r


def _meets_orthant(normals: Sequence[Vector], idx: Iterable[int], n: int) -> bool:
    rows = [normals[i] for i in idx]
    return strict_point([], n, eq_rows=rows, positive=True) is not None


def intersection_poset(arr: Arrangement, max_dim: int = MAX_DIM) -> IntersectionPoset:
    if arr.n > max_dim:
        raise DimensionBudget(f"dimension {arr.n} exceeds the budget {max_dim}")
    normals = arr.normals
    n = arr.n
    positive = arr.ambient is Ambient.POSITIVE
    c0, b0, r0 = _closure(normals, (), n)
    found: dict[frozenset[int], Flat] = {c0: Flat(c0, tuple(b0), r0)}
    frontier = [c0]
    while frontier:
        nxt = []
        for c in frontier:
            for h in range(len(normals)):
                if h in c:
                    continue
                cl, basis, r = _closure(normals, sorted(c | {h}), n)
                if cl in found:
                    continue
                if positive and not _meets_orthant(normals, cl, n):
                    continue
                found[cl] = Flat(cl, tuple(basis), r)
                nxt.append(cl)
        frontier = nxt
    elems = sorted(found.values(), key=lambda f: (f.rank, sorted(f.closure)))
    poset = IntersectionPoset(arr, elems)
    poset.mobius = mobius(poset)
    return poset


def mobius(poset: IntersectionPoset) -> dict[frozenset[int], int]:
    """mu(bottom) = 1 and mu(A) = -sum of mu(B) over B strictly below A."""
    mu: dict[frozenset[int], int] = {}
    for a in sorted(poset.elements, key=lambda f: len(f.closure)):
        if a is poset.bottom or not mu:
            mu[a.closure] = 1
            continue
        mu[a.closure] = -sum(mu[b.closure] for b in poset.elements if b.closure < a.closure)
    return mu


def count_regions_mobius(poset: IntersectionPoset) -> int:
    mu = poset.mobius or mobius(poset)
    return sum(abs(v) for v in mu.values())


def count_regions_rank(arr: Arrangement, max_dim: int = MAX_DIM, max_hyperplanes: int = MAX_HYPERPLANES) -> int:
    """Signed sum of (-1)^(|S| - rank S) over central subarrangements S."""
    if arr.n > max_dim:
        raise DimensionBudget(f"dimension {arr.n} exceeds the budget {max_dim}")
    if len(arr) > max_hyperplanes:
        raise DimensionBudget(f"{len(arr)} hyperplanes exceed the subset budget {max_hyperplanes}")
    normals = arr.normals
    positive = arr.ambient is Ambient.POSITIVE
    central: dict[frozenset[int], bool] = {}
    total = 0
    for size in range(len(normals) + 1):
        for S in itertools.combinations(range(len(normals)), size):
            cl, _, r = _closure(normals, S, arr.n)
            if positive:
                if cl not in central:
                    central[cl] = _meets_orthant(normals, cl, arr.n)
                if not central[cl]:
                    continue
            total += (-1) ** (size - r)
    return total


# --- chambers -------------------------------------------------------------


@dataclass(frozen=True)
class Chamber:
    sign_vector: tuple[int, ...]
    witness: Vector
    ranking: Ranking | None = None
    car: tuple[str, ...] | None = None

    def reproduces(self, arr: Arrangement) -> bool:
        return all(h.side(self.witness) == s for h, s in zip(arr.hyperplanes, self.sign_vector))


def chamber_ranking(arr: Arrangement, sigma: Sequence[int]) -> Ranking | None:
    """Ranking on the arrangement's eventualities read off a sign vector."""
    if not arr.eventualities:
        return None
    Y = arr.eventualities
    covered = set()
    pairs = {(x, x) for x in Y}
    for h, s in zip(arr.hyperplanes, sigma):
        for x, y, o in h.labels:
            covered.add(frozenset((x, y)))
            # <v^(x,y), J> has sign o*s; positive means x strictly below y
            if o * s > 0:
                pairs.add((x, y))
            else:
                pairs.add((y, x))
    if len(covered) != len(Y) * (len(Y) - 1) // 2:
        return None
    return Ranking(Y, pairs)


def enumerate_chambers(
    arr: Arrangement,
    max_dim: int = MAX_DIM,
    max_hyperplanes: int = MAX_HYPERPLANES,
) -> list[Chamber]:
    """All feasible strict sign vectors, each with an exact witness.

    Depth-first over sign prefixes. A prefix's witness already decides one
    child (the side it lies on), so only the other child costs an LP.
    """
    if arr.n > max_dim or len(arr) > max_hyperplanes:
        raise Budget(f"enumeration budget exceeded (n={arr.n}, |H|={len(arr)})")
    normals = arr.normals
    positive = arr.ambient is Ambient.POSITIVE
    n = arr.n
    root = strict_point([], n, positive=positive)
    if root is None:
        return []
    if not positive:
        root = tuple(Fraction(0) for _ in range(n))
    out: list[Chamber] = []

    def feasible(prefix: Sequence[int]) -> Vector | None:
        rows = [[s * a for a in normals[i]] for i, s in enumerate(prefix)]
        return strict_point(rows, n, positive=positive)

    def walk(prefix: list[int], w: Vector) -> None:
        k = len(prefix)
        if k == len(normals):
            sigma = tuple(prefix)
            R = chamber_ranking(arr, sigma)
            car = tuple(car_list(R)) if R is not None and len(R.domain) in (3, 4) else None
            out.append(Chamber(sigma, w, R, car))
            return
        side = dot(normals[k], w)
        for s in (1, -1):
            if side * s > 0:
                walk(prefix + [s], w)
            else:
                w2 = feasible(prefix + [s])
                if w2 is not None:
                    walk(prefix + [s], w2)

    walk([], root)
    return out


def find_polar_pair(arr: Arrangement, chambers: Sequence[Chamber] | None = None) -> tuple[Chamber, Chamber]:
    """Two chambers with opposite sign vectors whose rankings are total and mutually inverse."""
    chambers = list(enumerate_chambers(arr) if chambers is None else chambers)
    by_sign = {c.sign_vector: c for c in chambers}
    for c in chambers:
        opp = by_sign.get(tuple(-s for s in c.sign_vector))
        if opp is None:
            continue
        if c.ranking is None or opp.ranking is None:
            return c, opp
        if c.ranking.is_total() and opp.ranking == c.ranking.inverse():
            return c, opp
    raise NotFound("no antipodal pair of total chambers")
