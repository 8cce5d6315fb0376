"""Eventualities, case types, databases, rankings and ranking families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import NotCAR, UnknownLabel

FREE_CASE = "__free__"

Rational = Fraction


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and "p/q" strings; floats are taken at face value."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def label_key(label: str, free: str = FREE_CASE) -> tuple[bool, str]:
    # the free case always sorts after ordinary labels
    return (label == free, label)


def canonical_labels(labels: Iterable[str], free: str = FREE_CASE) -> tuple[str, ...]:
    out = tuple(sorted(labels, key=lambda s: label_key(s, free)))
    if len(set(out)) != len(out):
        raise ValueError("labels must be pairwise distinct")
    return out


@dataclass(frozen=True)
class EventualitySet:
    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = canonical_labels(labels)
        if not labels:
            raise ValueError("need at least one eventuality")
        object.__setattr__(self, "labels", labels)

    @property
    def m(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, item) -> bool:
        return item in self.labels


@dataclass(frozen=True)
class CaseTypeSet:
    labels: tuple[str, ...]
    free_case: str | None = None

    def __init__(self, labels: Iterable[str], free_case: str | None = None):
        labels = canonical_labels(labels)
        if not labels:
            raise ValueError("need at least one case type")
        if free_case is not None and free_case in labels:
            raise ValueError("the free case must differ from every ordinary case type")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "free_case", free_case)

    @property
    def n(self) -> int:
        return len(self.labels)

    def all_labels(self) -> tuple[str, ...]:
        if self.free_case is None:
            return self.labels
        return self.labels + (self.free_case,)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)


class Database(Mapping[str, Fraction]):
    """Nonnegative rational counting vector over case types, stored sparsely.

    Zero entries are dropped, so two databases compare equal exactly when
    they assign the same mass to every case type.
    """

    __slots__ = ("_counts", "_hash")

    def __init__(self, counts: Mapping[str, object] | Iterable[tuple[str, object]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        clean: dict[str, Fraction] = {}
        for key, raw in items:
            value = to_fraction(raw)
            if value < 0:
                raise ValueError(f"negative count {value} for case type {key!r}")
            if value:
                clean[str(key)] = clean.get(str(key), Fraction(0)) + value
        self._counts = dict(sorted(clean.items(), key=lambda kv: label_key(kv[0])))
        self._hash = hash(tuple(self._counts.items()))

    @classmethod
    def from_dense(cls, case_types: Sequence[str], values: Sequence[object]) -> "Database":
        if len(case_types) != len(values):
            raise ValueError("dense vector length does not match the case types")
        return cls(zip(case_types, values))

    def __getitem__(self, key: str) -> Fraction:
        return self._counts.get(key, Fraction(0))

    def __iter__(self) -> Iterator[str]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, key) -> bool:
        return key in self._counts

    def __eq__(self, other) -> bool:
        if isinstance(other, Database):
            return self._counts == other._counts
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v}" for k, v in self._counts.items())
        return f"Database({{{body}}})"

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self._counts)

    def is_zero(self) -> bool:
        return not self._counts

    def total(self) -> Fraction:
        return sum(self._counts.values(), Fraction(0))

    def dense(self, case_types: Sequence[str]) -> tuple[Fraction, ...]:
        unknown = set(self._counts) - set(case_types)
        if unknown:
            raise UnknownLabel(f"case types {sorted(unknown)} are not in {list(case_types)}")
        return tuple(self[c] for c in case_types)

    def scale(self, q) -> "Database":
        return Database({k: v * to_fraction(q) for k, v in self._counts.items()})

    def __add__(self, other: "Database") -> "Database":
        if not isinstance(other, Database):
            return NotImplemented
        merged = dict(self._counts)
        for k, v in other.items():
            merged[k] = merged.get(k, Fraction(0)) + v
        return Database(merged)

    def mix(self, other: "Database", lam, mu) -> "Database":
        """Return ``lam * self + mu * other``."""
        return self.scale(lam) + other.scale(mu)


def canonicalize_database(J: Database) -> tuple[int, Database]:
    """Least positive integer k such that k*J is integral, together with k*J."""
    k = 1
    for value in J.values():
        k = math.lcm(k, value.denominator)
    return k, J.scale(k)


@dataclass(frozen=True)
class Ranking:
    """A binary relation on eventualities; ``(x, y)`` in pairs reads x ≼ y."""

    domain: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def __init__(self, domain: Iterable[str], pairs: Iterable[tuple[str, str]]):
        domain = tuple(domain)
        if len(set(domain)) != len(domain):
            raise ValueError("ranking domain has repeated labels")
        members = set(domain)
        clean = set()
        for x, y in pairs:
            if x not in members or y not in members:
                raise UnknownLabel(f"pair ({x}, {y}) leaves the domain {list(domain)}")
            clean.add((x, y))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "pairs", frozenset(clean))

    @classmethod
    def from_scores(cls, scores: Mapping[str, object]) -> "Ranking":
        """x ≼ y iff score(x) ≤ score(y)."""
        domain = tuple(scores)
        return cls(domain, ((x, y) for x in domain for y in domain if scores[x] <= scores[y]))

    @classmethod
    def from_car(cls, car: Sequence[str]) -> "Ranking":
        return parse_car(car)

    def weak(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def strict(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs and (y, x) not in self.pairs

    def indifferent(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs and (y, x) in self.pairs

    def symmetric_part(self) -> frozenset[tuple[str, str]]:
        return frozenset(p for p in self.pairs if (p[1], p[0]) in self.pairs)

    def asymmetric_part(self) -> frozenset[tuple[str, str]]:
        return frozenset(p for p in self.pairs if (p[1], p[0]) not in self.pairs)

    def inverse(self) -> "Ranking":
        return Ranking(self.domain, ((y, x) for x, y in self.pairs))

    def restrict(self, subset: Iterable[str]) -> "Ranking":
        keep = [x for x in self.domain if x in set(subset)]
        ks = set(keep)
        return Ranking(keep, (p for p in self.pairs if p[0] in ks and p[1] in ks))

    def is_complete(self) -> bool:
        return all(
            (x, y) in self.pairs or (y, x) in self.pairs
            for x in self.domain
            for y in self.domain
        )

    def is_antisymmetric(self) -> bool:
        return all(x == y for x, y in self.symmetric_part())

    def is_transitive(self) -> bool:
        return self.transitivity_witness() is None

    def transitivity_witness(self) -> tuple[str, str, str] | None:
        for x, y, z in itertools.product(self.domain, repeat=3):
            if (x, y) in self.pairs and (y, z) in self.pairs and (x, z) not in self.pairs:
                return (x, y, z)
        return None

    def is_total(self) -> bool:
        """Complete, transitive and antisymmetric: a strict linear order plus the diagonal."""
        return self.is_complete() and self.is_antisymmetric() and self.is_transitive()

    def __eq__(self, other) -> bool:
        if isinstance(other, Ranking):
            return set(self.domain) == set(other.domain) and self.pairs == other.pairs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((frozenset(self.domain), self.pairs))


def _strong_components(domain: Sequence[str], beats) -> list[list[str]]:
    # Tarjan on the "x ≺ y" digraph; components come out in reverse topological order
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    stack: list[str] = []
    on_stack: set[str] = set()
    comps: list[list[str]] = []
    counter = itertools.count()

    def visit(v: str) -> None:
        index[v] = low[v] = next(counter)
        stack.append(v)
        on_stack.add(v)
        for w in domain:
            if w != v and beats(v, w):
                if w not in index:
                    visit(w)
                    low[v] = min(low[v], low[w])
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            comp = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                comp.append(w)
                if w == v:
                    break
            comps.append(comp)

    for v in domain:
        if v not in index:
            visit(v)
    comps.reverse()
    return comps


def _cycle_block(comp: Sequence[str], R: Ranking) -> list[str]:
    order = sorted(comp, key=R.domain.index)
    if len(order) == 3:
        a = order[0]
        b, c = order[1], order[2]
        if not R.strict(a, b):
            b, c = c, b
        return [a, b, c, a]
    # strong tournament on four vertices: Hamiltonian cycle p0≺p1≺p2≺p3≺p0 with chords p0≺p2, p1≺p3
    for perm in itertools.permutations(order):
        p = perm
        if all(R.strict(p[i], p[(i + 1) % 4]) for i in range(4)) and R.strict(p[0], p[2]) and R.strict(p[1], p[3]):
            return list(p) + [p[0]]
    raise NotCAR("unexpected strong component")  # pragma: no cover


def car_list(R: Ranking) -> list[str]:
    """Encode a complete antisymmetric ranking on 3 or 4 eventualities.

    Listed from least to most plausible. A cyclic block repeats its first
    element to close the cycle, so ``x≺y≺z≺x`` becomes ``[x, y, z, x]`` and
    everything after a block ranks above all of its members.
    """
    if len(R.domain) not in (3, 4):
        raise NotCAR(f"CAR lists need a domain of size 3 or 4, got {len(R.domain)}")
    if not R.is_complete():
        raise NotCAR("ranking is not complete")
    if not R.is_antisymmetric():
        raise NotCAR("ranking has ties")
    out: list[str] = []
    for comp in _strong_components(R.domain, R.strict):
        if len(comp) == 1:
            out.extend(comp)
        else:
            out.extend(_cycle_block(comp, R))
    return out


def parse_car(car: Sequence[str]) -> Ranking:
    """Inverse of :func:`car_list`."""
    blocks: list[list[str]] = []
    i = 0
    car = list(car)
    while i < len(car):
        # a block closes at the next repetition of its head
        head = car[i]
        try:
            j = car.index(head, i + 1)
        except ValueError:
            blocks.append([head])
            i += 1
            continue
        cyc = car[i:j]
        if len(cyc) not in (3, 4):
            raise NotCAR(f"cycle block {cyc} must have length 3 or 4")
        blocks.append(cyc)
        i = j + 1
    domain = [x for b in blocks for x in b]
    if len(set(domain)) != len(domain):
        raise NotCAR("label repeated outside a cycle closure")
    strict: set[tuple[str, str]] = set()
    for bi, b in enumerate(blocks):
        for later in blocks[bi + 1:]:
            strict.update((x, y) for x in b for y in later)
        if len(b) > 1:
            strict.update((b[k], b[(k + 1) % len(b)]) for k in range(len(b)))
        if len(b) == 4:
            strict.update({(b[0], b[2]), (b[1], b[3])})
    pairs = strict | {(x, x) for x in domain}
    return Ranking(domain, pairs)


class RankingFamily:
    """An oracle ``Database -> Ranking`` over fixed eventualities and case types.

    ``generator`` records the matrix the oracle was built from, if any; the
    axiom checks use it to decide structural properties instead of sampling.
    """

    def __init__(
        self,
        eventualities: Iterable[str],
        case_types: Iterable[str],
        oracle: Callable[[Database], Ranking],
        generator=None,
    ):
        self.eventualities = tuple(eventualities)
        self.case_types = tuple(case_types)
        self._oracle = oracle
        self.generator = generator
        self._cache: dict[Database, Ranking] = {}

    def __call__(self, J: Database) -> Ranking:
        hit = self._cache.get(J)
        if hit is None:
            hit = self._oracle(J)
            self._cache[J] = hit
        return hit

    rank = __call__

    @classmethod
    def from_matrix(cls, v) -> "RankingFamily":
        from .engine import rank_all

        return cls(v.eventualities, v.case_types, lambda J: rank_all(v, J), generator=v)

    @classmethod
    def from_pairwise(cls, vp) -> "RankingFamily":
        from .engine import rank_all_pairwise

        return cls(vp.eventualities, vp.case_types, lambda J: rank_all_pairwise(vp, J), generator=vp)
