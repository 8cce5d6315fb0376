"""Checks for the ranking axioms and the diversity conditions.

Families built from a matrix get exact verdicts (``Holds``) where the
property follows from linearity; opaque oracles can only ever earn
``HoldsOnSample``.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .arrangements import Ambient, build_arrangement, enumerate_chambers
from .core import Database, RankingFamily
from .engine import PairwiseMatrix, SimilarityMatrix
from .errors import NotStrict, ZeroNormal
from .linalg import collinear


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    HOLDS_ON_SAMPLE = "HoldsOnSample"
    FAILS = "Fails"


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    verdict: Verdict
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.FAILS and self.witness is None:
            raise ValueError("a failing report must carry a witness")

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.FAILS


def kdiv_name(k: int) -> str:
    return f"KDiv({k})"


def default_sample(
    case_types: Sequence[str],
    max_entry: int = 3,
    max_denominator: int = 4,
    n_random: int = 200,
    seed: int = 0,
) -> list[Database]:
    """Every integer database with entries <= max_entry, then seeded random rational ones."""
    out = [Database.from_dense(case_types, vals) for vals in itertools.product(range(max_entry + 1), repeat=len(case_types))]
    rng = random.Random(seed)
    for _ in range(n_random):
        vals = [Fraction(rng.randint(0, max_entry * max_denominator), rng.randint(1, max_denominator)) for _ in case_types]
        out.append(Database.from_dense(case_types, vals))
    return out


def _jacobi_holds(vp: PairwiseMatrix) -> bool:
    xs = vp.eventualities
    if not vp.has_all_rows():
        return False
    for x, y, z in itertools.combinations(xs, 3):
        if tuple(a + b for a, b in zip(vp.row(x, y), vp.row(y, z))) != vp.row(x, z):
            return False
    return True


def _structural(family: RankingFamily) -> bool:
    g = family.generator
    if isinstance(g, SimilarityMatrix):
        return True
    return isinstance(g, PairwiseMatrix) and _jacobi_holds(g)


def check_transitivity(family: RankingFamily, sample: Iterable[Database]) -> AxiomReport:
    sample = list(sample)
    for J in sample:
        w = family(J).transitivity_witness()
        if w is not None:
            return AxiomReport("A0", Verdict.FAILS, {"database": J, "triple": w})
    exact = _structural(family) or len(family.eventualities) <= 1
    return AxiomReport("A0", Verdict.HOLDS if exact else Verdict.HOLDS_ON_SAMPLE, details={"sampled": len(sample)})


def check_completeness(family: RankingFamily, sample: Iterable[Database]) -> AxiomReport:
    sample = list(sample)
    for J in sample:
        R = family(J)
        for x in family.eventualities:
            for y in family.eventualities:
                if not R.weak(x, y) and not R.weak(y, x):
                    return AxiomReport("A1", Verdict.FAILS, {"database": J, "pair": (x, y)})
    g = family.generator
    exact = isinstance(g, (SimilarityMatrix, PairwiseMatrix)) or len(family.eventualities) <= 1
    return AxiomReport("A1", Verdict.HOLDS if exact else Verdict.HOLDS_ON_SAMPLE, details={"sampled": len(sample)})


def _random_weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 12), rng.randint(1, 4))


def check_combination(family: RankingFamily, sample_pairs: Iterable[tuple], seed: int = 0) -> AxiomReport:
    """If x ≼ y on I and on J then x ≼ y on lam*I + mu*J, strictly if either was strict.

    Entries of ``sample_pairs`` are ``(I, J)`` (weights drawn from a seeded
    generator) or ``(I, J, lam, mu)``.
    """
    rng = random.Random(seed)
    xs = family.eventualities
    count = 0
    for item in sample_pairs:
        if len(item) == 4:
            I, J, lam, mu = item
            lam, mu = Fraction(lam), Fraction(mu)
        else:
            I, J = item
            lam, mu = _random_weight(rng), _random_weight(rng)
        K = I.mix(J, lam, mu)
        RI, RJ, RK = family(I), family(J), family(K)
        count += 1
        for x in xs:
            for y in xs:
                if x == y or not (RI.weak(x, y) and RJ.weak(x, y)):
                    continue
                strict = RI.strict(x, y) or RJ.strict(x, y)
                if not RK.weak(x, y) or (strict and not RK.strict(x, y)):
                    return AxiomReport(
                        "A2",
                        Verdict.FAILS,
                        {"I": I, "J": J, "lam": lam, "mu": mu, "pair": (x, y), "strict": strict},
                    )
    return AxiomReport("A2", Verdict.HOLDS_ON_SAMPLE, details={"sampled": count})


def check_archimedean(
    family: RankingFamily,
    I: Database,
    J: Database,
    x: str,
    y: str,
    k_max: int = 64,
) -> AxiomReport:
    """Least k such that x ≺ y on (1 - mu) I + mu J with mu = k / (k + 1).

    Running out of budget yields ``Fails`` flagged ``budget_exhausted``;
    that is inconclusive, not a refutation.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if not family(J).strict(x, y):
        raise NotStrict(f"{x} is not strictly below {y} at J")
    for k in range(1, k_max + 1):
        mu = Fraction(k, k + 1)
        K = I.mix(J, 1 - mu, mu)
        if family(K).strict(x, y):
            verdict = Verdict.HOLDS if _structural(family) else Verdict.HOLDS_ON_SAMPLE
            return AxiomReport("A3", verdict, details={"k": k, "mu": mu})
    return AxiomReport(
        "A3",
        Verdict.FAILS,
        {"budget_exhausted": True, "k_max": k_max, "pair": (x, y)},
        {"inconclusive": True},
    )


def _mixed(row: Sequence[Fraction]) -> bool:
    return any(a > 0 for a in row) and any(a < 0 for a in row)


def check_2_diversity(vp: PairwiseMatrix) -> AxiomReport:
    for x, y in vp.upper_pairs():
        row = vp.row(x, y)
        if not _mixed(row):
            return AxiomReport("Div2", Verdict.FAILS, {"pair": (x, y), "row": row})
    return AxiomReport("Div2", Verdict.HOLDS)


def check_conditional_2_diversity(vp: PairwiseMatrix) -> AxiomReport:
    base = check_2_diversity(vp)
    if not base.ok:
        return AxiomReport("CondDiv2", Verdict.FAILS, base.witness, {"reason": "2-diversity fails"})
    for x, y, z in itertools.permutations(vp.eventualities, 3):
        if collinear(vp.row(x, z), vp.row(y, z)):
            return AxiomReport("CondDiv2", Verdict.FAILS, {"triple": (x, y, z)})
    return AxiomReport("CondDiv2", Verdict.HOLDS)


def count_total_chambers(vp: PairwiseMatrix, Y: Sequence[str]) -> int:
    """Number of total orders on Y realised by strictly positive databases."""
    try:
        arr = build_arrangement(vp, Y, Ambient.POSITIVE)
    except ZeroNormal:
        # a zero row ties the pair everywhere, so no total order is reachable
        return 0
    return sum(1 for c in enumerate_chambers(arr) if c.ranking is not None and c.ranking.is_total())


def _diversity(vp: PairwiseMatrix, sizes: Sequence[int], need, name: str) -> AxiomReport:
    counts: dict[tuple[str, ...], int] = {}
    failing = None
    for size in sizes:
        for Y in itertools.combinations(vp.eventualities, size):
            c = count_total_chambers(vp, Y)
            counts[Y] = c
            if c < need(size) and failing is None:
                failing = {"subset": Y, "total_orders": c, "required": need(size)}
    details = {"counts": counts}
    if failing is not None:
        return AxiomReport(name, Verdict.FAILS, failing, details)
    return AxiomReport(name, Verdict.HOLDS, details=details)


def check_k_diversity(vp: PairwiseMatrix, k: int) -> AxiomReport:
    if not 2 <= k <= 4:
        raise ValueError("k must be between 2 and 4")
    sizes = [s for s in range(2, k + 1) if s <= vp.m]
    return _diversity(vp, sizes, math.factorial, kdiv_name(k))


def check_partial_3_diversity(vp: PairwiseMatrix) -> AxiomReport:
    sizes = [s for s in (2, 3) if s <= vp.m]
    return _diversity(vp, sizes, lambda s: s, "Partial3Div")
