import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_two_diverse_row
from prudentia.axioms import (
    Verdict,
    check_2_diversity,
    check_archimedean,
    check_combination,
    check_completeness,
    check_conditional_2_diversity,
    check_k_diversity,
    check_partial_3_diversity,
    check_transitivity,
    default_sample,
)
from prudentia.core import Database, Ranking, RankingFamily, parse_car
from prudentia.engine import PairwiseMatrix, SimilarityMatrix, pairwise_from_global
from prudentia.errors import NotStrict

MIXED = SimilarityMatrix("xyz", ["s", "t"], [[0, 0], [1, -1], [3, -2]])


def mixed_family():
    return RankingFamily.from_matrix(MIXED)


def test_default_sample_shape():
    sample = default_sample(["s", "t"], seed=3)
    assert len(sample) == 16 + 200
    assert sample[:16] == [Database.from_dense(["s", "t"], v) for v in itertools.product(range(4), repeat=2)]
    assert sample == default_sample(["s", "t"], seed=3)


def test_matrix_family_transitive_and_complete():
    sample = default_sample(["s", "t"])
    assert check_transitivity(mixed_family(), sample).verdict is Verdict.HOLDS
    assert check_completeness(mixed_family(), sample).verdict is Verdict.HOLDS


def test_cyclic_oracle_fails_transitivity():
    cyc = parse_car(["x", "y", "z", "x"])
    fam = RankingFamily("xyz", ["s", "t"], lambda J: cyc if J == Database({"s": 1, "t": 1}) else Ranking.from_scores({"x": 0, "y": 0, "z": 0}))
    rep = check_transitivity(fam, [Database({"s": 1}), Database({"s": 1, "t": 1})])
    assert rep.verdict is Verdict.FAILS
    assert rep.witness["database"] == Database({"s": 1, "t": 1})
    x, y, z = rep.witness["triple"]
    R = cyc
    assert R.weak(x, y) and R.weak(y, z) and not R.weak(x, z)


def test_empty_relation_fails_completeness():
    fam = RankingFamily("xy", ["s"], lambda J: Ranking("xy", []))
    assert check_completeness(fam, [Database({"s": 1})]).verdict is Verdict.FAILS


def test_singleton_domain_holds():
    fam = RankingFamily("x", ["s"], lambda J: Ranking("x", [("x", "x")]))
    assert check_transitivity(fam, [Database({"s": 1})]).verdict is Verdict.HOLDS
    assert check_completeness(fam, [Database({"s": 1})]).verdict is Verdict.HOLDS


def test_opaque_oracle_only_holds_on_sample():
    fam = RankingFamily("xy", ["s"], lambda J: Ranking.from_scores({"x": 0, "y": 1}))
    assert check_transitivity(fam, [Database({"s": 1})]).verdict is Verdict.HOLDS_ON_SAMPLE


def test_combination_holds_on_sample_for_matrix_family():
    rng = random.Random(0)
    sample = default_sample(["s", "t"])
    pairs = [(rng.choice(sample), rng.choice(sample)) for _ in range(500)]
    assert check_combination(mixed_family(), pairs).verdict is Verdict.HOLDS_ON_SAMPLE


def second_order_oracle(J: Database) -> Ranking:
    # c: cases where a peer picked x; d: cases showing the peer's tastes differ from ours
    if J["c"] > 0 and J["d"] == 0:
        return Ranking.from_scores({"x": 1, "y": 0})
    if J["c"] == 0:
        return Ranking.from_scores({"x": 0, "y": 0})
    return Ranking.from_scores({"x": 0, "y": 1})


def test_second_order_induction_violates_combination():
    fam = RankingFamily("xy", ["c", "d"], second_order_oracle)
    rep = check_combination(fam, [(Database({"c": 1}), Database({"d": 5}), 1, 1)])
    assert rep.verdict is Verdict.FAILS
    assert rep.witness["pair"] == ("y", "x")


def test_combination_vacuous_on_empty_databases():
    rep = check_combination(mixed_family(), [(Database(), Database())])
    assert rep.verdict is Verdict.HOLDS_ON_SAMPLE


def _archimedean_family():
    # <v^(x,y), J> = J(s) - J(t)
    return RankingFamily.from_matrix(SimilarityMatrix("xy", ["s", "t"], [[0, 0], [1, -1]]))


def test_archimedean_least_k():
    fam = _archimedean_family()
    J = Database({"s": 1})  # inner product 1
    I = Database({"t": 3})  # inner product -3
    rep = check_archimedean(fam, I, J, "x", "y", k_max=10)
    assert rep.verdict is Verdict.HOLDS and rep.details["k"] == 4


def test_archimedean_already_strict():
    fam = _archimedean_family()
    rep = check_archimedean(fam, Database({"s": 1, "t": 1}), Database({"s": 1}), "x", "y")
    assert rep.details["k"] == 1


def test_archimedean_budget_is_inconclusive():
    fam = _archimedean_family()
    rep = check_archimedean(fam, Database({"t": 3}), Database({"s": 1}), "x", "y", k_max=1)
    assert rep.verdict is Verdict.FAILS
    assert rep.witness["budget_exhausted"] and rep.details["inconclusive"]


def test_archimedean_requires_strict_comparison():
    with pytest.raises(NotStrict):
        check_archimedean(_archimedean_family(), Database({"s": 1}), Database({"t": 1}), "x", "y")


def test_two_diversity_examples(fixture):
    assert check_2_diversity(fixture("mixed_triple")).verdict is Verdict.HOLDS
    assert check_2_diversity(PairwiseMatrix("xy", "st", {("x", "y"): [1, 0]})).verdict is Verdict.FAILS
    assert check_2_diversity(PairwiseMatrix("xy", "st", {("x", "y"): [0, 0]})).verdict is Verdict.FAILS


def test_conditional_two_diversity_examples(fixture):
    assert check_conditional_2_diversity(fixture("mixed_triple")).verdict is Verdict.HOLDS
    rep = check_conditional_2_diversity(fixture("lexicographic"))
    assert rep.verdict is Verdict.FAILS and len(rep.witness["triple"]) == 3
    two = PairwiseMatrix("xy", "st", {("x", "y"): [1, -1]})
    assert check_conditional_2_diversity(two).verdict is Verdict.HOLDS


def test_k_diversity_examples(fixture):
    rep = check_k_diversity(fixture("mixed_triple"), 3)
    assert rep.verdict is Verdict.FAILS and rep.witness["total_orders"] == 4
    rep = check_k_diversity(fixture("jacobi4_extended"), 4)
    assert rep.verdict is Verdict.HOLDS
    assert rep.details["counts"][("w", "x", "y", "z")] == 24
    assert check_k_diversity(PairwiseMatrix("xy", "st", {("x", "y"): [2, -1]}), 2).verdict is Verdict.HOLDS


def test_partial_three_diversity_examples(fixture):
    rep = check_partial_3_diversity(fixture("mixed_triple"))
    assert rep.verdict is Verdict.HOLDS and rep.details["counts"][("x", "y", "z")] == 4
    rep = check_partial_3_diversity(fixture("lexicographic"))
    assert rep.verdict is Verdict.FAILS and rep.witness["total_orders"] == 2
    assert check_partial_3_diversity(PairwiseMatrix("xy", "st", {("x", "y"): [2, -1]})).verdict is Verdict.HOLDS


@settings(max_examples=200)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=3))
def test_two_diversity_matches_grid_search(row):
    vp = PairwiseMatrix("xy", [f"c{i}" for i in range(len(row))], {("x", "y"): row})
    holds = check_2_diversity(vp).verdict is Verdict.HOLDS
    # a bound of 1 + sum|row| makes the grid search complete
    assert holds == brute_two_diverse_row(row, hi=1 + sum(abs(a) for a in row))


def _random_matrix(rng, m, n, lo=-3, hi=3):
    return SimilarityMatrix([f"e{i}" for i in range(m)], [f"c{j}" for j in range(n)], [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)])


def test_kdiv_monotone_on_random_matrices():
    rng = random.Random(11)
    for _ in range(15):
        vp = pairwise_from_global(_random_matrix(rng, 4, 4))
        verdicts = [check_k_diversity(vp, k).verdict is Verdict.HOLDS for k in (2, 3, 4)]
        for lo, hi in zip(verdicts, verdicts[1:]):
            assert lo or not hi


def test_experience_bound_fixtures(fixture):
    # fewer than min(4, m) case types: four-diversity cannot hold
    for name in ("mixed_triple", "lexicographic", "jacobi4", "prudent_triple", "rank3_triple"):
        vp = fixture(name)
        if vp.n < min(4, vp.m):
            assert check_k_diversity(vp, 4).verdict is Verdict.FAILS, name


def test_experience_bound_random():
    rng = random.Random(5)
    for _ in range(20):
        vp = pairwise_from_global(_random_matrix(rng, 4, 3, -5, 5))
        assert check_k_diversity(vp, 4).verdict is Verdict.FAILS


def test_conditional_two_diversity_matches_partial_three_diversity():
    rng = random.Random(23)
    agree = 0
    for _ in range(40):
        m, n = rng.choice([(3, 2), (3, 3), (4, 3)])
        vp = pairwise_from_global(_random_matrix(rng, m, n))
        c2d = check_conditional_2_diversity(vp).verdict is Verdict.HOLDS
        p3d = check_partial_3_diversity(vp).verdict is Verdict.HOLDS
        assert c2d == p3d
        agree += c2d
    assert agree > 0
