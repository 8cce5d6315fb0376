import itertools
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import regions_plane, regions_space3, sampled_sign_vectors
from prudentia.arrangements import (
    Ambient,
    Arrangement,
    build_arrangement,
    count_regions_mobius,
    count_regions_rank,
    enumerate_chambers,
    find_polar_pair,
    intersection_poset,
)
from prudentia.engine import PairwiseMatrix, SimilarityMatrix, pairwise_from_global
from prudentia.errors import Budget, DimensionBudget, ZeroNormal


@pytest.fixture
def mixed(fixture):
    return fixture("mixed_triple")


def test_mixed_triple_three_lines(mixed):
    assert len(build_arrangement(mixed, "xyz", "full")) == 3


def test_two_eventualities_one_hyperplane(mixed):
    arr = build_arrangement(mixed, ["x", "y"], "full")
    assert len(arr) == 1
    assert len(enumerate_chambers(arr)) == 2


def test_collinear_rows_merge():
    v = SimilarityMatrix("wxyz", "abc", {"x": [0, 0, 0], "y": [1, -1, 0], "z": [0, 1, -1], "w": [2, -1, -1]})
    vp = pairwise_from_global(v)
    # v^(z,w) = 2 v^(x,y)
    arr = build_arrangement(vp, None, "full")
    assert len(arr) == 5
    merged = [h for h in arr.hyperplanes if len(h.labels) == 2]
    assert len(merged) == 1


def test_zero_row_is_rejected():
    vp = PairwiseMatrix("xy", ["s", "t"], {("x", "y"): [0, 0]})
    with pytest.raises(ZeroNormal):
        build_arrangement(vp, None, "full")


def test_warning_band_for_four_eventualities():
    v = SimilarityMatrix("wxyz", "st", {"x": [0, 0], "y": [1, -1], "z": [2, -2], "w": [3, -3]})
    with pytest.warns(UserWarning):
        build_arrangement(pairwise_from_global(v), None, "full")


def test_mixed_triple_posets(mixed):
    full = intersection_poset(build_arrangement(mixed, None, "full"))
    assert len(full) == 5
    assert sorted(full.mobius.values()) == [-1, -1, -1, 1, 2]
    pos = intersection_poset(build_arrangement(mixed, None, "positive"))
    assert len(pos) == 4
    assert sorted(pos.mobius.values()) == [-1, -1, -1, 1]


def test_empty_arrangement():
    arr = Arrangement.from_normals([], "full", n=3)
    poset = intersection_poset(arr)
    assert len(poset) == 1 and poset.mobius == {poset.bottom.closure: 1}
    assert count_regions_mobius(poset) == 1
    assert count_regions_rank(arr) == 1
    assert len(enumerate_chambers(arr)) == 1


def test_mixed_triple_counts(mixed):
    for ambient, expected in (("full", 6), ("positive", 4)):
        arr = build_arrangement(mixed, None, ambient)
        assert count_regions_mobius(intersection_poset(arr)) == expected
        assert count_regions_rank(arr) == expected
        assert len(enumerate_chambers(arr)) == expected


def test_mixed_triple_full_space_realises_every_permutation(mixed):
    cars = {c.car for c in enumerate_chambers(build_arrangement(mixed, None, "full"))}
    assert cars == set(itertools.permutations("xyz"))


def test_rank3_triple(fixture):
    arr = build_arrangement(fixture("rank3_triple"), None, "full")
    chambers = enumerate_chambers(arr)
    assert len(chambers) == 8 == count_regions_rank(arr)
    cyclic = [c for c in chambers if len(c.car) == 4]
    assert len(cyclic) == 2
    assert {c.car for c in cyclic} == {("x", "y", "z", "x"), ("x", "z", "y", "x")}


def test_coordinate_planes_count_eight():
    arr = Arrangement.from_normals([(1, 0, 0), (0, 1, 0), (0, 0, 1)], "full")
    assert count_regions_rank(arr) == 8


def test_jacobi4_full_space_is_24_and_all_total(fixture):
    arr = build_arrangement(fixture("jacobi4"), None, "full")
    chambers = enumerate_chambers(arr)
    assert len(chambers) == 24 == count_regions_rank(arr)
    assert all(c.ranking.is_total() for c in chambers)


def test_dimension_budget():
    arr = Arrangement.from_normals([[1] + [0] * 8], "full")
    with pytest.raises(DimensionBudget):
        intersection_poset(arr)
    with pytest.raises(DimensionBudget):
        count_regions_rank(arr)
    with pytest.raises(Budget):
        enumerate_chambers(arr)


def _mobius_sums_vanish(poset):
    for a in poset.elements:
        if a is poset.bottom:
            continue
        assert sum(poset.mobius[b.closure] for b in poset.elements if b.closure <= a.closure) == 0


@pytest.mark.parametrize("name", ["mixed_triple", "rank3_triple", "jacobi4", "jacobi4_extended", "prudent_triple"])
@pytest.mark.parametrize("ambient", ["full", "positive"])
def test_fixture_invariants(fixture, name, ambient):
    arr = build_arrangement(fixture(name), None, ambient)
    poset = intersection_poset(arr)
    _mobius_sums_vanish(poset)
    chambers = enumerate_chambers(arr)
    assert count_regions_mobius(poset) == count_regions_rank(arr) == len(chambers)
    assert len({c.sign_vector for c in chambers}) == len(chambers)
    for c in chambers:
        assert c.reproduces(arr)
        if ambient == "positive":
            assert all(x > 0 for x in c.witness)
    sampled = sampled_sign_vectors(arr.normals, ambient == "positive")
    assert sampled <= {c.sign_vector for c in chambers}
    if ambient == "full":
        signs = {c.sign_vector for c in chambers}
        assert all(tuple(-s for s in sig) in signs for sig in signs)


normal2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(any)
normal3 = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).filter(any)


@settings(max_examples=60, deadline=None)
@given(st.lists(normal2, min_size=1, max_size=6), st.booleans())
def test_plane_counts_match_closed_form(normals, positive):
    arr = Arrangement.from_normals(normals, "positive" if positive else "full")
    expected = regions_plane(normals, positive)
    assert count_regions_mobius(intersection_poset(arr)) == expected
    assert count_regions_rank(arr) == expected
    assert len(enumerate_chambers(arr)) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(normal3, min_size=1, max_size=6))
def test_space_counts_match_euler_formula(normals):
    arr = Arrangement.from_normals(normals, "full")
    expected = regions_space3(normals)
    assert count_regions_mobius(intersection_poset(arr)) == expected
    assert len(enumerate_chambers(arr)) == expected


@settings(max_examples=40, deadline=None)
@given(st.lists(normal3, min_size=1, max_size=6))
def test_antipodal_closure(normals):
    signs = {c.sign_vector for c in enumerate_chambers(Arrangement.from_normals(normals, "full"))}
    assert all(tuple(-s for s in sig) in signs for sig in signs)


def test_conditionally_diverse_triples_have_six_or_four(fixture):
    # centre outside the open orthant: 4; centre inside: 6
    mixed = fixture("mixed_triple")
    assert len(enumerate_chambers(build_arrangement(mixed, None, "positive"))) == 4
    meets = PairwiseMatrix("xyz", "abc", {("x", "y"): [1, -1, 0], ("y", "z"): [0, 1, -1], ("x", "z"): [1, 0, -1]})
    assert len(enumerate_chambers(build_arrangement(meets, None, "full"))) == 6
    assert len(enumerate_chambers(build_arrangement(meets, None, "positive"))) == 6


def test_polar_pairs(fixture, mixed):
    a, b = find_polar_pair(build_arrangement(mixed, None, "positive"))
    assert a.ranking == b.ranking.inverse() and a.ranking.is_total()
    assert {a.car, b.car} == {("x", "y", "z"), ("z", "y", "x")}
    a, b = find_polar_pair(build_arrangement(mixed, ["x", "y"], "positive"))
    assert a.sign_vector == tuple(-s for s in b.sign_vector)
    a, b = find_polar_pair(build_arrangement(fixture("jacobi4_extended"), None, "positive"))
    assert a.ranking.is_total() and a.ranking.inverse() == b.ranking


def test_hasse_diagram_data(mixed):
    poset = intersection_poset(build_arrangement(mixed, None, "full"))
    edges = poset.hasse_edges()
    # bottom -> three lines -> centre
    assert len(edges) == 6
