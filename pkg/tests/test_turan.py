from __future__ import annotations

import itertools
import random

import pytest

from almostcongruent.bounds import s_of_n
from almostcongruent.errors import OutOfSupportedRange
from almostcongruent.hypergraph import TABLE_GRAPHS, ThreeGraph, is_family_free, is_isomorphic, named
from almostcongruent.turan import balanced_3partite, copy_masks, turan_exhaustive, turan_number

CANCELLATIVE = [named("F5"), named("K4_3minus")]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_bollobas_small_n(n):
    res = turan_number(n, CANCELLATIVE, witnesses=True)
    assert res.value == s_of_n(n)
    assert any(is_isomorphic(w, balanced_3partite(n)) for w in res.witnesses)
    for w in res.witnesses:
        assert w.num_edges == res.value and is_family_free(w, CANCELLATIVE)


def test_examples():
    assert turan_number(5, CANCELLATIVE).value == 4
    assert turan_number(4, [named("K4_3")]).value == 3
    assert turan_number(2, CANCELLATIVE).value == 0


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dfs_matches_exhaustive(n):
    rng = random.Random(n)
    for _ in range(12):
        fam = [named(x) for x in rng.sample(TABLE_GRAPHS, rng.randint(1, 3))]
        assert turan_number(n, fam).value == turan_exhaustive(n, fam)


def test_exhaustive_oracle_is_independent():
    # brute force through is_family_free on every labelled graph with 4 vertices
    ts = list(itertools.combinations(range(4), 3))
    best = 0
    for k in range(len(ts) + 1):
        for es in itertools.combinations(ts, k):
            if is_family_free(ThreeGraph(4, es), CANCELLATIVE):
                best = max(best, k)
    assert best == turan_exhaustive(4, CANCELLATIVE) == 2


def test_antitone_in_family():
    names = list(TABLE_GRAPHS)
    for n in (5, 6):
        for a in names:
            for b in names:
                small = turan_number(n, [named(a)]).value
                big = turan_number(n, [named(a), named(b)]).value
                assert big <= small


def test_witnesses_are_canonical_and_extremal():
    res = turan_number(5, [named("K4_3minus")], witnesses=True)
    assert res.value == 5 == turan_exhaustive(5, [named("K4_3minus")])
    assert len({w.mask for w in res.witnesses}) == len(res.witnesses)


def test_large_family_members_are_vacuous():
    # H5 has six vertices and cannot occur in a 5-vertex graph
    assert turan_number(5, [named("H5")]).value == 10
    assert copy_masks(5, named("H5")) == []


def test_range_limits():
    with pytest.raises(OutOfSupportedRange):
        turan_number(8, CANCELLATIVE)
    with pytest.raises(OutOfSupportedRange):
        turan_number(7, CANCELLATIVE)
    with pytest.raises(OutOfSupportedRange):
        turan_exhaustive(6, CANCELLATIVE)


def test_n7_behind_flag():
    res = turan_number(7, CANCELLATIVE, allow_slow=True, time_limit=600)
    assert res.value == s_of_n(7) == 12


@pytest.mark.parametrize("n,edges", [(3, 1), (6, 8), (7, 12), (10, 36)])
def test_balanced_3partite(n, edges):
    g = balanced_3partite(n)
    assert g.num_edges == edges == s_of_n(n)
    assert is_family_free(g, CANCELLATIVE)
