from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from almostcongruent import hypergraph as hg
from almostcongruent.hypergraph import ThreeGraph, named


def brute_isomorphic(h1, h2):
    if h1.n != h2.n:
        return False
    return any(h1.relabel(p) == h2 for p in itertools.permutations(range(h1.n)))


def brute_contains(host, pattern):
    for image in itertools.permutations(range(host.n), pattern.n):
        if all(host.has_edge(sorted(image[v] for v in e)) for e in pattern.edges):
            return True
    return False


def test_named_graphs_edge_counts():
    counts = {"K4_3": 4, "K4_3minus": 3, "F32": 4, "J4": 6, "F5": 3, "C5": 5, "C5minus": 4,
              "H1": 4, "H2": 3, "H3": 3, "H4": 6, "H5": 12}
    assert {k: named(k).num_edges for k in counts} == counts


def test_json_roundtrip_is_one_indexed():
    g = named("F5")
    data = g.to_json()
    assert data == {"n": 5, "edges": [[1, 2, 3], [1, 2, 4], [3, 4, 5]]}
    assert ThreeGraph.from_json(data) == g


def test_shadow_and_link():
    assert hg.shadow_graph(named("C5")).is_complete
    assert not hg.shadow_graph(named("F5")).is_complete
    assert hg.link_graph(named("H4"), 4).label_edges() == ["14", "23"]
    with pytest.raises(ValueError):
        hg.link_graph(named("F5"), 7)


def test_dense_orderings():
    for name in hg.TABLE_GRAPHS:
        order = hg.is_dense(named(name))
        assert order is not None and hg.is_dense_ordering(named(name), order)
    # F32 cannot start with 1, 2, 3: the lexicographically least ordering is 1, 4, 5, 2, 3
    assert hg.is_dense(named("F32")) == (0, 3, 4, 1, 2)
    assert not hg.is_dense_ordering(named("F32"), (0, 1, 2, 3, 4))
    assert hg.is_dense(ThreeGraph(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4)])) == (0, 1, 2, 3, 4)
    # a loose path: vertex 4 meets the first triple in one vertex only
    assert hg.is_dense(ThreeGraph(5, [(0, 1, 2), (2, 3, 4)])) is None
    assert hg.is_dense(ThreeGraph(4, [(0, 1, 2)])) is None


def test_cancellative_examples():
    assert not hg.is_cancellative(named("F5"))
    assert not hg.is_cancellative(named("K4_3minus"))
    # 123 and 234 differ in {1, 4}, which lies in 145
    assert not hg.is_cancellative(named("C5"))
    assert hg.is_cancellative(ThreeGraph(6, itertools.product((0, 1), (2, 3), (4, 5))))


@pytest.mark.parametrize("n,count", [(3, 2), (4, 5), (5, 34)])
def test_enumerate_class_counts(n, count):
    # number of 3-graphs on n unlabeled vertices
    assert len(hg.enumerate_classes(n)) == count


def test_enumerate_six_vertices():
    assert len(hg.enumerate_classes(6)) == 2136


def test_enumerate_rejects_large_n():
    with pytest.raises(ValueError):
        hg.enumerate_classes(7)


def random_graph(rng, n, p=0.4):
    return ThreeGraph(n, [t for t in itertools.combinations(range(n), 3) if rng.random() < p])


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(3, 6))
def test_canonical_form_invariant(seed, n):
    rng = random.Random(seed)
    g = random_graph(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert hg.canonical_form(g) == hg.canonical_form(h)
    assert hg.is_isomorphic(g, h) is not None


def test_isomorphism_against_brute_force():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(4, 6)
        g1, g2 = random_graph(rng, n, 0.3), random_graph(rng, n, 0.3)
        want = brute_isomorphic(g1, g2)
        perm = hg.is_isomorphic(g1, g2)
        assert (perm is not None) == want
        if perm is not None:
            assert g1.relabel(perm) == g2
        assert (hg.canonical_form(g1) == hg.canonical_form(g2)) == want


def test_containment_against_brute_force():
    rng = random.Random(11)
    patterns = [named(x) for x in ("K4_3", "K4_3minus", "F32", "J4", "F5", "C5")]
    for _ in range(100):
        host = random_graph(rng, rng.randint(4, 6), 0.45)
        for p in patterns:
            assert hg.contains_subgraph(host, p) == brute_contains(host, p)


def test_cancellative_equivalence_on_all_small_graphs():
    fam = [named("F5"), named("K4_3minus")]
    for n in (4, 5):
        for g in hg.enumerate_classes(n):
            assert hg.is_cancellative(g) == hg.is_family_free(g, fam)


def test_five_vertex_k4minus_free_classes():
    k4m = named("K4_3minus")
    classes = hg.enumerate_classes(5, lambda g: g.num_edges >= 3 and not hg.contains_subgraph(g, k4m))
    assert sorted(hg.identify(g) for g in classes) == sorted(["F5", "F32", "C5", "C5minus", "H1", "H2", "H3"])


def test_h4_inside_h5():
    assert hg.contains_subgraph(named("H5"), named("H4"))
    assert not hg.contains_subgraph(named("C5"), named("F32"))


def test_identify():
    assert hg.identify(named("C5").relabel([2, 4, 1, 0, 3])) == "C5"
    assert hg.identify(ThreeGraph(5, [(0, 1, 2)])) is None
