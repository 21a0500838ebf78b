import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramsey3.constructions import clique, fano, star, steiner_f2
from ramsey3.core import (
    Hypergraph3,
    HypergraphError,
    automorphism_twins,
    canonical_key,
    find_embedding,
    from_mask,
    induced,
    is_isomorphic,
    parse_hypergraph,
    strip_isolated,
    to_mask,
)

from conftest import hypergraphs


def test_edges_are_normalized():
    g = Hypergraph3(4, [(2, 1, 0), (0, 1, 2), (3, 1, 0)])
    assert g.edges == ((0, 1, 2), (0, 1, 3))
    assert g.m == 2


@pytest.mark.parametrize("edges", [[(0, 1)], [(0, 0, 1)], [(0, 1, 5)], [(-1, 0, 1)]])
def test_bad_edges_rejected(edges):
    with pytest.raises(HypergraphError):
        Hypergraph3(4, edges)


def test_text_round_trip():
    g = fano()
    assert parse_hypergraph(g.to_text()) == g


def test_parse_comments_and_blank_lines():
    g = parse_hypergraph("# fano-ish\n3 1\n\n0 1 2  # the edge\n")
    assert g == Hypergraph3(3, [(0, 1, 2)])


@pytest.mark.parametrize(
    "text",
    ["", "3\n", "3 2\n0 1 2\n", "3 1\n0 1\n", "3 1\n0 1 x\n", "3 1\n0 1 3\n", "3 1\n0 1 1\n", "-1 0\n"],
)
def test_parse_errors(text):
    with pytest.raises(HypergraphError):
        parse_hypergraph(text)


def test_parse_duplicate_edges_warn():
    with pytest.warns(UserWarning):
        g = parse_hypergraph("3 2\n0 1 2\n2 1 0\n")
    assert g.m == 1


def test_induced_relabels_in_order():
    g = fano()
    sub = induced(g, [6, 0, 3, 1])
    # fano lines through {0,1,3,6}: 0 1 3 only
    assert sub == Hypergraph3(4, [(0, 1, 2)])


def test_strip_isolated():
    g = Hypergraph3(6, [(1, 3, 4)])
    core, kept = strip_isolated(g)
    assert kept == (1, 3, 4)
    assert core == Hypergraph3(3, [(0, 1, 2)])


def test_masks_round_trip():
    assert from_mask(to_mask([0, 3, 5])) == frozenset({0, 3, 5})


def test_canonical_key_distinguishes():
    assert canonical_key(clique(4)) != canonical_key(star(4))
    assert canonical_key(star(4)) == canonical_key(star(4).relabel([3, 2, 1, 0]))
    assert is_isomorphic(steiner_f2(3), fano())


def test_canonical_key_sees_isolated_vertices():
    assert canonical_key(Hypergraph3(3, [(0, 1, 2)])) != canonical_key(Hypergraph3(4, [(0, 1, 2)]))


@settings(max_examples=150, deadline=None)
@given(hypergraphs(max_n=9), st.randoms(use_true_random=False))
def test_canonical_key_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_key(g.relabel(perm)) == canonical_key(g)


def _brute_isomorphic(g: Hypergraph3, h: Hypergraph3) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return any(g.relabel(p).edge_set == h.edge_set for p in permutations(range(g.n)))


@settings(max_examples=150, deadline=None)
@given(hypergraphs(min_n=4, max_n=6, max_edges=6), hypergraphs(min_n=4, max_n=6, max_edges=6))
def test_canonical_key_matches_brute_force(g, h):
    assert (canonical_key(g) == canonical_key(h)) == _brute_isomorphic(g, h)


def test_automorphism_twins_of_star():
    # leaves of a star are pairwise twins, the center is not
    assert set(automorphism_twins(star(4))) == {(1, 2), (1, 3), (2, 3)}


def _brute_embedding(pattern, host_n, pred):
    for emb in permutations(range(host_n), pattern.n):
        if all(pred(*sorted(emb[v] for v in e)) for e in pattern.edges):
            return emb
    return None


@settings(max_examples=120, deadline=None)
@given(hypergraphs(min_n=3, max_n=4, max_edges=4), hypergraphs(min_n=4, max_n=6, max_edges=12))
def test_find_embedding_is_least(pattern, host):
    got = find_embedding(pattern, host.n, host.has_edge)
    assert got == _brute_embedding(pattern, host.n, host.has_edge)


def test_find_embedding_fixed_pin():
    host = clique(6)
    emb = find_embedding(star(4), 6, host.has_edge, fixed={0: 5})
    assert emb == (5, 0, 1, 2)
    assert find_embedding(star(4), 6, lambda *t: False, fixed={0: 5}) is None


def test_find_embedding_deterministic():
    rng = random.Random(3)
    host = Hypergraph3(9, [t for t in combinations(range(9), 3) if rng.random() < 0.5])
    runs = {find_embedding(fano(), 9, host.has_edge) for _ in range(3)}
    assert len(runs) == 1
