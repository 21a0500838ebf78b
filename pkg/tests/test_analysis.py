from itertools import combinations, product

import pytest
from hypothesis import given, settings

from ramsey3.analysis import (
    closure,
    collapse,
    collapsible_sets,
    decompose,
    decomposition_partitions,
    exact_transversal,
    forward_colorable,
    is_collapsible,
    is_tripartite,
    verify_forward_coloring,
    verify_partition3,
    verify_transversal,
)
from ramsey3.constructions import clique, fano, fig2, star, steiner_f2
from ramsey3.core import Hypergraph3, HypergraphError, is_isomorphic

from conftest import hypergraphs
from oracles import set_partitions


def brute_tripartite(g):
    return any(
        all(len({c[a], c[b], c[d]}) == 3 for a, b, d in g.edges) for c in product(range(3), repeat=g.n)
    )


def brute_transversal(g):
    return any(
        all(sum(w[v] for v in e) == 1 for e in g.edges) for w in product((0, 1), repeat=g.n)
    )


def brute_collapsible(g):
    out = []
    for k in range(2, g.n):
        for u in combinations(range(g.n), k):
            s = set(u)
            if all(len(s & set(e)) != 2 for e in g.edges):
                out.append(frozenset(u))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def brute_forward(g):
    # an ordered partition is a level function; levels may be assumed onto 0..t-1
    for lv in product(range(g.n), repeat=g.n):
        ok = True
        for e in g.edges:
            ls = sorted(lv[v] for v in e)
            if not (ls[0] < ls[1] == ls[2]):
                ok = False
                break
        if ok:
            return True
    return False


def test_star_facts():
    assert is_tripartite(star(4)) is None
    assert exact_transversal(star(4)) == frozenset({0})


def test_fano_facts():
    assert is_tripartite(fano()) is None
    assert exact_transversal(fano()) is None
    assert all(frozenset(e) in collapsible_sets(fano()) for e in fano().edges)


def test_clique_facts():
    assert exact_transversal(clique(4)) is None
    assert collapsible_sets(clique(4)) == []


def test_fig2_collapse():
    assert collapsible_sets(fig2()) == [frozenset({0, 1})]
    res = collapse(fig2(), [0, 1])
    assert is_isomorphic(res.H, clique(4))
    assert res.F == Hypergraph3(2)


def test_fano_edge_collapse_is_star5():
    for e in fano().edges:
        assert is_isomorphic(collapse(fano(), e).H, star(5))


def test_collapse_rejects_non_collapsible():
    with pytest.raises(HypergraphError):
        collapse(clique(4), [0, 1])


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=7, max_edges=10))
def test_tripartite_matches_brute_force(g):
    part = is_tripartite(g)
    assert (part is not None) == brute_tripartite(g)
    if part is not None:
        assert verify_partition3(g, part.to_json())


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=8, max_edges=12))
def test_transversal_matches_brute_force(g):
    w = exact_transversal(g)
    assert (w is not None) == brute_transversal(g)
    if w is not None:
        assert verify_transversal(g, w)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=8, max_edges=12))
def test_collapsible_sets_match_brute_force(g):
    got = sorted(collapsible_sets(g), key=lambda s: (len(s), sorted(s)))
    assert got == brute_collapsible(g)
    for u in got:
        assert is_collapsible(g, u)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=8, max_edges=12))
def test_closure_is_collapsible_superset(g):
    for v in range(g.n):
        for w in range(v + 1, g.n):
            c = closure(g, (1 << v) | (1 << w))
            assert c & ((1 << v) | (1 << w)) == (1 << v) | (1 << w)
            members = frozenset(i for i in range(g.n) if c >> i & 1)
            assert all(len(members & set(e)) != 2 for e in g.edges)


@settings(max_examples=150, deadline=None)
@given(hypergraphs(max_n=6, max_edges=8))
def test_forward_matches_brute_force(g):
    part = forward_colorable(g)
    assert (part is not None) == brute_forward(g)
    if part is not None:
        assert verify_forward_coloring(g, part.to_json())


@settings(max_examples=100, deadline=None)
@given(hypergraphs(max_n=7, max_edges=8))
def test_collapse_shape(g):
    for u in collapsible_sets(g):
        res = collapse(g, u)
        assert res.H.n == g.n - len(u) + 1
        assert res.F.n == len(u)
        assert res.F.m + res.H.m <= g.m


def test_decompose_quotient_and_blocks():
    g = fano()
    h, fs = decompose(g, [[0, 1, 3], [2], [4], [5], [6]])
    assert h.n == 5 and [f.n for f in fs] == [3, 1, 1, 1, 1]
    assert decompose(g, [[0, 1], [2, 3, 4, 5, 6]]) is None


def test_decompose_partition_errors():
    with pytest.raises(HypergraphError):
        decompose(fano(), [list(range(7))])
    with pytest.raises(HypergraphError):
        decompose(fano(), [[0, 1], [1, 2, 3, 4, 5, 6]])
    with pytest.raises(HypergraphError):
        decompose(fano(), [[0], list(range(1, 7))], require_first_block_big=True)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_n=6, max_edges=8))
def test_decomposition_partitions_are_exactly_the_valid_ones(g):
    got = [tuple(a) for a in decomposition_partitions(g)]
    want = []
    for a in set_partitions(g.n):
        if max(a, default=0) >= 1:
            blocks = [[v for v in range(g.n) if a[v] == b] for b in range(max(a) + 1)]
            if decompose(g, blocks) is not None:
                want.append(a)
    assert sorted(got) == sorted(want)


def test_steiner_highest_bit_forward():
    from ramsey3.constructions import highest_bit_partition

    for m in (2, 3, 4):
        assert verify_forward_coloring(steiner_f2(m), highest_bit_partition(m).to_json())


def test_verify_forward_rejects_bad_order():
    g = star(4)
    assert verify_forward_coloring(g, [[0], [1, 2, 3]])
    assert not verify_forward_coloring(g, [[1, 2, 3], [0]])
