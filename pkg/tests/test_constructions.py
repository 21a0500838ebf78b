from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest

from ramsey3.analysis import verify_forward_coloring
from ramsey3.constructions import (
    BLOWUP_LABELS,
    EdgeDistribution,
    blowup_example,
    clique,
    edge_distribution_check,
    fano,
    fig2,
    g_chain,
    generate,
    highest_bit_partition,
    parse_generator,
    random_g3,
    star,
    steiner_f2,
)
from ramsey3.core import canonical_key, is_isomorphic


def is_steiner_triple_system(g) -> bool:
    pairs = Counter(p for e in g.edges for p in combinations(e, 2))
    return all(pairs[p] == 1 for p in combinations(range(g.n), 2))


def test_small_generators():
    assert star(4).edges == ((0, 1, 2), (0, 1, 3), (0, 2, 3))
    assert clique(5).m == 10
    assert fano().m == 7 and is_steiner_triple_system(fano())
    assert fig2().edges == ((0, 2, 3), (0, 2, 4), (1, 2, 3), (1, 3, 4), (2, 3, 4))


def test_g_chain_sizes():
    assert g_chain(1) == star(4)
    assert [g_chain(i).n for i in (1, 2, 3)] == [4, 9, 19]
    assert [g_chain(i).m for i in (1, 2, 3)] == [3, 22, 125]


def test_blowup_example_shape():
    g = blowup_example()
    assert g.n == 7 and g.m == 12
    assert BLOWUP_LABELS[0] == "u"
    assert g.degrees[0] == 9


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_steiner_f2(m):
    g = steiner_f2(m)
    assert g.n == 2**m - 1
    assert is_steiner_triple_system(g)
    assert all(((a + 1) ^ (b + 1) ^ (c + 1)) == 0 for a, b, c in g.edges)
    assert verify_forward_coloring(g, highest_bit_partition(m).to_json())


def test_steiner_f2_3_is_fano():
    assert canonical_key(steiner_f2(3)) == canonical_key(fano())
    assert steiner_f2(2).m == 1


def test_random_g3_extremes_and_determinism():
    assert random_g3(6, 0, 1).m == 0
    assert random_g3(6, 1, 1) == clique(6)
    assert random_g3(10, "1/3", 4) == random_g3(10, Fraction(1, 3), 4)
    with pytest.raises(ValueError):
        random_g3(5, 2, 0)


def test_random_g3_regression():
    # pinned after first computation; guards the sampler's draw order
    assert random_g3(14, Fraction(20, 196), 1).m == 43


def test_generator_specs():
    assert generate(parse_generator("star:h=5")) == star(5)
    assert generate(parse_generator("random:n=8,p=1/4,seed=3")) == random_g3(8, Fraction(1, 4), 3)
    assert is_isomorphic(generate(parse_generator("steiner_f2:m=3")), fano())
    with pytest.raises(ValueError):
        generate(parse_generator("star"))
    with pytest.raises(ValueError):
        generate(parse_generator("nosuch"))
    with pytest.raises(ValueError):
        parse_generator("star:h")


def test_edge_distribution_clique():
    res = edge_distribution_check(clique(9), 3)
    assert res == EdgeDistribution(27, 280, True, ((0, 1, 2), (3, 4, 5), (6, 7, 8)))


def test_edge_distribution_sampled():
    res = edge_distribution_check(random_g3(30, Fraction(1, 2), 3), 3, trials=50)
    assert not res.exhaustive and res.trials == 50
    assert 0 <= res.minimum <= 27
    with pytest.raises(ValueError):
        edge_distribution_check(clique(5), 2)
