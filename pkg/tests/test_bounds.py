import random
from itertools import combinations

import pytest

from ramsey3.bounds import arrows, explicit_oracle, ramsey_exact, tower, upper_bound_value, verify_lower_bound
from ramsey3.colorings import is_mono_copy, phi_oracle, rainbow_coloring
from ramsey3.constructions import clique, star
from ramsey3.core import BudgetExceeded, Hypergraph3, find_embedding

EDGE = Hypergraph3(3, [(0, 1, 2)])


def test_tower():
    assert tower(1, 7) == 7
    assert tower(3, 2) == 16
    assert tower(4, 2) == 2**16
    with pytest.raises(BudgetExceeded):
        tower(5, 3, max_bits=1000)
    with pytest.raises(ValueError):
        tower(0, 2)


def test_upper_bound_value():
    assert upper_bound_value(2, 4, 1, 8) == 2**384
    assert upper_bound_value(1, 3, 1, 1) == 3**9
    with pytest.raises(BudgetExceeded):
        upper_bound_value(10, 10, 5, 10, max_bits=10**4)
    with pytest.raises(ValueError):
        upper_bound_value(2, 2, 1, 1)


def test_upper_bound_random_cross_check():
    rng = random.Random(11)
    for _ in range(20):
        q, h, ell, t = rng.randint(1, 4), rng.randint(3, 5), rng.randint(1, 3), rng.randint(1, 3)
        e = 1
        for _ in range(ell - 1):
            e *= q
        for _ in range(2 * ell):
            e *= h
        e *= t
        assert upper_bound_value(q, h, ell, t) == pow(q * h, e)


def _avoids(n, pattern, coloring):
    for c in set(coloring.values()):
        if find_embedding(pattern, n, lambda x, y, z, c=c: coloring[(x, y, z)] == c) is not None:
            return False
    return set(coloring) == set(combinations(range(n), 3))


def test_arrows_small():
    assert arrows(3, EDGE, 2).arrows
    assert not arrows(2, EDGE, 2).arrows
    res = arrows(6, star(4), 2)
    assert not res.arrows and _avoids(6, star(4), res.coloring)
    assert arrows(7, star(4), 2).arrows


def test_arrows_json():
    d = arrows(4, star(4), 2).to_json()
    assert d["arrows"] is False and len(d["coloring"]) == 4
    assert arrows(3, EDGE, 1).to_json()["coloring"] is None


def test_ramsey_exact():
    for q in (1, 2, 3):
        assert ramsey_exact(EDGE, q, 5) == 3
    assert ramsey_exact(star(4), 1, 6) == 4
    # pinned after first computation
    assert ramsey_exact(star(4), 2, 7) == 7
    assert ramsey_exact(star(4), 2, 6) is None


def test_arrows_budget():
    with pytest.raises(BudgetExceeded):
        arrows(6, star(4), 2, budget=5)


def test_explicit_oracle_round_trip():
    res = arrows(5, star(4), 2)
    o = explicit_oracle(5, 2, res.coloring)
    assert verify_lower_bound(o, star(4))


def test_verify_lower_bound():
    assert verify_lower_bound(rainbow_coloring(6), Hypergraph3(4, [(0, 1, 2), (0, 1, 3)]))
    assert not verify_lower_bound(phi_oracle(4), star(4))
    assert not verify_lower_bound(explicit_oracle(4, 1, {t: 0 for t in combinations(range(4), 3)}), clique(4))
