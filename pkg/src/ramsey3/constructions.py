"""Named hypergraph generators with fixed labelings, the random model and an
edge-distribution diagnostic."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Union

from .analysis import OrderedPartition
from .core import BudgetExceeded, Hypergraph3


def star(h: int) -> Hypergraph3:
    """All triples of [0,h) containing vertex 0."""
    if h < 3:
        raise ValueError("star needs h >= 3")
    return Hypergraph3(h, [(0, a, b) for a, b in combinations(range(1, h), 2)])


def clique(n: int) -> Hypergraph3:
    if n < 0:
        raise ValueError("clique needs n >= 0")
    return Hypergraph3(n, combinations(range(n), 3))


def fano() -> Hypergraph3:
    """Lines {i, i+1, i+3} mod 7."""
    return Hypergraph3(7, [(i, (i + 1) % 7, (i + 3) % 7) for i in range(7)])


FIG2_LABELS = "abcde"


def fig2() -> Hypergraph3:
    """Edges acd, bcd, ace, bde, cde with a..e mapped to 0..4."""
    words = ["acd", "bcd", "ace", "bde", "cde"]
    return Hypergraph3(5, [[FIG2_LABELS.index(ch) for ch in w] for w in words])


def g_chain(i: int) -> Hypergraph3:
    """G_1 = Star(4); G_{i+1} has vertex x = 0, a copy A of G_i on 1..h, a copy
    B on h+1..2h, and every triple {x, a, b} with a in A, b in B."""
    if i < 1:
        raise ValueError("g_chain needs i >= 1")
    g = star(4)
    for _ in range(i - 1):
        h = g.n
        edges = [tuple(v + 1 for v in e) for e in g.edges]
        edges += [tuple(v + 1 + h for v in e) for e in g.edges]
        edges += [(0, a, b) for a in range(1, h + 1) for b in range(h + 1, 2 * h + 1)]
        g = Hypergraph3(2 * h + 1, edges)
    return g


def steiner_f2(m: int) -> Hypergraph3:
    """Nonzero vectors of F_2^m (vertex v - 1 carries the vector with binary
    value v) with an edge for every triple summing to zero."""
    if m < 2:
        raise ValueError("steiner_f2 needs m >= 2")
    size = 1 << m
    edges = []
    for x in range(1, size):
        for y in range(x + 1, size):
            z = x ^ y
            if z > y:
                edges.append((x - 1, y - 1, z - 1))
    return Hypergraph3(size - 1, edges)


def highest_bit_partition(m: int) -> OrderedPartition:
    """Blocks of steiner_f2(m) by the position of the highest set bit,
    ascending.  In an edge x + y + z = 0 two vectors share the highest bit
    and the third has a strictly lower one."""
    blocks = [frozenset(v - 1 for v in range(1 << k, 1 << (k + 1))) for k in range(m)]
    return OrderedPartition(tuple(blocks))


BLOWUP_LABELS = ("u", "b1", "b2", "v", "a1", "a2", "a3")


def blowup_example() -> Hypergraph3:
    """Star(4) on u, b1, b2, v (center u) with v blown up into A = {v, a1, a2, a3}:
    the edge u b1 b2, the edges u b_k a for a in A, and the triples of A
    through v."""
    ix = {name: i for i, name in enumerate(BLOWUP_LABELS)}
    big_a = ["v", "a1", "a2", "a3"]
    words = [("u", "b1", "b2")]
    words += [("u", b, a) for b in ("b1", "b2") for a in big_a]
    words += [("v", a, c) for a, c in combinations(big_a[1:], 2)]
    return Hypergraph3(7, [[ix[w] for w in t] for t in words])


def random_g3(n: int, p: Union[Fraction, float, str], seed: int) -> Hypergraph3:
    """Each triple of [0,n), in lexicographic order, kept when the next draw
    of random.Random(seed) falls below p."""
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = random.Random(seed)
    return Hypergraph3(n, [t for t in combinations(range(n), 3) if rng.random() < p])


GENERATORS = ("star", "clique", "fano", "fig2", "g_chain", "steiner_f2", "blowup_example", "random")


@dataclass
class GeneratorSpec:
    name: str
    params: dict = field(default_factory=dict)


def generate(spec: GeneratorSpec) -> Hypergraph3:
    p = spec.params
    try:
        if spec.name == "star":
            return star(int(p["h"]))
        if spec.name == "clique":
            return clique(int(p["n"]))
        if spec.name == "fano":
            return fano()
        if spec.name == "fig2":
            return fig2()
        if spec.name == "g_chain":
            return g_chain(int(p["i"]))
        if spec.name == "steiner_f2":
            return steiner_f2(int(p["m"]))
        if spec.name == "blowup_example":
            return blowup_example()
        if spec.name == "random":
            return random_g3(int(p["n"]), Fraction(p["p"]), int(p.get("seed", 0)))
    except KeyError as exc:
        raise ValueError(f"generator {spec.name!r} needs parameter {exc.args[0]!r}") from None
    raise ValueError(f"unknown generator {spec.name!r}; expected one of {', '.join(GENERATORS)}")


def parse_generator(text: str) -> GeneratorSpec:
    """``name`` or ``name:key=value,...``, e.g. ``star:h=4`` or ``random:n=8,p=1/4,seed=3``."""
    name, _, rest = text.partition(":")
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad generator parameter {item!r}")
        params[key.strip()] = val.strip()
    return GeneratorSpec(name.strip(), params)


@dataclass
class EdgeDistribution:
    minimum: int
    trials: int
    exhaustive: bool
    argmin: Optional[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]


def _crossing(g: Hypergraph3, a: tuple[int, ...], b: tuple[int, ...], c: tuple[int, ...]) -> int:
    where = {}
    for k, part in enumerate((a, b, c)):
        for v in part:
            where[v] = k
    return sum(1 for e in g.edges if sorted(where.get(v, -1) for v in e) == [0, 1, 2])


def edge_distribution_check(
    g: Hypergraph3, s: int, trials: int = 1000, seed: int = 0, exhaustive_limit: int = 10**6
) -> EdgeDistribution:
    """Minimum number of edges with one vertex in each of three disjoint s-sets.

    Unordered triples of disjoint s-sets are enumerated exhaustively when there
    are at most ``exhaustive_limit`` of them; otherwise ``trials`` random
    triples are drawn.
    """
    n = g.n
    if s < 1 or 3 * s > n:
        raise ValueError("need 1 <= s and 3s <= n")
    count = comb(n, s) * comb(n - s, s) * comb(n - 2 * s, s) // 6
    best: Optional[int] = None
    arg = None
    if count <= exhaustive_limit:
        done = 0
        for a in combinations(range(n), s):
            rest = [v for v in range(n) if v not in a and v > a[0]]
            for b in combinations(rest, s):
                rest2 = [v for v in rest if v not in b and v > b[0]]
                for c in combinations(rest2, s):
                    done += 1
                    val = _crossing(g, a, b, c)
                    if best is None or val < best:
                        best, arg = val, (a, b, c)
        return EdgeDistribution(best if best is not None else 0, done, True, arg)
    if trials < 1:
        raise BudgetExceeded("exhaustive enumeration too large and no trials requested", count)
    rng = random.Random(seed)
    for _ in range(trials):
        pick = rng.sample(range(n), 3 * s)
        a, b, c = (tuple(sorted(pick[k * s:(k + 1) * s])) for k in range(3))
        val = _crossing(g, a, b, c)
        if best is None or val < best:
            best, arg = val, (a, b, c)
    return EdgeDistribution(best, trials, False, arg)
