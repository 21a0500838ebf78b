"""Exact bound arithmetic and brute-force arrowing oracles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import log2
from typing import Optional

from .colorings import ColoringOracle, find_mono_copy
from .core import BudgetExceeded, Hypergraph3, find_embedding

MAX_BITS = 10**8
DEFAULT_ARROWS_BUDGET = 10**7


def tower(k: int, x: int, max_bits: int = MAX_BITS) -> int:
    """tw_1(x) = x, tw_k(x) = 2^tw_{k-1}(x)."""
    if k < 1 or x < 0:
        raise ValueError("tower needs k >= 1 and x >= 0")
    v = x
    for _ in range(k - 1):
        if v > max_bits:
            raise BudgetExceeded(f"2^{v} exceeds the {max_bits}-bit budget", v)
        v = 1 << v
    return v


def upper_bound_exponent(q: int, h: int, ell: int, t: int) -> int:
    return q ** (ell - 1) * h ** (2 * ell) * t


def upper_bound_value(q: int, h: int, ell: int, t: int, max_bits: int = MAX_BITS) -> int:
    """(qh)^(q^(ell-1) * h^(2 ell) * t), exactly."""
    if q < 1 or h < 3 or ell < 1 or t < 1:
        raise ValueError("need q >= 1, h >= 3, ell >= 1, t >= 1")
    e = upper_bound_exponent(q, h, ell, t)
    if e * log2(q * h) > max_bits:
        raise BudgetExceeded(f"(qh)^{e} exceeds the {max_bits}-bit budget", e)
    return (q * h) ** e


@dataclass
class ArrowsResult:
    arrows: bool
    coloring: Optional[dict[tuple[int, int, int], int]]
    nodes_explored: int

    def to_json(self) -> dict:
        out = {"arrows": self.arrows, "nodes_explored": self.nodes_explored, "coloring": None}
        if self.coloring is not None:
            out["coloring"] = [[*t, c] for t, c in sorted(self.coloring.items())]
        return out


def explicit_oracle(n: int, q: int, coloring: dict[tuple[int, int, int], int]) -> ColoringOracle:
    return ColoringOracle(f"explicit:N={n}", n, q, lambda x, y, z: coloring[(x, y, z)])


def arrows(n: int, pattern: Hypergraph3, q: int, budget: int = DEFAULT_ARROWS_BUDGET) -> ArrowsResult:
    """Does every q-coloring of the triples of [0,n) contain a monochromatic copy?

    Triples are colored in lexicographic order; the first triple gets color 0
    and a new color is only ever the next unused one.  After each assignment
    the search looks for a copy in that color through the new triple, using
    only triples colored so far, and backtracks on success.
    """
    if q < 1:
        raise ValueError("need q >= 1")
    triples = list(combinations(range(n), 3))
    if pattern.n > n:
        return ArrowsResult(False, {t: 0 for t in triples}, 0)
    if pattern.m == 0:
        return ArrowsResult(True, None, 0)
    pos = {t: i for i, t in enumerate(triples)}
    color = [-1] * len(triples)
    nodes = [0]
    pins = [
        {a: img[0], b: img[1], c: img[2]}
        for a, b, c in pattern.edges
        for img in permutations(range(3))
    ]

    def closes_copy(i: int) -> bool:
        t, c = triples[i], color[i]

        def pred(x: int, y: int, z: int) -> bool:
            j = pos[(x, y, z)]
            return j <= i and color[j] == c

        for pin in pins:
            fixed = {v: t[k] for v, k in pin.items()}
            if find_embedding(pattern, n, pred, fixed) is not None:
                return True
        return False

    def rec(i: int, used: int) -> bool:
        """True if some completion of the partial coloring avoids copies."""
        if i == len(triples):
            return True
        for c in range(min(q, used + 1)):
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"arrows budget of {budget} nodes exhausted", nodes[0])
            color[i] = c
            if not closes_copy(i) and rec(i + 1, max(used, c + 1)):
                return True
        color[i] = -1
        return False

    if rec(0, 0):
        return ArrowsResult(False, dict(zip(triples, color)), nodes[0])
    return ArrowsResult(True, None, nodes[0])


def ramsey_exact(pattern: Hypergraph3, q: int, n_cap: int, budget: int = DEFAULT_ARROWS_BUDGET) -> Optional[int]:
    """Least N <= n_cap with every q-coloring of K_N containing a monochromatic copy."""
    for n in range(max(pattern.n, 0), n_cap + 1):
        if arrows(n, pattern, q, budget).arrows:
            return n
    return None


def verify_lower_bound(oracle: ColoringOracle, pattern: Hypergraph3) -> bool:
    """No monochromatic copy anywhere in the oracle's domain, which certifies
    r(pattern; oracle.color_count) > oracle.domain_size."""
    return find_mono_copy(oracle, pattern, range(oracle.domain_size)) is None
