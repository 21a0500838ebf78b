"""Structural predicates: tripartiteness, exact transversals, collapsible sets,
collapsing, decompositions and forward-colorability.

Every search returns a witness; the ``verify_*`` functions re-check a witness
directly against the definitions using plain set arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .core import (
    BudgetExceeded,
    CapExceeded,
    Hypergraph3,
    HypergraphError,
    bits,
    from_mask,
    induced,
    set_order,
    to_mask,
)

TRIPARTITE_CAP = 24
TRANSVERSAL_CAP = 24
COLLAPSIBLE_CAP = 24
FORWARD_CAP = 12
MAX_COLLAPSIBLE_SETS = 2_000_000


def _check_cap(g: Hypergraph3, cap: Optional[int], what: str) -> None:
    if cap is not None and g.n > cap:
        raise CapExceeded(f"{what}: {g.n} vertices exceeds cap {cap} (raise max_n to override)")


@dataclass(frozen=True)
class Partition3:
    """Three disjoint (possibly empty) parts covering V."""

    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def to_json(self) -> list[list[int]]:
        return [sorted(p) for p in self.parts]


@dataclass(frozen=True)
class OrderedPartition:
    blocks: tuple[frozenset[int], ...]

    @classmethod
    def from_levels(cls, levels: Sequence[int]) -> "OrderedPartition":
        t = max(levels) + 1 if levels else 0
        blocks = [set() for _ in range(t)]
        for v, l in enumerate(levels):
            blocks[l].add(v)
        return cls(tuple(frozenset(b) for b in blocks if b))

    def to_json(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


@dataclass(frozen=True)
class CollapseResult:
    U: frozenset[int]
    H: Hypergraph3
    F: Hypergraph3
    # H's vertex i corresponds to G's vertex h_labels[i]; the last one is v*.
    h_labels: tuple[int, ...]


# --------------------------------------------------------------------------
# tripartite


def is_tripartite(g: Hypergraph3, max_n: Optional[int] = TRIPARTITE_CAP) -> Optional[Partition3]:
    """A partition into three parts with every edge meeting each part once, or None.

    Constraint search over part domains with forward propagation; exhaustive.
    """
    _check_cap(g, max_n, "is_tripartite")
    n = g.n
    if g.m == 0:
        return Partition3((frozenset(range(n)), frozenset(), frozenset()))
    incident: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for e in g.edges:
        for v in e:
            incident[v].append(e)

    def propagate(dom: list[int], queue: list[int]) -> bool:
        while queue:
            v = queue.pop()
            p = dom[v]  # a single bit
            for e in incident[v]:
                for u in e:
                    if u == v:
                        continue
                    if dom[u] & p:
                        dom[u] &= ~p
                        if dom[u] == 0:
                            return False
                        if dom[u] & (dom[u] - 1) == 0:
                            queue.append(u)
        return True

    def solve(dom: list[int], used: int) -> Optional[list[int]]:
        # used: number of part labels opened so far (labels are symmetric)
        best_v, best_size = -1, 4
        for v in range(n):
            d = dom[v]
            if d & (d - 1):
                s = bin(d).count("1")
                if s < best_size:
                    best_v, best_size = v, s
        if best_v < 0:
            return dom
        for part in range(min(3, used + 1)):
            bit = 1 << part
            if not dom[best_v] & bit:
                continue
            trial = dom[:]
            trial[best_v] = bit
            if propagate(trial, [best_v]):
                res = solve(trial, max(used, part + 1))
                if res is not None:
                    return res
        return None

    dom = [0b111] * n
    for v in range(n):
        if (g.isolated_mask >> v) & 1:
            dom[v] = 0b001
    res = solve(dom, 0)
    if res is None:
        return None
    parts = [set(), set(), set()]
    for v, d in enumerate(res):
        parts[d.bit_length() - 1].add(v)
    return Partition3(tuple(frozenset(p) for p in parts))


def verify_partition3(g: Hypergraph3, parts: Sequence[Iterable[int]]) -> bool:
    ps = [set(p) for p in parts]
    if len(ps) != 3 or any(ps[i] & ps[j] for i in range(3) for j in range(i + 1, 3)):
        return False
    if set().union(*ps) != set(range(g.n)):
        return False
    return all(all(len(set(e) & p) == 1 for p in ps) for e in g.edges)


# --------------------------------------------------------------------------
# exact transversal


def _transversal_feasible(g: Hypergraph3, forced_in: int, forced_out: int, size: Optional[int]) -> bool:
    """Is there W with forced_in ⊆ W, W ∩ forced_out = ∅, |e ∩ W| = 1 for all e,
    and |W| = size (any size when ``size`` is None)?"""
    masks = g.edge_masks
    free_iso = g.isolated_mask & ~forced_in & ~forced_out

    def propagate(win: int, wout: int) -> Optional[tuple[int, int]]:
        changed = True
        while changed:
            changed = False
            if win & wout:
                return None
            for em in masks:
                k_in = (em & win).bit_count()
                if k_in > 1:
                    return None
                rest = em & ~win & ~wout
                if k_in == 1:
                    if rest:
                        wout |= rest
                        changed = True
                else:
                    k_rest = rest.bit_count()
                    if k_rest == 0:
                        return None
                    if k_rest == 1:
                        win |= rest
                        changed = True
        return win, wout

    def rec(win: int, wout: int) -> bool:
        st = propagate(win, wout)
        if st is None:
            return False
        win, wout = st
        k = win.bit_count()
        if size is not None and k > size:
            return False
        for em in masks:
            if not em & win:
                for v in bits(em & ~wout):
                    if rec(win | (1 << v), wout):
                        return True
                return False
        # every edge satisfied; remaining free vertices are isolated
        if size is None:
            return True
        return k <= size <= k + (free_iso & ~win & ~wout).bit_count()

    return rec(forced_in, forced_out)


def has_exact_transversal(g: Hypergraph3, max_n: Optional[int] = TRANSVERSAL_CAP) -> bool:
    _check_cap(g, max_n, "exact_transversal")
    return _transversal_feasible(g, 0, 0, None)


def exact_transversal(g: Hypergraph3, max_n: Optional[int] = TRANSVERSAL_CAP) -> Optional[frozenset[int]]:
    """The least W (by size, then lexicographically) meeting every edge exactly once."""
    _check_cap(g, max_n, "exact_transversal")
    size = next((k for k in range(g.n + 1) if _transversal_feasible(g, 0, 0, k)), None)
    if size is None:
        return None
    chosen: list[int] = []
    excluded = 0
    start = 0
    while len(chosen) < size:
        for v in range(start, g.n):
            win = to_mask(chosen) | (1 << v)
            if _transversal_feasible(g, win, excluded, size):
                chosen.append(v)
                start = v + 1
                break
            excluded |= 1 << v
        else:  # pragma: no cover - feasibility guarantees a choice
            raise AssertionError("transversal greedy failed")
    return frozenset(chosen)


def verify_transversal(g: Hypergraph3, w: Iterable[int]) -> bool:
    ws = set(w)
    if not ws <= set(range(g.n)):
        return False
    return all(len(set(e) & ws) == 1 for e in g.edges)


# --------------------------------------------------------------------------
# collapsible sets


def closure(g: Hypergraph3, mask: int) -> int:
    """Smallest superset of ``mask`` that no edge meets in exactly two vertices."""
    thirds = g.thirds
    frontier = mask
    while frontier:
        add = 0
        for v in bits(frontier):
            row = thirds[v]
            for u in bits(mask):
                add |= row[u]
        frontier = add & ~mask
        mask |= frontier
    return mask


def is_collapsible_mask(g: Hypergraph3, mask: int) -> bool:
    k = mask.bit_count()
    if k < 2 or k >= g.n:
        return False
    return all((em & mask).bit_count() != 2 for em in g.edge_masks)


def collapsible_masks(
    g: Hypergraph3, max_n: Optional[int] = COLLAPSIBLE_CAP, max_sets: int = MAX_COLLAPSIBLE_SETS
) -> list[int]:
    """All collapsible sets as bitmasks, in (size, lexicographic) order.

    The collapsible sets are the closed sets of size >= 2 other than V.  Each
    such set is reachable from the closure of one of its pairs by repeatedly
    adding a vertex and closing again.
    """
    _check_cap(g, max_n, "collapsible_sets")
    full = g.full_mask
    seen: set[int] = set()
    stack: list[int] = []
    for a in range(g.n):
        for b in range(a + 1, g.n):
            c = closure(g, (1 << a) | (1 << b))
            if c != full and c not in seen:
                seen.add(c)
                stack.append(c)
    while stack:
        cur = stack.pop()
        for v in bits(full & ~cur):
            c = closure(g, cur | (1 << v))
            if c != full and c not in seen:
                seen.add(c)
                if len(seen) > max_sets:
                    raise BudgetExceeded(f"more than {max_sets} collapsible sets", len(seen))
                stack.append(c)
    return sorted(seen, key=lambda m: set_order(bits(m)))


def collapsible_sets(g: Hypergraph3, max_n: Optional[int] = COLLAPSIBLE_CAP) -> list[frozenset[int]]:
    if g.n < 3:
        return []
    return [from_mask(m) for m in collapsible_masks(g, max_n)]


def is_collapsible(g: Hypergraph3, u: Iterable[int]) -> bool:
    us = set(u)
    if not 2 <= len(us) < g.n or not us <= set(range(g.n)):
        return False
    return all(len(set(e) & us) != 2 for e in g.edges)


def collapse(g: Hypergraph3, u: Iterable[int]) -> CollapseResult:
    """Collapse U to a new vertex v*, placed last; returns (H, F = G[U])."""
    us = frozenset(u)
    if not us <= set(range(g.n)):
        raise HypergraphError("collapse: U contains a vertex outside the graph")
    if len(us) < 2:
        raise HypergraphError("collapse: |U| must be at least 2")
    if len(us) == g.n:
        raise HypergraphError("collapse: U must be a proper subset of V")
    if not is_collapsible(g, us):
        raise HypergraphError(f"collapse: {sorted(us)} is not collapsible")
    rest = [v for v in range(g.n) if v not in us]
    star = len(rest)
    pos = {v: i for i, v in enumerate(rest)}
    for v in us:
        pos[v] = star
    edges = []
    for e in g.edges:
        k = sum(1 for v in e if v in us)
        if k == 0 or k == 1:
            edges.append(tuple(pos[v] for v in e))
    h = Hypergraph3(star + 1, edges)
    return CollapseResult(us, h, induced(g, us), tuple(rest) + (-1,))


# --------------------------------------------------------------------------
# decompositions


def _validate_partition(n: int, blocks: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    bs = [frozenset(b) for b in blocks]
    seen: set[int] = set()
    for b in bs:
        if not b:
            raise HypergraphError("partition has an empty block")
        if seen & b:
            raise HypergraphError("partition blocks overlap")
        seen |= b
    if seen != set(range(n)):
        raise HypergraphError("blocks do not cover the vertex set")
    return bs


def decompose(
    g: Hypergraph3, blocks: Sequence[Iterable[int]], require_first_block_big: bool = False
) -> Optional[tuple[Hypergraph3, list[Hypergraph3]]]:
    """Quotient ``H`` on ``[t]`` and block graphs ``F_i = G[V_i]``, or None if some
    edge meets a block in exactly two vertices.

    The strict mode additionally asks ``|V_1| >= 2``; the relaxed mode accepts
    any block sizes with ``t >= 2``.
    """
    bs = _validate_partition(g.n, blocks)
    if len(bs) < 2:
        raise HypergraphError("decomposition needs at least two blocks")
    if require_first_block_big and len(bs[0]) < 2:
        raise HypergraphError("strict decomposition needs |V_1| >= 2")
    where = {}
    for i, b in enumerate(bs):
        for v in b:
            where[v] = i
    qedges = []
    for e in g.edges:
        idx = [where[v] for v in e]
        if len(set(idx)) == 2:
            return None
        if len(set(idx)) == 3:
            qedges.append(idx)
    return Hypergraph3(len(bs), qedges), [induced(g, b) for b in bs]


def decomposition_partitions(g: Hypergraph3, budget: Optional[list[int]] = None) -> Iterator[list[int]]:
    """Yield every partition of V into t >= 2 blocks that no edge meets in
    exactly two vertices, as restricted-growth block-index vectors."""
    n = g.n
    assign = [-1] * n
    incident: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in g.edges:
        incident[c].append((a, b))

    def rec(v: int, t: int) -> Iterator[list[int]]:
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("decomposition enumeration budget exhausted")
        if v == n:
            if t >= 2:
                yield assign[:]
            return
        for blk in range(t + 1):
            assign[v] = blk
            if all(
                len({assign[a], assign[b], blk}) != 2 for a, b in incident[v]
            ):
                yield from rec(v + 1, max(t, blk + 1))
        assign[v] = -1

    yield from rec(0, 0)


# --------------------------------------------------------------------------
# forward-colorability


def forward_colorable(g: Hypergraph3, max_n: Optional[int] = FORWARD_CAP) -> Optional[OrderedPartition]:
    """An ordered partition in which every edge has one vertex in some block and
    the other two together in a later block, or None.

    Among all witnesses the one with the fewest blocks is returned, and among
    those the lexicographically least block-index vector.
    """
    _check_cap(g, max_n, "forward_colorable")
    n = g.n
    if g.m == 0:
        return OrderedPartition((frozenset(range(n)),)) if n else OrderedPartition(())
    for t in range(2, n + 1):
        levels = _forward_levels(g, t)
        if levels is not None:
            # t is minimal, so every level is used
            return OrderedPartition.from_levels(levels)
    return None


def _forward_levels(g: Hypergraph3, t: int) -> Optional[list[int]]:
    """Lexicographically least level vector in [0, t) satisfying every edge."""
    n = g.n

    def fixed(d: int) -> bool:
        return d & (d - 1) == 0

    def narrow(dom: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            for a, b, c in g.edges:
                for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                    dx, dy = dom[x], dom[y]
                    if not (fixed(dx) and fixed(dy)):
                        continue
                    lx, ly = dx.bit_length() - 1, dy.bit_length() - 1
                    # equal pair: the third is the lone lower vertex;
                    # unequal pair: the third joins the higher one
                    allowed = (1 << lx) - 1 if lx == ly else 1 << max(lx, ly)
                    nd = dom[z] & allowed
                    if nd == 0:
                        return False
                    if nd != dom[z]:
                        dom[z] = nd
                        changed = True
        return True

    def rec(dom: list[int], v: int) -> Optional[list[int]]:
        if v == n:
            return [d.bit_length() - 1 for d in dom]
        for lvl in bits(dom[v]):
            trial = dom[:]
            trial[v] = 1 << lvl
            if narrow(trial):
                res = rec(trial, v + 1)
                if res is not None:
                    return res
        return None

    dom = [(1 << t) - 1] * n
    for v in range(n):
        if (g.isolated_mask >> v) & 1:
            dom[v] = 1
    return rec(dom, 0)


def verify_forward_coloring(g: Hypergraph3, blocks: Sequence[Iterable[int]]) -> bool:
    bs = [set(b) for b in blocks]
    if any(not b for b in bs):
        return False
    allv: set[int] = set()
    for b in bs:
        if allv & b:
            return False
        allv |= b
    if allv != set(range(g.n)):
        return False
    for e in g.edges:
        es = set(e)
        sizes = [len(es & b) for b in bs]
        if not any(sizes[i] == 1 and sizes[j] == 2 for i in range(len(bs)) for j in range(i + 1, len(bs))):
            return False
    return True
