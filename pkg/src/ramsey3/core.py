"""Hypergraph representation, text format, canonical labeling and embedding search.

Vertices are always ``0..n-1``; vertex sets are handled internally as int
bitmasks so that "how many vertices of this edge lie in U" is a popcount.
"""

from __future__ import annotations

import re
import struct
import warnings
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

Triple = tuple[int, int, int]


class HypergraphError(ValueError):
    """Malformed hypergraph input or an invalid vertex set."""


class CapExceeded(RuntimeError):
    """An exhaustive search was asked to run above its vertex cap."""


class BudgetExceeded(RuntimeError):
    """A search ran out of its node/work budget before deciding."""

    def __init__(self, message: str, explored: int = 0):
        super().__init__(message)
        self.explored = explored


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def set_order(s: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    """Sort key for vertex sets: by size, then lexicographically."""
    t = tuple(sorted(s))
    return len(t), t


@dataclass(frozen=True, eq=True)
class Hypergraph3:
    """A 3-uniform hypergraph on vertices ``0..n-1``.

    Edges are normalized on construction: each triple is sorted, duplicates are
    merged and the edge list is sorted.  Isolated vertices are allowed.
    """

    n: int
    edges: tuple[Triple, ...]

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 0:
            raise HypergraphError(f"vertex count must be a nonnegative integer, got {n!r}")
        norm = set()
        for e in edges:
            t = tuple(sorted(int(v) for v in e))
            if len(t) != 3:
                raise HypergraphError(f"edge {tuple(e)} is not a triple")
            if t[0] == t[1] or t[1] == t[2]:
                raise HypergraphError(f"edge {tuple(e)} repeats a vertex")
            if t[0] < 0 or t[2] >= n:
                raise HypergraphError(f"edge {tuple(e)} has a vertex outside [0, {n})")
            norm.add(t)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def __repr__(self) -> str:
        return f"Hypergraph3(n={self.n}, edges={list(self.edges)})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Triple]:
        return frozenset(self.edges)

    @cached_property
    def edge_masks(self) -> tuple[int, ...]:
        return tuple((1 << a) | (1 << b) | (1 << c) for a, b, c in self.edges)

    @cached_property
    def links(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each vertex, the pairs completing it to an edge."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for a, b, c in self.edges:
            out[a].append((b, c))
            out[b].append((a, c))
            out[c].append((a, b))
        return tuple(tuple(x) for x in out)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.links)

    @cached_property
    def thirds(self) -> tuple[tuple[int, ...], ...]:
        """``thirds[a][b]`` is the bitmask of vertices c with abc an edge."""
        t = [[0] * self.n for _ in range(self.n)]
        for a, b, c in self.edges:
            t[a][b] |= 1 << c
            t[b][a] |= 1 << c
            t[a][c] |= 1 << b
            t[c][a] |= 1 << b
            t[b][c] |= 1 << a
            t[c][b] |= 1 << a
        return tuple(tuple(r) for r in t)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def isolated_mask(self) -> int:
        used = 0
        for em in self.edge_masks:
            used |= em
        return self.full_mask & ~used

    def has_edge(self, a: int, b: int, c: int) -> bool:
        return tuple(sorted((a, b, c))) in self.edge_set

    def relabel(self, perm: Sequence[int], n: Optional[int] = None) -> "Hypergraph3":
        """Apply the vertex map ``v -> perm[v]``."""
        return Hypergraph3(self.n if n is None else n, ((perm[a], perm[b], perm[c]) for a, b, c in self.edges))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{a} {b} {c}" for a, b, c in self.edges)
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# text format


_COMMENT = re.compile(r"#.*$")


def parse_hypergraph(text: str) -> Hypergraph3:
    """Parse the line-oriented format: header ``n m`` then ``m`` lines ``a b c``.

    ``#`` starts a comment; blank lines are ignored.  Duplicate edges are merged
    and reported through :mod:`warnings`.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise HypergraphError("empty input: missing 'n m' header")

    def ints(lineno: int, toks: list[str]) -> list[int]:
        try:
            return [int(t) for t in toks]
        except ValueError:
            raise HypergraphError(f"line {lineno}: non-integer token in {' '.join(toks)!r}") from None

    lineno, header = rows[0]
    if len(header) != 2:
        raise HypergraphError(f"line {lineno}: header must be 'n m', got {' '.join(header)!r}")
    n, m = ints(lineno, header)
    if n < 0 or m < 0:
        raise HypergraphError(f"line {lineno}: negative header value")
    body = rows[1:]
    if len(body) != m:
        raise HypergraphError(f"header announces {m} edges but {len(body)} edge lines follow")
    triples = []
    for lineno, toks in body:
        if len(toks) != 3:
            raise HypergraphError(f"line {lineno}: expected 3 vertices, got {len(toks)}")
        a, b, c = ints(lineno, toks)
        for v in (a, b, c):
            if not 0 <= v < n:
                raise HypergraphError(f"line {lineno}: vertex {v} out of range [0, {n})")
        if len({a, b, c}) != 3:
            raise HypergraphError(f"line {lineno}: repeated vertex in {a} {b} {c}")
        triples.append((a, b, c))
    g = Hypergraph3(n, triples)
    dupes = len(triples) - g.m
    if dupes:
        warnings.warn(f"{dupes} duplicate edge(s) merged", stacklevel=2)
    return g


def read_hypergraph(path) -> Hypergraph3:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


# --------------------------------------------------------------------------
# subgraphs


def induced(g: Hypergraph3, vertices: Iterable[int]) -> Hypergraph3:
    """``G[S]`` relabeled to ``0..|S|-1`` keeping the order of S."""
    order = sorted(set(vertices))
    for v in order:
        if not 0 <= v < g.n:
            raise HypergraphError(f"vertex {v} not in graph on {g.n} vertices")
    pos = {v: i for i, v in enumerate(order)}
    return Hypergraph3(
        len(order),
        ((pos[a], pos[b], pos[c]) for a, b, c in g.edges if a in pos and b in pos and c in pos),
    )


def strip_isolated(g: Hypergraph3) -> tuple[Hypergraph3, tuple[int, ...]]:
    """Drop isolated vertices; returns the core and the kept original labels."""
    kept = tuple(v for v in range(g.n) if not (g.isolated_mask >> v) & 1)
    return induced(g, kept), kept


# --------------------------------------------------------------------------
# canonical labeling
#
# Individualization-refinement: colors are ordered cells, refined by the
# multiset of color pairs in each vertex's link until stable; non-discrete
# partitions branch on every vertex of the first smallest non-trivial cell.
# Leaves are compared by their relabeled edge list and the minimum wins.
# Automorphisms discovered at equal leaves prune children lying in one orbit
# of the pointwise stabilizer of the current path.


def _rank(sigs: list) -> list[int]:
    order = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(g: Hypergraph3, colors: list[int]) -> list[int]:
    ncells = len(set(colors))
    links = g.links
    while True:
        sigs = []
        for v in range(g.n):
            pairs = sorted(
                (colors[a], colors[b]) if colors[a] <= colors[b] else (colors[b], colors[a]) for a, b in links[v]
            )
            sigs.append((colors[v], tuple(pairs)))
        new = _rank(sigs)
        k = max(new) + 1 if new else 0
        if k == ncells:
            return new
        colors, ncells = new, k


class _Canonizer:
    def __init__(self, g: Hypergraph3):
        self.g = g
        self.best: Optional[tuple] = None
        self.best_lab: Optional[list[int]] = None
        self.first: Optional[tuple] = None
        self.first_lab: Optional[list[int]] = None
        self.autos: list[tuple[int, ...]] = []

    def encode(self, lab: list[int]) -> tuple:
        return tuple(sorted(tuple(sorted((lab[a], lab[b], lab[c]))) for a, b, c in self.g.edges))

    def leaf(self, lab: list[int]) -> None:
        enc = self.encode(lab)
        if self.first is None:
            self.first, self.first_lab = enc, lab
            self.best, self.best_lab = enc, lab
            return
        for ref, ref_lab in ((self.first, self.first_lab), (self.best, self.best_lab)):
            if enc == ref:
                inv = [0] * self.g.n
                for v, l in enumerate(ref_lab):
                    inv[l] = v
                gamma = tuple(inv[lab[v]] for v in range(self.g.n))
                if any(gamma[v] != v for v in range(self.g.n)):
                    self.autos.append(gamma)
                return
        if enc < self.best:
            self.best, self.best_lab = enc, lab

    def orbit_rep(self, path: list[int]) -> Callable[[int], int]:
        parent = list(range(self.g.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.autos:
            if all(gamma[p] == p for p in path):
                for v in range(self.g.n):
                    a, b = find(v), find(gamma[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def search(self, colors: list[int], path: list[int]) -> None:
        n = self.g.n
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        if len(sizes) == n:
            self.leaf(colors)
            return
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        cell = [v for v in range(n) if colors[v] == target]
        tried: list[int] = []
        for v in cell:
            if tried:
                find = self.orbit_rep(path)
                rv = find(v)
                if any(find(t) == rv for t in tried):
                    continue
            tried.append(v)
            ind = _rank([(colors[u], 0 if u == v else 1) for u in range(n)])
            self.search(_refine(self.g, ind), path + [v])


def canonical_labeling(g: Hypergraph3) -> tuple[int, ...]:
    """A relabeling ``v -> lab[v]`` whose image is the canonical form of ``g``."""
    if g.n == 0:
        return ()
    c = _Canonizer(g)
    c.search(_refine(g, [0] * g.n), [])
    return tuple(c.best_lab)


def canonical_form(g: Hypergraph3) -> Hypergraph3:
    return g.relabel(canonical_labeling(g))


CanonicalKey = bytes


def canonical_key(g: Hypergraph3) -> CanonicalKey:
    """Bytes equal for two hypergraphs iff they are isomorphic."""
    cf = canonical_form(g)
    flat = [v for e in cf.edges for v in e]
    return struct.pack(f">II{len(flat)}I", cf.n, cf.m, *flat)


def is_isomorphic(g: Hypergraph3, h: Hypergraph3) -> bool:
    return g.n == h.n and g.m == h.m and canonical_key(g) == canonical_key(h)


def automorphism_twins(g: Hypergraph3) -> list[tuple[int, int]]:
    """Pairs ``u < v`` for which swapping u and v is an automorphism."""
    out = []
    for u, v in combinations(range(g.n), 2):
        swap = list(range(g.n))
        swap[u], swap[v] = v, u
        if all(tuple(sorted((swap[a], swap[b], swap[c]))) in g.edge_set for a, b, c in g.edges):
            out.append((u, v))
    return out


# --------------------------------------------------------------------------
# embeddings

Embedding = tuple[int, ...]


def find_embedding(
    pattern: Hypergraph3,
    host_n: int,
    edge_pred: Callable[[int, int, int], bool],
    fixed: Optional[Mapping[int, int]] = None,
) -> Optional[Embedding]:
    """Lexicographically least injective map sending every pattern edge to a host
    triple ``(x, y, z)`` (ascending) with ``edge_pred(x, y, z)`` true.

    ``fixed`` pins some pattern vertices in advance.  Copies need not be induced.
    Returns ``emb`` with ``emb[v]`` the image of pattern vertex ``v``.
    """
    h = pattern.n
    if h > host_n:
        return None
    fixed = dict(fixed or {})
    back: list[list[tuple[int, int]]] = [[] for _ in range(h)]
    for a, b, c in pattern.edges:
        back[c].append((a, b))
    # Swapping twins u < v maps embeddings to embeddings, so the least one
    # sends u below v; only enforced when neither endpoint is pinned.
    lower: list[list[int]] = [[] for _ in range(h)]
    for u, v in automorphism_twins(pattern):
        if u not in fixed and v not in fixed:
            lower[v].append(u)
    img = [-1] * h
    used = set(fixed.values())
    if len(used) != len(fixed):
        return None

    def ok(d: int, x: int) -> bool:
        for u in lower[d]:
            if img[u] >= x:
                return False
        for a, b in back[d]:
            if not edge_pred(*sorted((img[a], img[b], x))):
                return False
        return True

    def rec(d: int) -> bool:
        if d == h:
            return True
        if d in fixed:
            x = fixed[d]
            img[d] = x
            if ok(d, x) and rec(d + 1):
                return True
            img[d] = -1
            return False
        for x in range(host_n):
            if x in used:
                continue
            img[d] = x
            if ok(d, x):
                used.add(x)
                if rec(d + 1):
                    return True
                used.discard(x)
            img[d] = -1
        return False

    return tuple(img) if rec(0) else None
