"""Lower-bound colorings of triples and the monochromatic-copy search/audit.

Colorings are exposed as ``ColoringOracle`` values: a domain [0, N), a color
count and a pure ``eval(x, y, z)`` on ascending triples.  Searches that need
speed materialize a window's color table as a W x W x W integer array (color
ids, -1 on triples with a repeated vertex) and run a chunked breadth-wise
frontier over it with numpy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Callable, Hashable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .core import BudgetExceeded, Embedding, Hypergraph3, automorphism_twins, canonical_key, find_embedding

# --------------------------------------------------------------------------
# bit toolkit


def bit(x: int, i: int) -> int:
    return (x >> i) & 1


def delta(x: int, y: int) -> int:
    """Highest bit position where x and y differ."""
    if x == y:
        raise ValueError("delta is undefined for equal arguments")
    return (x ^ y).bit_length() - 1


# --------------------------------------------------------------------------
# labels


class Pair(NamedTuple):
    t: int
    s: int

    def __str__(self) -> str:
        return f"({self.t},{self.s})"


class Coord(NamedTuple):
    j: int
    s: int

    def __str__(self) -> str:
        return f"Coord({self.j},{self.s})"


class Base(NamedTuple):
    c: Any

    def __str__(self) -> str:
        return f"Base({self.c})"


class Index(NamedTuple):
    i: int

    def __str__(self) -> str:
        return f"Index({self.i})"


Label = Union[Pair, Coord, Base, Index]


def label_to_json(label: Optional[Label]) -> Any:
    if label is None:
        return None
    if isinstance(label, Base):
        return {"kind": "Base", "c": label_to_json(label.c)}
    return {"kind": type(label).__name__, **label._asdict()}


# --------------------------------------------------------------------------
# oracles

Window = Union[range, Sequence[int]]


@dataclass
class ColoringOracle:
    name: str
    domain_size: int
    color_count: int
    eval: Callable[[int, int, int], Hashable]
    # optional fast path: ascending table over a window of values, returning
    # (ids of shape (W, W, W) for x < y < z, id -> label list)
    table_fn: Optional[Callable[[np.ndarray], tuple[np.ndarray, list]]] = None
    meta: dict = field(default_factory=dict)

    def __call__(self, x: int, y: int, z: int) -> Hashable:
        if not 0 <= x < y < z < self.domain_size:
            raise ValueError(f"triple {(x, y, z)} is not ascending inside [0, {self.domain_size})")
        return self.eval(x, y, z)


def n_q(q: int) -> int:
    return 1 << (1 << (q // 2))


def _check_q(q: int) -> None:
    if q < 2 or q % 2:
        raise ValueError("phi_q is defined for even q >= 2 only")


def phi_q(q: int, x: int, y: int, z: int) -> Pair:
    """(delta(delta(x,y), delta(y,z)), [delta(x,y) > delta(y,z)])."""
    _check_q(q)
    if not 0 <= x < y < z:
        raise ValueError(f"triple {(x, y, z)} is not ascending")
    if z.bit_length() > 1 << (q // 2):
        raise ValueError(f"{z} lies outside the domain of phi_{q}")
    a, b = delta(x, y), delta(y, z)
    return Pair(delta(a, b), int(a > b))


_HB16 = np.zeros(1 << 16, dtype=np.int16)
for _k in range(16):
    _HB16[1 << _k: 1 << (_k + 1)] = _k


def _phi_table(vals: np.ndarray) -> tuple[np.ndarray, list]:
    if vals.size and int(vals.max()) >= 1 << 16:
        raise ValueError("vectorized table needs values below 2^16")
    v = vals.astype(np.int64)
    d = _HB16[v[:, None] ^ v[None, :]]  # d[i, j] = delta for i != j
    a = d[:, :, None]
    b = d[None, :, :]
    w = len(v)
    t = _HB16[a ^ b]
    ids = (2 * t + (a > b)).astype(np.int16)
    i = np.arange(w)
    asc = (i[:, None, None] < i[None, :, None]) & (i[None, :, None] < i[None, None, :])
    ids = np.where(asc, ids, np.int16(-1))
    # deltas are below 16, so t is below 4; id = 2t + s
    return ids, [Pair(k // 2, k % 2) for k in range(8)]


def phi_oracle(q: int) -> ColoringOracle:
    _check_q(q)
    return ColoringOracle(
        f"phi-q:q={q}",
        n_q(q),
        q,
        lambda x, y, z: phi_q(q, x, y, z),
        table_fn=_phi_table,
        meta={"q": q},
    )


def rainbow_coloring(n: int) -> ColoringOracle:
    """Each triple gets Index(colex rank + 1)."""
    if n < 3:
        raise ValueError("rainbow coloring needs N >= 3")
    return ColoringOracle(
        f"rainbow:N={n}",
        n,
        comb(n, 3),
        lambda x, y, z: Index(comb(z, 3) + comb(y, 2) + x + 1),
    )


@dataclass
class TripartiteFailure:
    q: int
    domain_size: int
    seed: int
    uncolored: list[tuple[int, int, int]]


def _balanced_partitions(q: int, n: int, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    parts = []
    for _ in range(q):
        perm = list(range(n))
        rng.shuffle(perm)
        part = [0] * n
        for k, v in enumerate(perm):
            part[v] = k % 3
        parts.append(part)
    return parts


def random_tripartite_coloring(q: int, n: int, seed: int) -> Union[ColoringOracle, TripartiteFailure]:
    """q independent random balanced 3-partitions; a triple gets Index(i) for the
    least i whose partition puts its vertices in three different parts."""
    if n < 3 or q < 1:
        raise ValueError("need q >= 1 and N >= 3")
    parts = _balanced_partitions(q, n, seed)
    colors: dict[tuple[int, int, int], Index] = {}
    uncolored = []
    for t in combinations(range(n), 3):
        for i, part in enumerate(parts):
            if len({part[t[0]], part[t[1]], part[t[2]]}) == 3:
                colors[t] = Index(i + 1)
                break
        else:
            uncolored.append(t)
    if uncolored:
        return TripartiteFailure(q, n, seed, uncolored)
    return ColoringOracle(
        f"tripartite:q={q},N={n},seed={seed}",
        n,
        q,
        lambda x, y, z: colors[(x, y, z)],
        meta={"q": q, "seed": seed, "partitions": parts},
    )


def first_total_tripartite(q: int, n: int, seed: int, tries: int = 1000) -> ColoringOracle:
    """The first seed >= ``seed`` whose random tripartite coloring is total."""
    for s in range(seed, seed + tries):
        res = random_tripartite_coloring(q, n, s)
        if isinstance(res, ColoringOracle):
            return res
    raise ValueError(f"no total tripartite coloring for q={q}, N={n} in seeds {seed}..{seed + tries - 1}")


def decode_vector(v: int, base: int, q: int) -> tuple[int, ...]:
    """Mixed-radix digits, most significant first, so that integer order is the
    lexicographic order of vectors."""
    out = []
    for _ in range(q):
        v, r = divmod(v, base)
        out.append(r)
    return tuple(reversed(out))


def encode_vector(vec: Sequence[int], base: int) -> int:
    v = 0
    for c in vec:
        v = v * base + c
    return v


def phi_product(base: ColoringOracle, q: int, x: Sequence[int], y: Sequence[int], z: Sequence[int]) -> Label:
    """Color of three lexicographically ascending vectors in [N]^q, decided at the
    first coordinate j (1-based) where they are not all equal."""
    if len(x) != q or len(y) != q or len(z) != q:
        raise ValueError("vectors must have q coordinates")
    if not tuple(x) < tuple(y) < tuple(z):
        raise ValueError("vectors must be strictly ascending in lexicographic order")
    for j in range(q):
        a, b, c = x[j], y[j], z[j]
        if a == b == c:
            continue
        if a < b < c:
            return Base(base(a, b, c))
        if b == c:
            return Coord(j + 1, 0)
        return Coord(j + 1, 1)
    raise AssertionError("unreachable")  # pragma: no cover


def product_oracle(base: ColoringOracle, q: int) -> ColoringOracle:
    nb = base.domain_size

    def ev(x: int, y: int, z: int) -> Label:
        return phi_product(base, q, decode_vector(x, nb, q), decode_vector(y, nb, q), decode_vector(z, nb, q))

    return ColoringOracle(
        f"product:q={q},N={nb},base={base.name}",
        nb**q,
        base.color_count + 2 * q,
        ev,
        meta={"q": q, "N": nb, "base": base},
    )


def parse_oracle(text: str) -> ColoringOracle:
    """``phi-q:q=6``, ``product:q=2,N=4,seed=7[,base_q=54]``,
    ``tripartite:q=54,N=16,seed=1``, ``rainbow:N=6``."""
    name, _, rest = text.partition(":")
    params: dict[str, int] = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad oracle parameter {item!r}")
        try:
            params[key.strip()] = int(val)
        except ValueError:
            raise ValueError(f"oracle parameter {key!r} must be an integer") from None
    try:
        if name == "phi-q":
            return phi_oracle(params["q"])
        if name == "rainbow":
            return rainbow_coloring(params["N"])
        if name == "tripartite":
            res = random_tripartite_coloring(params["q"], params["N"], params.get("seed", 0))
            if isinstance(res, TripartiteFailure):
                raise ValueError(f"seed {res.seed} leaves {len(res.uncolored)} triples uncolored; retry with another seed")
            return res
        if name == "product":
            q = params["q"]
            base = first_total_tripartite(params.get("base_q", q), params["N"], params.get("seed", 0))
            return product_oracle(base, q)
    except KeyError as exc:
        raise ValueError(f"oracle {name!r} needs parameter {exc.args[0]!r}") from None
    raise ValueError(f"unknown oracle {name!r}")


# --------------------------------------------------------------------------
# color tables


def _window_values(oracle: ColoringOracle, window: Optional[Window]) -> list[int]:
    vals = list(range(oracle.domain_size)) if window is None else list(window)
    if any(b <= a for a, b in zip(vals, vals[1:])):
        raise ValueError("window must be strictly ascending")
    if vals and (vals[0] < 0 or vals[-1] >= oracle.domain_size):
        raise ValueError("window leaves the oracle domain")
    return vals


def color_table(oracle: ColoringOracle, vals: Sequence[int]) -> tuple[np.ndarray, list]:
    """Symmetric (W, W, W) table of color ids (-1 on repeated vertices) and the
    id -> label list."""
    w = len(vals)
    if oracle.table_fn is not None:
        try:
            asc, labels = oracle.table_fn(np.asarray(vals, dtype=np.int64))
        except ValueError:
            asc = None
        if asc is not None:
            return _symmetrize(asc), labels
    ids: dict[Hashable, int] = {}
    asc = np.full((w, w, w), -1, dtype=np.int32 if oracle.color_count > 30000 else np.int16)
    for i, j, k in combinations(range(w), 3):
        lab = oracle.eval(vals[i], vals[j], vals[k])
        asc[i, j, k] = ids.setdefault(lab, len(ids))
    return _symmetrize(asc), list(ids)


def _symmetrize(asc: np.ndarray) -> np.ndarray:
    out = asc.copy()
    for perm in ((0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        np.maximum(out, asc.transpose(perm), out=out)
    return out


# --------------------------------------------------------------------------
# monochromatic copies

DEFAULT_SEARCH_BUDGET = 4 * 10**9
MAX_TABLE_CELLS = 1 << 27
CHUNK_CELLS = 1 << 22


def _pattern_plan(pattern: Hypergraph3):
    h = pattern.n
    back: list[list[tuple[int, int]]] = [[] for _ in range(h)]
    for a, b, c in pattern.edges:
        back[c].append((a, b))
    lower: list[list[int]] = [[] for _ in range(h)]
    for u, v in automorphism_twins(pattern):
        lower[v].append(u)
    return back, lower


def _kernel_search(table: np.ndarray, pattern: Hypergraph3, budget: int) -> Optional[tuple[tuple[int, ...], int]]:
    """Lexicographically least mono embedding into window indices, or None.

    Frontier rows are partial images of pattern vertices 0..k-1 plus the
    common color so far (-2 while undetermined).  Expanding rows in order and
    candidates ascending keeps rows lexicographically sorted, and chunks are
    explored depth first, so the first complete row is the least one.
    """
    w = table.shape[0]
    h = pattern.n
    back, lower = _pattern_plan(pattern)
    spent = [0]
    chunk_rows = max(1, CHUNK_CELLS // max(w, 1))
    cand = np.arange(w)

    def expand(rows: np.ndarray, col: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
        r = rows.shape[0]
        spent[0] += r * w
        if spent[0] > budget:
            raise BudgetExceeded(f"mono-copy search budget of {budget} candidate checks exhausted", spent[0])
        mask = np.ones((r, w), dtype=bool)
        if k:
            mask[np.arange(r)[:, None], rows] = False
        for u in lower[k]:
            mask &= cand[None, :] > rows[:, u][:, None]
        color = np.broadcast_to(col[:, None], (r, w)).copy()
        for a, b in back[k]:
            e = table[rows[:, a], rows[:, b]]
            mask &= e >= 0
            mask &= (color == -2) | (e == color)
            color = np.where(color == -2, e, color)
        ri, ci = np.nonzero(mask)
        return np.hstack([rows[ri], ci[:, None]]), color[ri, ci]

    def dfs(rows: np.ndarray, col: np.ndarray, k: int) -> Optional[tuple[tuple[int, ...], int]]:
        if k == h:
            return (tuple(int(v) for v in rows[0]), int(col[0])) if rows.shape[0] else None
        for start in range(0, rows.shape[0], chunk_rows):
            nr, nc = expand(rows[start:start + chunk_rows], col[start:start + chunk_rows], k)
            if nr.shape[0]:
                res = dfs(nr, nc, k + 1)
                if res is not None:
                    return res
        return None

    return dfs(np.zeros((1, 0), dtype=np.int64), np.full(1, -2, dtype=np.int64), 0)


def find_mono_copy(
    oracle: ColoringOracle,
    pattern: Hypergraph3,
    window: Optional[Window] = None,
    budget: int = DEFAULT_SEARCH_BUDGET,
    method: str = "auto",
) -> Optional[tuple[Embedding, Optional[Label]]]:
    """Lexicographically least injective map of pattern vertices into the window
    sending every pattern edge to triples of one common color.

    ``method`` is ``kernel`` (materialized table, numpy frontier), ``reference``
    (one backtracking search per color, least result kept) or ``auto``.
    """
    vals = _window_values(oracle, window)
    w = len(vals)
    if pattern.n > w:
        return None
    if pattern.m == 0:
        return tuple(vals[: pattern.n]), None
    if method == "auto":
        method = "kernel" if w**3 <= MAX_TABLE_CELLS else "reference"
    if method == "kernel":
        if w**3 > MAX_TABLE_CELLS:
            raise BudgetExceeded(f"window of {w} vertices is too large for a color table", w**3)
        table, labels = color_table(oracle, vals)
        res = _kernel_search(table, pattern, budget)
        if res is None:
            return None
        emb, cid = res
        return tuple(vals[i] for i in emb), labels[cid]
    if method == "reference":
        return _reference_search(oracle, pattern, vals, budget)
    raise ValueError(f"unknown method {method!r}")


def _reference_search(oracle, pattern, vals, budget):
    w = len(vals)
    cache: dict[tuple[int, int, int], Hashable] = {}

    def color(i: int, j: int, k: int) -> Hashable:
        key = (i, j, k)
        if key not in cache:
            if len(cache) >= budget:
                raise BudgetExceeded("reference search budget exhausted", len(cache))
            cache[key] = oracle.eval(vals[i], vals[j], vals[k])
        return cache[key]

    seen = []
    for t in combinations(range(w), 3):
        lab = color(*t)
        if lab not in seen:
            seen.append(lab)
    best = None
    for lab in seen:
        emb = find_embedding(pattern, w, lambda x, y, z, lab=lab: color(x, y, z) == lab)
        if emb is not None and (best is None or emb < best[0]):
            best = (emb, lab)
    if best is None:
        return None
    return tuple(vals[i] for i in best[0]), best[1]


def is_mono_copy(oracle: ColoringOracle, pattern: Hypergraph3, emb: Embedding) -> bool:
    if len(set(emb)) != len(emb) or len(emb) != pattern.n:
        return False
    labels = {oracle.eval(*sorted(emb[v] for v in e)) for e in pattern.edges}
    return len(labels) <= 1


# --------------------------------------------------------------------------
# audits


@dataclass
class PatternRecord:
    key: str
    pattern: Hypergraph3
    embedding: Embedding
    label: Label
    passes: bool

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "n": self.pattern.n,
            "edges": [list(e) for e in self.pattern.edges],
            "embedding": list(self.embedding),
            "label": label_to_json(self.label),
            "passes": self.passes,
        }


@dataclass
class AuditReport:
    patterns_found: list[PatternRecord]
    all_pass: bool
    predicate_name: str
    subsets_examined: int

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate_name,
            "all_pass": self.all_pass,
            "subsets_examined": self.subsets_examined,
            "patterns": [p.to_json() for p in self.patterns_found],
        }


def audit_predicates() -> dict[str, Callable[[Hypergraph3], bool]]:
    from .analysis import is_tripartite
    from .classifier import INF, default_classifier

    clf = default_classifier()
    return {
        "in_U": lambda g: clf.level(g) != INF,
        "in_L1": lambda g: clf.l1(g),
        "tripartite": lambda g: is_tripartite(g, None) is not None,
        "at_most_one_edge": lambda g: g.m <= 1,
    }


def audit_coloring(
    oracle: ColoringOracle,
    window: Optional[Window],
    h_max: int,
    predicate: Union[str, Callable[[Hypergraph3], bool]],
    budget: int = 10**7,
) -> AuditReport:
    """Check every monochromatic pattern spanned by an h_max-subset of the
    window against the predicate (memoized per isomorphism class).

    A color class on a smaller subset is the induced restriction of the class
    on any h_max-superset, so for hereditary predicates the h_max-subsets
    suffice.  A window with fewer than h_max values is examined as one subset.
    """
    if isinstance(predicate, str):
        preds = audit_predicates()
        if predicate not in preds:
            raise ValueError(f"unknown predicate {predicate!r}; expected one of {', '.join(preds)}")
        name, pred = predicate, preds[predicate]
    else:
        name, pred = getattr(predicate, "__name__", "custom"), predicate
    vals = _window_values(oracle, window)
    k = min(h_max, len(vals))
    total = comb(len(vals), k) if k >= 3 else 0
    if total > budget:
        raise BudgetExceeded(f"{total} subsets exceed the audit budget {budget}", total)
    colors = {t: oracle.eval(*t) for t in combinations(vals, 3)} if k >= 3 else {}
    found: dict[bytes, PatternRecord] = {}
    keys: dict[tuple, bytes] = {}
    examined = 0
    for sub in combinations(vals, k) if k >= 3 else ():
        examined += 1
        groups: dict[Hashable, list[tuple[int, int, int]]] = {}
        for idx in combinations(range(k), 3):
            groups.setdefault(colors[tuple(sub[i] for i in idx)], []).append(idx)
        for lab, edges in groups.items():
            sig = tuple(edges)
            key = keys.get(sig)
            if key is None:
                g = Hypergraph3(k, edges)
                key = keys[sig] = canonical_key(g)
            if key not in found:
                found[key] = PatternRecord(key.hex(), g, sub, lab, bool(pred(g)))
    records = sorted(found.values(), key=lambda r: (r.key, r.embedding))
    return AuditReport(records, all(r.passes for r in records if r.pattern.m), name, examined)


def coordinate_forward_witness(oracle: ColoringOracle, pattern: Hypergraph3, emb: Embedding, label: Label) -> list[list[int]]:
    """Ordered partition of pattern vertices for a copy colored Coord(j, s) under
    a product oracle.

    Vertices are grouped by the prefix of their image through coordinate j.
    Every edge's images agree before j and split 1+2 at j with the lone vertex
    lower (s = 0) or higher (s = 1), so ordering the groups ascending for s = 0
    and descending for s = 1 makes each edge's lone vertex come first.
    """
    if not isinstance(label, Coord):
        raise ValueError("witness needs a Coord label")
    nb, q = oracle.meta["N"], oracle.meta["q"]
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(pattern.n):
        groups.setdefault(decode_vector(emb[v], nb, q)[: label.j], []).append(v)
    order = sorted(groups, reverse=bool(label.s))
    return [groups[p] for p in order]
