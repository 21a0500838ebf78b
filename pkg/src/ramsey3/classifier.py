"""Minimal level in the collapse hierarchy, the L1 family, regime verdicts and
certificate checking.

Level recurrence.  Write lvl(G) for the least i with G in U_i.  U_0 is the
tripartite graphs, U_1 the graphs with an exact transversal, and for i >= 2
G is in U_i iff G is in U_{i-1} or G reduces to (H, F) with H in U_{i-1} and
F in U_i.  Unfolding the fixed point gives, for G outside U_1,

    lvl(G) = min over collapsible U of max(2, lvl(H) + 1, lvl(F))

with the minimum over an empty set being infinite.  Both H and F have fewer
vertices than G, so the recursion is well founded.  Values are memoized on the
canonical key, which makes them relabeling invariant.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Optional, Union

from .analysis import (
    collapse,
    collapsible_masks,
    decompose,
    decomposition_partitions,
    exact_transversal,
    forward_colorable,
    has_exact_transversal,
    is_collapsible,
    is_tripartite,
    verify_forward_coloring,
    verify_partition3,
    verify_transversal,
)
from .core import (
    BudgetExceeded,
    CapExceeded,
    Hypergraph3,
    bits,
    canonical_key,
    from_mask,
    induced,
    set_order,
    strip_isolated,
)

INF = math.inf
Level = Union[int, float]

CLASSIFY_CAP = 24
L1_CAP = 12
DEFAULT_BUDGET = int(os.environ.get("RAMSEY3_BUDGET", 10**7))

POLYNOMIAL = "Polynomial"
SINGLE_EXP = "SingleExpZone"
DOUBLE_EXP = "DoubleExp"


def level_to_json(lv: Optional[Level]) -> Union[int, str, None]:
    if lv is None:
        return None
    return "inf" if lv == INF else int(lv)


def level_from_json(v: Union[int, str, None]) -> Optional[Level]:
    if v is None:
        return None
    return INF if v == "inf" else int(v)


@dataclass
class Certificate:
    """A node of a witness tree.

    kinds for the U hierarchy: ``tripartite``, ``transversal``, ``collapse``
    (children: H, F), ``exhausted`` (children: the failing side of every
    collapsible set, in order) and ``subgraph`` (an induced subgraph already
    outside U; child: its certificate).  Kinds for L1: ``forward``, ``decompose`` (children: H,
    then one per block) and ``l1_exhausted``.
    """

    kind: str
    level: Optional[Level]
    witness: Any
    children: list["Certificate"] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "level": level_to_json(self.level),
            "witness": self.witness,
            "children": [c.to_json() for c in self.children],
        }

    @classmethod
    def from_json(cls, d: dict) -> "Certificate":
        return cls(d["kind"], level_from_json(d.get("level")), d["witness"], [cls.from_json(c) for c in d["children"]])

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass
class Verdict:
    regime: str
    min_ell: Level
    certificate: Certificate
    bounds_note: str
    note: Optional[str] = None

    @property
    def upper_bound(self) -> str:
        return upper_bound_text(self.min_ell)

    def summary(self) -> str:
        ell = "inf" if self.min_ell == INF else str(self.min_ell)
        return f"regime={self.regime} min_ell={ell} bound={self.upper_bound}"

    def to_json(self) -> dict:
        return {
            "regime": self.regime,
            "min_ell": level_to_json(self.min_ell),
            "certificate": self.certificate.to_json(),
            "bounds_note": self.bounds_note,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, d: dict) -> "Verdict":
        return cls(d["regime"], level_from_json(d["min_ell"]), Certificate.from_json(d["certificate"]), d["bounds_note"], d.get("note"))


def regime_for(lv: Level) -> str:
    if lv == 0:
        return POLYNOMIAL
    if lv == INF:
        return DOUBLE_EXP
    return SINGLE_EXP


def upper_bound_text(lv: Level) -> str:
    if lv == 0:
        return "q^{O(1)}"
    if lv == INF:
        return "2^{2^{O(q log q)}}"
    if lv == 1:
        return "2^{O(q log q)}"
    return f"2^{{O(q^{int(lv)} log q)}}"


def bounds_note_for(lv: Level) -> str:
    if lv == 0:
        return "tripartite: r(G;q) = q^{Theta(1)}"
    if lv == INF:
        return "not in U: 2^{2^{q/2}} <= r(G;q) <= 2^{2^{O(q log q)}}"
    return f"in U_{int(lv)} but not tripartite: 2^{{Omega(q)}} <= r(G;q) <= {upper_bound_text(lv)}"


FIRST_PASS_NODES = 100


class _PassExhausted(Exception):
    pass


class Classifier:
    """Memoized decision procedures; one instance shares its tables across calls."""

    def __init__(
        self,
        max_n: Optional[int] = CLASSIFY_CAP,
        budget: int = DEFAULT_BUDGET,
        l1_max_n: Optional[int] = L1_CAP,
        prune: bool = True,
    ):
        self.max_n = max_n
        self.prune = prune
        self._pass: Optional[int] = None
        self._pass_nodes = 0
        self.labelled: dict[tuple, Level] = {}
        self.l1_max_n = l1_max_n
        self.budget = budget
        self.levels: dict[bytes, Level] = {}
        self.l1_table: dict[bytes, bool] = {}
        self.tri_table: dict[bytes, bool] = {}
        self.nodes = 0

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"classifier budget of {self.budget} nodes exhausted", self.nodes)

    def _cap(self, g: Hypergraph3, cap: Optional[int]) -> None:
        if cap is not None and g.n > cap:
            raise CapExceeded(f"{g.n} vertices exceeds cap {cap} (raise max_n to override)")

    # ---------------------------------------------------------------- levels

    def level(self, g: Hypergraph3) -> Level:
        """Least i with G in U_i, or INF.

        Two passes: a quick one without the vertex-deletion bound under a small
        node allowance (fast for deep finite graphs), then, if that runs out, one
        with it (fast for graphs outside U, which almost always contain a smaller
        graph outside U).  Memo entries from the first pass are exact and kept.
        """
        if not self.prune or self._pass is not None:
            return self._level(g)
        try:
            self._pass, self._pass_nodes = 0, 0
            return self._level(g)
        except _PassExhausted:
            self._pass = 1
            return self._level(g)
        finally:
            self._pass = None

    def _level(self, g: Hypergraph3) -> Level:
        self._cap(g, self.max_n)
        fast = (g.n, g.edges)
        hit = self.labelled.get(fast)
        if hit is not None:
            return hit
        key = canonical_key(g)
        hit = self.levels.get(key)
        if hit is None:
            self._tick()
            if self._pass == 0:
                self._pass_nodes += 1
                if self._pass_nodes > FIRST_PASS_NODES:
                    raise _PassExhausted
            hit = self._compute_level(g) if self.prune else self._plain_level(g)
            self.levels[key] = hit
        self.labelled[fast] = hit
        return hit

    def _base_level(self, g: Hypergraph3) -> Optional[Level]:
        if is_tripartite(g, None) is not None:
            return 0
        if has_exact_transversal(g, None):
            return 1
        if g.isolated_mask:
            return self.level(strip_isolated(g)[0])
        return None

    def _plain_level(self, g: Hypergraph3) -> Level:
        """The recurrence as stated, without monotonicity pruning."""
        lv = self._base_level(g)
        if lv is not None:
            return lv
        best: Level = INF
        for mask in collapsible_masks(g, None):
            r = collapse(g, from_mask(mask))
            best = min(best, max(2, self.level(r.H) + 1, self.level(r.F)))
        return best

    def _compute_level(self, g: Hypergraph3) -> Level:
        """The recurrence, pruned by monotonicity under subgraphs.

        G contains every G - v, and the quotient H of a collapse of U contains
        G[(V - U) + u] for each u in U (u playing the role of v*).  Levels of
        these induced subgraphs are cheap to share across branches and bound
        the answer from below.
        """
        lv = self._base_level(g)
        if lv is not None:
            return lv
        full = g.full_mask
        floor: Level = 2
        if self._pass != 0:
            for v in range(g.n):
                sub = self.level(induced(g, bits(full & ~(1 << v))))
                if sub == INF:
                    return INF
                floor = max(floor, sub)
        best: Level = INF
        for mask in collapsible_masks(g, None):
            lf = self.level(induced(g, bits(mask)))
            if max(2, lf) >= best:
                continue
            rest = full & ~mask
            lb_h = max(self.level(induced(g, bits(rest | (1 << u)))) for u in bits(mask))
            if max(2, lb_h + 1, lf) >= best:
                continue
            lh = self.level(collapse(g, from_mask(mask)).H)
            best = min(best, max(2, lh + 1, lf))
            if best == floor:
                break
        return best

    def certificate(self, g: Hypergraph3, lv: Optional[Level] = None) -> Certificate:
        if lv is None:
            lv = self.level(g)
        if lv == 0:
            return Certificate("tripartite", 0, is_tripartite(g, None).to_json())
        if lv == 1:
            return Certificate("transversal", 1, sorted(exact_transversal(g, None)))
        if lv == INF:
            return self._infinite(g)
        core, kept = strip_isolated(g)
        for mask in collapsible_masks(core, None):
            u = [kept[i] for i in bits(mask)]
            r = collapse(g, u)
            lf = self.level(r.F)
            if max(2, lf) > lv:
                continue
            lh = self.level(r.H)
            if max(2, lh + 1, lf) == lv:
                return Certificate("collapse", lv, {"U": u}, [self.certificate(r.H, lh), self.certificate(r.F, lf)])
        raise AssertionError("memoized level has no witnessing collapse")  # pragma: no cover

    def _infinite(self, g: Hypergraph3) -> Certificate:
        """Point at an infinite induced subgraph with one vertex fewer when there
        is one, else list every collapsible set with a failing side."""
        full = g.full_mask
        for v in range(g.n):
            kept = list(bits(full & ~(1 << v)))
            sub = induced(g, kept)
            if self.level(sub) == INF:
                return Certificate("subgraph", INF, {"kept": kept}, [self._infinite(sub)])
        record, children = [], []
        for mask in collapsible_masks(g, None):
            u = sorted(bits(mask))
            r = collapse(g, u)
            if self.level(r.F) == INF:
                record.append({"U": u, "failing": "F"})
                children.append(self._infinite(r.F))
            else:
                record.append({"U": u, "failing": "H"})
                children.append(self._infinite(r.H))
        return Certificate("exhausted", INF, {"sets": record}, children)

    def min_level(self, g: Hypergraph3) -> tuple[Level, Certificate]:
        lv = self.level(g)
        return lv, self.certificate(g, lv)

    def classify(self, g: Hypergraph3) -> Verdict:
        lv, cert = self.min_level(g)
        note = None
        if g.m == 0:
            note = f"edgeless: no Ramsey growth, r(G;q) = {g.n} for every q"
        elif g.m == 1:
            note = f"single edge: regimes need at least two edges; r(G;q) = {max(3, g.n)} for every q"
        return Verdict(regime_for(lv), lv, cert, bounds_note_for(lv), note)

    # -------------------------------------------------------------------- L1

    def _tripartite_cached(self, g: Hypergraph3) -> bool:
        key = canonical_key(g)
        hit = self.tri_table.get(key)
        if hit is None:
            hit = self.tri_table[key] = is_tripartite(g, None) is not None
        return hit

    def l1(self, g: Hypergraph3) -> bool:
        """G is forward-colorable, or decomposes (any block sizes, t >= 2) into a
        tripartite quotient with every block graph in L1."""
        self._cap(g, self.l1_max_n)
        key = canonical_key(g)
        hit = self.l1_table.get(key)
        if hit is not None:
            return hit
        self._tick()
        res = self._l1_witness(g) is not None
        self.l1_table[key] = res
        return res

    def _l1_witness(self, g: Hypergraph3) -> Optional[tuple[str, Any]]:
        fw = forward_colorable(g, None)
        if fw is not None:
            return "forward", fw
        if g.n >= 2 and is_tripartite(g, None) is not None:
            return "decompose", [[v] for v in range(g.n)]
        budget = [self.budget]
        for assign in decomposition_partitions(g, budget):
            blocks = _blocks_of(assign)
            h, fs = decompose(g, blocks)
            if self._tripartite_cached(h) and all(self.l1(f) for f in fs):
                return "decompose", blocks
        return None

    def l1_certificate(self, g: Hypergraph3) -> Certificate:
        w = self._l1_witness(g)
        if w is None:
            return self._l1_exhausted(g)
        kind, data = w
        if kind == "forward":
            return Certificate("forward", None, data.to_json())
        h, fs = decompose(g, data)
        children = [Certificate("tripartite", 0, is_tripartite(h, None).to_json())]
        children += [self.l1_certificate(f) for f in fs]
        return Certificate("decompose", None, {"blocks": data}, children)

    def _l1_exhausted(self, g: Hypergraph3) -> Certificate:
        record, children = [], []
        for assign in decomposition_partitions(g, [self.budget]):
            blocks = _blocks_of(assign)
            h, fs = decompose(g, blocks)
            if not self._tripartite_cached(h):
                record.append({"blocks": blocks, "failing": "H"})
                continue
            i = next(i for i, f in enumerate(fs) if not self.l1(f))
            record.append({"blocks": blocks, "failing": i})
            children.append(self._l1_exhausted(fs[i]))
        return Certificate("l1_exhausted", None, {"decompositions": record}, children)

    def l1_member(self, g: Hypergraph3) -> tuple[bool, Certificate]:
        res = self.l1(g)
        return res, self.l1_certificate(g)


def _blocks_of(assign: list[int]) -> list[list[int]]:
    t = max(assign) + 1
    blocks: list[list[int]] = [[] for _ in range(t)]
    for v, b in enumerate(assign):
        blocks[b].append(v)
    return blocks


_default = Classifier()


def default_classifier() -> Classifier:
    return _default


def min_level(g: Hypergraph3, classifier: Optional[Classifier] = None) -> tuple[Level, Certificate]:
    return (classifier or _default).min_level(g)


def classify(g: Hypergraph3, classifier: Optional[Classifier] = None) -> Verdict:
    return (classifier or _default).classify(g)


def l1_member(g: Hypergraph3, classifier: Optional[Classifier] = None) -> tuple[bool, Certificate]:
    return (classifier or _default).l1_member(g)


# --------------------------------------------------------------------------
# checking
#
# Leaf witnesses and exhaustion claims are re-derived with deliberately naive
# searches that share no code with the deciders above.


def _naive_tripartite(g: Hypergraph3) -> bool:
    n = g.n
    part = [-1] * n
    by_last: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in g.edges:
        by_last[c].append((a, b))

    def rec(v: int, used: int) -> bool:
        if v == n:
            return True
        for p in range(min(3, used + 1)):
            if all(len({part[a], part[b], p}) == 3 for a, b in by_last[v]):
                part[v] = p
                if rec(v + 1, max(used, p + 1)):
                    return True
        part[v] = -1
        return False

    return rec(0, 0)


def _naive_transversal(g: Hypergraph3) -> bool:
    n = g.n
    inw = [False] * n
    by_last: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in g.edges:
        by_last[c].append((a, b))

    def rec(v: int) -> bool:
        if v == n:
            return True
        for choice in (False, True):
            inw[v] = choice
            if all(inw[a] + inw[b] + choice == 1 for a, b in by_last[v]):
                if rec(v + 1):
                    return True
        inw[v] = False
        return False

    return rec(0)


def _naive_collapsible(g: Hypergraph3) -> list[tuple[int, ...]]:
    if g.n > 18:
        return [tuple(bits(m)) for m in collapsible_masks(g, None)]
    out = []
    for mask in range(1 << g.n):
        k = bin(mask).count("1")
        if 2 <= k < g.n and all(bin(em & mask).count("1") != 2 for em in g.edge_masks):
            out.append(tuple(bits(mask)))
    return sorted(out, key=set_order)


def _naive_forward(g: Hypergraph3) -> bool:
    if g.n > 8:
        return forward_colorable(g, None) is not None
    for assign in _set_partitions(g.n):
        blocks = _blocks_of(assign) if assign else []
        for order in permutations(blocks):
            if verify_forward_coloring(g, order):
                return True
    return g.n == 0


def _set_partitions(n: int):
    assign = [0] * n

    def rec(v: int, t: int):
        if v == n:
            yield assign[:]
            return
        for b in range(t + 1):
            assign[v] = b
            yield from rec(v + 1, max(t, b + 1))

    if n:
        yield from rec(0, 0)


def _naive_decompositions(g: Hypergraph3) -> list[list[list[int]]]:
    out = []
    for assign in _set_partitions(g.n):
        if max(assign) + 1 < 2:
            continue
        if all(len({assign[v] for v in e}) != 2 for e in g.edges):
            out.append(_blocks_of(assign))
    return out


class CertificateError(Exception):
    pass


class _Checker:
    def __init__(self):
        self.path: list[str] = []

    def fail(self, msg: str) -> None:
        raise CertificateError(" / ".join(self.path + [msg]))

    def child(self, label: str, g: Hypergraph3, cert: Certificate, check) -> None:
        self.path.append(label)
        check(g, cert)
        self.path.pop()

    def level_node(self, g: Hypergraph3, c: Certificate) -> None:
        if c.kind == "tripartite":
            if c.level != 0 or not verify_partition3(g, c.witness):
                self.fail("invalid tripartition")
        elif c.kind == "transversal":
            if c.level != 1 or not verify_transversal(g, c.witness):
                self.fail("invalid exact transversal")
        elif c.kind == "collapse":
            u = c.witness["U"]
            if c.level is None or c.level == INF or c.level < 2:
                self.fail("collapse step must claim a finite level >= 2")
            if not is_collapsible(g, u):
                self.fail(f"{u} is not collapsible")
            if len(c.children) != 2:
                self.fail("collapse step needs two children")
            r = collapse(g, u)
            ch, cf = c.children
            if ch.level is None or ch.level > c.level - 1:
                self.fail("H certified above level - 1")
            if cf.level is None or cf.level > c.level:
                self.fail("F certified above the node level")
            self.child("H", r.H, ch, self.level_node)
            self.child("F", r.F, cf, self.level_node)
        elif c.kind == "subgraph":
            # levels are monotone under taking subgraphs
            kept = c.witness["kept"]
            if c.level != INF or len(c.children) != 1 or c.children[0].level != INF:
                self.fail("subgraph step must carry an infinite level")
            if any(b <= a for a, b in zip(kept, kept[1:])) or not all(0 <= v < g.n for v in kept):
                self.fail("subgraph vertices must be ascending and inside V")
            self.child("subgraph", induced(g, kept), c.children[0], self.level_node)
        elif c.kind == "exhausted":
            self.exhausted(g, c)
        else:
            self.fail(f"unknown certificate kind {c.kind!r}")

    def exhausted(self, g: Hypergraph3, c: Certificate) -> None:
        if c.level != INF:
            self.fail("exhaustion must claim an infinite level")
        if _naive_tripartite(g):
            self.fail("graph is tripartite")
        if _naive_transversal(g):
            self.fail("graph has an exact transversal")
        sets = c.witness["sets"]
        listed = [tuple(sorted(s["U"])) for s in sets]
        if listed != _naive_collapsible(g):
            self.fail("listed collapsible sets differ from the actual ones")
        if len(c.children) != len(sets):
            self.fail("one child per collapsible set expected")
        for s, ch in zip(sets, c.children):
            r = collapse(g, s["U"])
            side = r.F if s["failing"] == "F" else r.H
            if ch.level != INF:
                self.fail("failing side must be certified infinite")
            self.child(f"U={s['U']}:{s['failing']}", side, ch, self.level_node)

    def l1_node(self, g: Hypergraph3, c: Certificate) -> None:
        if c.kind == "forward":
            if not verify_forward_coloring(g, c.witness):
                self.fail("invalid forward coloring")
        elif c.kind == "decompose":
            blocks = c.witness["blocks"]
            try:
                res = decompose(g, blocks)
            except ValueError as exc:
                self.fail(str(exc))
            if res is None:
                self.fail("an edge meets a block in exactly two vertices")
            h, fs = res
            if len(c.children) != 1 + len(fs) or c.children[0].kind != "tripartite":
                self.fail("decompose step needs a tripartite quotient and one child per block")
            if not verify_partition3(h, c.children[0].witness):
                self.fail("quotient is not tripartite by the given witness")
            for i, (f, ch) in enumerate(zip(fs, c.children[1:])):
                self.child(f"block {i}", f, ch, self.l1_node)
        elif c.kind == "l1_exhausted":
            if _naive_forward(g):
                self.fail("graph is forward-colorable")
            recs = c.witness["decompositions"]
            listed = sorted(sorted(sorted(b) for b in r["blocks"]) for r in recs)
            actual = sorted(sorted(sorted(b) for b in blocks) for blocks in _naive_decompositions(g)) if g.n <= 9 else None
            if actual is None:
                actual = sorted(
                    sorted(sorted(b) for b in _blocks_of(a)) for a in decomposition_partitions(g)
                )
            if listed != actual:
                self.fail("listed decompositions differ from the actual ones")
            kids = iter(c.children)
            for r in recs:
                h, fs = decompose(g, r["blocks"])
                if r["failing"] == "H":
                    if _naive_tripartite(h):
                        self.fail(f"quotient of {r['blocks']} is tripartite")
                else:
                    ch = next(kids, None)
                    if ch is None or ch.kind != "l1_exhausted":
                        self.fail("missing exhaustion for failing block")
                    self.child(f"blocks={r['blocks']}:{r['failing']}", fs[r["failing"]], ch, self.l1_node)
        else:
            self.fail(f"unknown L1 certificate kind {c.kind!r}")


def explain_certificate(g: Hypergraph3, claimed: Verdict) -> Optional[str]:
    """None if the verdict checks out, else a diagnostic naming the failing node."""
    chk = _Checker()
    try:
        if claimed.min_ell != claimed.certificate.level:
            chk.fail("verdict level differs from the certificate level")
        if claimed.regime != regime_for(claimed.min_ell):
            chk.fail("regime does not match min_ell")
        chk.level_node(g, claimed.certificate)
        # minimality below the certified level
        lv = claimed.min_ell
        if lv != INF:
            if lv >= 1 and _naive_tripartite(g):
                chk.fail("graph is tripartite, level 0")
            if lv >= 2 and _naive_transversal(g):
                chk.fail("graph has an exact transversal, level 1")
            if lv >= 3 and Classifier(max_n=None, budget=10**9).level(g) != lv:
                chk.fail("a cheaper collapse exists")
    except CertificateError as exc:
        return str(exc)
    return None


def check_certificate(g: Hypergraph3, claimed: Verdict) -> bool:
    return explain_certificate(g, claimed) is None


def check_l1_certificate(g: Hypergraph3, member: bool, cert: Certificate) -> bool:
    if member != (cert.kind != "l1_exhausted"):
        return False
    try:
        _Checker().l1_node(g, cert)
    except CertificateError:
        return False
    return True
