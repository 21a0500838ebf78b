import json
import random
from importlib import resources
from itertools import combinations

import pytest
from hypothesis import strategies as st

from ramsey3.classifier import INF, Classifier
from ramsey3.core import Hypergraph3


@st.composite
def hypergraphs(draw, min_n: int = 0, max_n: int = 8, max_edges: int = 20):
    n = draw(st.integers(min_n, max_n))
    triples = list(combinations(range(n), 3))
    if not triples:
        return Hypergraph3(n)
    edges = draw(st.lists(st.sampled_from(triples), max_size=max_edges, unique=True))
    return Hypergraph3(n, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Hypergraph3:
    return Hypergraph3(n, [t for t in combinations(range(n), 3) if rng.random() < p])


def random_member(rng: random.Random, clf: Classifier, n_lo: int, n_hi: int) -> Hypergraph3:
    """A random graph in U, found by rejection."""
    while True:
        g = random_graph(rng, rng.randint(n_lo, n_hi), rng.choice([0.1, 0.25, 0.4]))
        if clf.level(g) != INF:
            return g


def plant(quotient: Hypergraph3, blocks: list[Hypergraph3], rng: random.Random) -> tuple[Hypergraph3, list[list[int]]]:
    """Composite whose decomposition along the returned blocks has the given
    quotient and block graphs: block i occupies a contiguous range, keeps its
    own edges, and each quotient edge lifts to a nonempty random set of
    transversal triples."""
    offsets, start = [], 0
    for f in blocks:
        offsets.append(start)
        start += f.n
    parts = [list(range(o, o + f.n)) for o, f in zip(offsets, blocks)]
    edges = [tuple(v + o for v in e) for o, f in zip(offsets, blocks) for e in f.edges]
    for i, j, k in quotient.edges:
        lifts = [(a, b, c) for a in parts[i] for b in parts[j] for c in parts[k]]
        edges += rng.sample(lifts, rng.randint(1, min(3, len(lifts))))
    return Hypergraph3(start, edges), parts


def schema(name: str) -> dict:
    text = resources.files("ramsey3").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(instance, name: str) -> None:
    import jsonschema
    from referencing import Registry, Resource

    registry = Registry()
    for other in ("label", "verdict", "color", "search", "audit", "arrows", "bound", "suite"):
        doc = schema(other)
        registry = registry.with_resource(f"{other}.schema.json", Resource.from_contents(doc))
    jsonschema.Draft202012Validator(schema(name), registry=registry).validate(instance)


@pytest.fixture
def clf() -> Classifier:
    return Classifier()


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
