import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from diagramkit import (
    Vertex,
    WeightedGraph,
    blowup_edge,
    blowup_vertex,
    canonical_form,
    chain,
    check_star,
    classify_graph,
    enumerate_minimal_elliptic_star,
    lanner_blowup_search,
)

SEED = 20260809


def random_graph(rng: random.Random, n_max: int = 8, allow_extras: bool = True) -> WeightedGraph:
    """Random small graph: a tree plus occasional extra edge / multiplicity."""
    n = rng.randint(1, n_max)
    verts = [
        Vertex(f"r{i:02d}", rng.randint(1, 5), rng.choice([0, 0, 0, 1]))
        for i in range(n)
    ]
    edges: dict[tuple[str, str], int] = {}
    for i in range(1, n):
        j = rng.randrange(i)
        edges[(f"r{j:02d}", f"r{i:02d}")] = rng.choice([1, 1, 1, 2])
    if allow_extras and n > 2 and rng.random() < 0.3:
        i, j = sorted(rng.sample(range(n), 2))
        edges.setdefault((f"r{i:02d}", f"r{j:02d}"), rng.choice([1, 2]))
    return WeightedGraph(verts, [(u, v, m) for (u, v), m in edges.items()])


@pytest.fixture(scope="session")
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def random_corpus():
    r = random.Random(SEED)
    return [random_graph(r) for _ in range(500)]


@pytest.fixture(scope="session")
def lanner_closure_half():
    return lanner_blowup_search(chain([1, 1, 1], prefix="L"), Fraction(1, 2), 40)


@pytest.fixture(scope="session")
def star_corpus_half(lanner_closure_half):
    """At least 200 pairwise non-isomorphic graphs satisfying the
    coefficient condition at eps = 1/2, all certified by check_star."""
    eps = Fraction(1, 2)
    seen: dict[bytes, WeightedGraph] = {}

    def add(g: WeightedGraph) -> None:
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g

    base = enumerate_minimal_elliptic_star(eps, 7).graphs
    for g in base:
        add(g)
    for g in lanner_closure_half.graphs:
        add(g)
    # grow with feasible blowups of the elliptic base until the corpus is big
    frontier = list(base)
    while len(seen) < 220 and frontier:
        nxt = []
        for g in frontier:
            new_id = f"x{g.n:02d}"
            kids = [blowup_vertex(g, vid, new_id) for vid in g.ids]
            kids += [blowup_edge(g, u, v, new_id) for u, v in g.simple_edges()]
            for child in kids:
                if len(seen) >= 220:
                    break
                if canonical_form(child) in seen:
                    continue
                if check_star(child, eps).feasible:
                    add(child)
                    nxt.append(child)
        frontier = nxt
    corpus = [g for _, g in sorted(seen.items())]
    assert len(corpus) >= 200, f"corpus too small: {len(corpus)}"
    for g in corpus:
        assert check_star(g, eps).feasible
    return corpus


@pytest.fixture(scope="session")
def elliptic_star_corpus_half(star_corpus_half):
    from diagramkit import GraphKind

    return [
        g for g in star_corpus_half if classify_graph(g).kind is GraphKind.ELLIPTIC
    ]
