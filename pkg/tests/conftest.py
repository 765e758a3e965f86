"""Shared graph builders and small independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import pytest

from oneplanar.graph import Graph


def path_graph(n: int) -> Graph:
    return Graph.build([(i, i + 1) for i in range(n - 1)], vertices=range(n))


def cycle_graph(n: int) -> Graph:
    return Graph.build([(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.build([(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.build([(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph.build([(0, i) for i in range(1, leaves + 1)])


def wheel_graph(rim: int) -> Graph:
    """Hub 0 joined to a cycle 1..rim."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return Graph.build(edges)


def theta_graph(lengths: tuple[int, ...]) -> Graph:
    """Two branch vertices 0, 1 joined by internally disjoint paths of the
    given lengths (a length-1 entry contributes the edge 01)."""
    nxt = 2
    pairs = []
    for length in lengths:
        chain = [0] + list(range(nxt, nxt + length - 1)) + [1]
        nxt += length - 1
        pairs.extend(zip(chain, chain[1:]))
    return Graph.build(pairs)


def random_connected_graph(rng: random.Random, n: int, extra: int) -> Graph:
    """Random tree on n vertices plus ``extra`` random non-tree edges."""
    pairs = [(rng.randrange(i), i) for i in range(1, n)]
    have = {tuple(sorted(p)) for p in pairs}
    candidates = [
        (i, j) for i in range(n) for j in range(i + 1, n)
        if (i, j) not in have
    ]
    rng.shuffle(candidates)
    pairs.extend(candidates[:extra])
    return Graph.build(pairs, vertices=range(n))


# -- independent oracles -----------------------------------------------------

def count_independent_edge_pairs(g: Graph) -> int:
    return sum(
        1 for e, f in itertools.combinations(sorted(g.edges), 2)
        if not set(g.edges[e]) & set(g.edges[f])
    )


def longest_path_vertices(g: Graph) -> int:
    """Maximum number of vertices on a simple path, by brute force."""
    best = 1 if g.vertices else 0

    def extend(v: int, used: set[int]) -> None:
        nonlocal best
        best = max(best, len(used))
        for w in g.neighbors(v):
            if w not in used:
                used.add(w)
                extend(w, used)
                used.remove(w)

    for s in g.vertices:
        extend(s, {s})
    return best


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
