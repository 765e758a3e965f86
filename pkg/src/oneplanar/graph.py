"""Simple undirected graphs with stable integer ids, plus the structural
decompositions consumed by the rest of the package.

All types are immutable after construction; every operation returns a new
object and preserves vertex/edge ids where the result contains them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional


class GraphError(ValueError):
    """Raised when a graph invariant or operation precondition is violated."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Finite simple graph. ``edges`` maps a stable edge id to its endpoint
    pair, stored with the smaller vertex first."""

    vertices: frozenset[int]
    edges: dict[int, tuple[int, int]]
    vertex_labels: dict[int, str] = field(default_factory=dict)
    edge_labels: dict[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        normalized = {}
        for e, (u, v) in self.edges.items():
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise GraphError(f"edge {e}={u, v} has missing endpoint")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise GraphError(f"parallel edge {pair}")
            seen.add(pair)
            normalized[e] = pair
        object.__setattr__(self, "edges", normalized)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def build(edge_pairs: Iterable[tuple[int, int]],
              vertices: Iterable[int] = ()) -> "Graph":
        """Create a graph from endpoint pairs; edge ids are assigned densely
        in sorted endpoint order."""
        vs = set(vertices)
        pairs = set()
        for u, v in edge_pairs:
            vs.update((u, v))
            pairs.add((u, v) if u < v else (v, u))
        edges = {i: p for i, p in enumerate(sorted(pairs))}
        return Graph(frozenset(vs), edges)

    # -- basic queries -----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, tuple[tuple[int, int], ...]]:
        """vertex -> tuple of (neighbor, edge id), sorted by neighbor."""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for e, (u, v) in self.edges.items():
            adj[u].append((v, e))
            adj[v].append((u, e))
        return {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    @cached_property
    def _pair_to_edge(self) -> dict[tuple[int, int], int]:
        return {pair: e for e, pair in self.edges.items()}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(n for n, _ in self.adjacency[v])

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(e for _, e in self.adjacency[v])

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._pair_to_edge

    def edge_between(self, u: int, v: int) -> Optional[int]:
        return self._pair_to_edge.get((u, v) if u < v else (v, u))

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise GraphError(f"vertex {v} not an endpoint of edge {e}")

    def components(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        comps = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            stack, comp = [start], {start}
            seen.add(start)
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- id-preserving derivations ------------------------------------------

    def induced_subgraph(self, vs: Iterable[int]) -> "Graph":
        keep = frozenset(vs)
        edges = {e: p for e, p in self.edges.items()
                 if p[0] in keep and p[1] in keep}
        return Graph(keep, edges,
                     {v: l for v, l in self.vertex_labels.items() if v in keep},
                     {e: l for e, l in self.edge_labels.items() if e in edges})

    def subgraph_of_edges(self, edge_ids: Iterable[int]) -> "Graph":
        keep = set(edge_ids)
        edges = {e: self.edges[e] for e in keep}
        vs = frozenset(v for p in edges.values() for v in p)
        return Graph(vs, edges,
                     {v: l for v, l in self.vertex_labels.items() if v in vs},
                     {e: l for e, l in self.edge_labels.items() if e in edges})

    def remove_vertices(self, vs: Iterable[int]) -> "Graph":
        return self.induced_subgraph(self.vertices - frozenset(vs))


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the plain text format: one "u v" pair per line, '#' comments and
    blank lines ignored, vertex ids non-negative integers."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = (int(p) for p in parts)
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        pairs.append((u, v))
    return Graph.build(pairs)


def format_edge_list(g: Graph) -> str:
    """Canonical serialization: edges sorted lexicographically."""
    lines = [f"{u} {v}" for u, v in sorted(g.edges.values())]
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Decomposition types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FeedbackEdgeSet:
    edges: frozenset[int]
    ell: int


@dataclass(frozen=True)
class Degree2PathDecomposition:
    """Maximal degree-2 paths covering E(g), sorted by increasing length.

    ``paths[i]`` is an edge-id sequence, ``vertex_paths[i]`` the matching
    vertex walk (first == last for closed paths).
    """

    paths: tuple[tuple[int, ...], ...]
    vertex_paths: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.paths)

    def is_closed(self, i: int) -> bool:
        walk = self.vertex_paths[i]
        return walk[0] == walk[-1]


@dataclass(frozen=True)
class BlockCutTree:
    """Biconnected components plus cut vertices of a connected graph.

    ``incidence`` lists (cut vertex, block index) pairs; the bipartite graph
    they induce is the block-cut tree.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    incidence: tuple[tuple[int, int], ...]
    root: Optional[int] = None

    def blocks_at(self, v: int) -> tuple[int, ...]:
        return tuple(b for c, b in self.incidence if c == v)


@dataclass(frozen=True)
class TreedepthDecomposition:
    """Rooted forest over V(g); for every edge one endpoint is an ancestor of
    the other. Roots have parent -1."""

    parent: dict[int, int]

    @cached_property
    def depth(self) -> int:
        memo: dict[int, int] = {}

        def d(v: int) -> int:
            if v not in memo:
                p = self.parent[v]
                memo[v] = 1 if p == -1 else d(p) + 1
            return memo[v]

        return max((d(v) for v in self.parent), default=0)

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        ch: dict[int, list[int]] = {v: [] for v in self.parent}
        for v, p in sorted(self.parent.items()):
            if p != -1:
                ch[p].append(v)
        return {v: tuple(c) for v, c in ch.items()}

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(sorted(v for v, p in self.parent.items() if p == -1))

    def ancestors(self, v: int) -> tuple[int, ...]:
        """Ancestors of v including v itself, root first."""
        chain = []
        while v != -1:
            chain.append(v)
            v = self.parent[v]
        return tuple(reversed(chain))

    def descendants(self, v: int) -> frozenset[int]:
        out = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for c in self.children[u]:
                out.add(c)
                stack.append(c)
        return frozenset(out)

    def validate(self, g: Graph) -> None:
        if set(self.parent) != set(g.vertices):
            raise GraphError("decomposition does not cover V(g)")
        for v in self.parent:  # acyclicity of parent pointers
            seen = set()
            u = v
            while u != -1:
                if u in seen:
                    raise GraphError("parent map has a cycle")
                seen.add(u)
                u = self.parent[u]
        for u, v in g.edges.values():
            if u not in self.ancestors(v) and v not in self.ancestors(u):
                raise GraphError(f"edge {u, v} violates ancestor closure")


@dataclass(frozen=True)
class LinearOrdering:
    """Bijection V(g) -> 1..n with its measured bandwidth."""

    position: dict[int, int]

    def __post_init__(self) -> None:
        n = len(self.position)
        if sorted(self.position.values()) != list(range(1, n + 1)):
            raise GraphError("ordering is not a bijection onto 1..n")

    def bandwidth(self, g: Graph) -> int:
        return max((abs(self.position[u] - self.position[v])
                    for u, v in g.edges.values()), default=0)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def prune_degree_one(g: Graph) -> Graph:
    """Repeatedly delete degree-<=1 vertices; the result has min degree >= 2
    or is empty."""
    current = g
    while True:
        drop = [v for v in current.vertices if current.degree(v) <= 1]
        if not drop:
            return current
        current = current.remove_vertices(drop)


def feedback_edge_set(g: Graph) -> FeedbackEdgeSet:
    """Minimum feedback edge set: the complement of a spanning forest."""
    seen: set[int] = set()
    tree_edges: set[int] = set()
    for start in sorted(g.vertices):
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        while stack:
            v = stack.pop()
            for w, e in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    tree_edges.add(e)
                    stack.append(w)
    rest = frozenset(g.edges) - tree_edges
    return FeedbackEdgeSet(rest, len(rest))


def decompose_degree2_paths(g: Graph) -> Degree2PathDecomposition:
    """Decompose E(g) into maximal degree-2 paths, sorted by increasing
    length.  Pure-cycle components each yield one closed path.  Rejects
    graphs with degree-<=1 vertices (prune first)."""
    for v in g.vertices:
        if g.degree(v) <= 1:
            raise GraphError(f"vertex {v} has degree {g.degree(v)} < 2")

    branch = {v for v in g.vertices if g.degree(v) != 2}
    unused = set(g.edges)
    raw: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def walk(start: int, first_edge: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        edge_seq = [first_edge]
        vert_seq = [start, g.other_end(first_edge, start)]
        unused.discard(first_edge)
        while vert_seq[-1] not in branch and vert_seq[-1] != start:
            v = vert_seq[-1]
            nxt = [e for _, e in g.adjacency[v] if e != edge_seq[-1]]
            edge_seq.append(nxt[0])
            vert_seq.append(g.other_end(nxt[0], v))
            unused.discard(nxt[0])
        return tuple(edge_seq), tuple(vert_seq)

    for v in sorted(branch):
        for _, e in g.adjacency[v]:
            if e in unused:
                raw.append(walk(v, e))
    # leftovers are pure cycle components (all their vertices have degree 2)
    while unused:
        e = min(unused)
        raw.append(walk(min(g.edges[e]), e))

    def canon(item: tuple[tuple[int, ...], tuple[int, ...]]) -> tuple:
        edges, verts = item
        fwd, bwd = verts, tuple(reversed(verts))
        return (len(edges), min(fwd, bwd))

    raw.sort(key=canon)
    return Degree2PathDecomposition(
        tuple(r[0] for r in raw),
        tuple(r[1] for r in raw),
        tuple(len(r[0]) for r in raw),
    )


def block_cut_tree(g: Graph, root: Optional[int] = None) -> BlockCutTree:
    """Biconnected components via iterative lowpoint DFS. Rejects
    disconnected input; callers split components first."""
    if not g.vertices:
        raise GraphError("empty graph")
    if not g.is_connected():
        raise GraphError("block_cut_tree requires a connected graph")

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent_edge: dict[int, Optional[int]] = {}
    edge_stack: list[int] = []
    blocks_edges: list[list[int]] = []
    cuts: set[int] = set()
    timer = 0

    start = min(g.vertices)
    # frames: (vertex, iterator over (neighbor, edge))
    disc[start] = low[start] = timer
    timer += 1
    parent_edge[start] = None
    stack = [(start, iter(g.adjacency[start]))]
    root_children = 0
    while stack:
        v, it = stack[-1]
        advanced = False
        for w, e in it:
            if e == parent_edge[v]:
                continue
            if w not in disc:
                disc[w] = low[w] = timer
                timer += 1
                parent_edge[w] = e
                edge_stack.append(e)
                stack.append((w, iter(g.adjacency[w])))
                if v == start:
                    root_children += 1
                advanced = True
                break
            elif disc[w] < disc[v]:
                edge_stack.append(e)
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                # u separates the block just finished
                blk = []
                while True:
                    e = edge_stack.pop()
                    blk.append(e)
                    if e == parent_edge[v]:
                        break
                blocks_edges.append(blk)
                if u != start or root_children > 1:
                    cuts.add(u)

    if g.m == 0:  # single vertex
        return BlockCutTree((frozenset(g.vertices),), frozenset(), (), root)

    blocks = tuple(frozenset(x for e in blk for x in g.edges[e])
                   for blk in blocks_edges)
    # the start vertex is a cut vertex iff it got >= 2 DFS children
    if root_children > 1:
        cuts.add(start)
    incidence = tuple(sorted((c, i) for i, b in enumerate(blocks)
                             for c in cuts if c in b))
    return BlockCutTree(blocks, frozenset(cuts), incidence, root)


def treedepth_decomposition(g: Graph, budget: Optional[int] = None,
                            cap: int = 20) -> Optional[TreedepthDecomposition]:
    """Minimum-depth treedepth decomposition by exhaustive search with
    memoization over vertex subsets.  Returns None if the minimum exceeds
    ``budget``.  Inputs above ``cap`` vertices are rejected; callers may
    supply a decomposition instead."""
    if g.n > cap:
        raise GraphError(f"treedepth search capped at {cap} vertices (n={g.n})")

    memo: dict[frozenset[int], int] = {}
    choice: dict[frozenset[int], int] = {}

    def comps(vs: frozenset[int]) -> list[frozenset[int]]:
        left = set(vs)
        out = []
        while left:
            s = min(left)
            comp = {s}
            stk = [s]
            while stk:
                v = stk.pop()
                for w in g.neighbors(v):
                    if w in vs and w not in comp:
                        comp.add(w)
                        stk.append(w)
            out.append(frozenset(comp))
            left -= comp
        return out

    def td(vs: frozenset[int]) -> int:
        if len(vs) <= 1:
            return len(vs)
        if vs in memo:
            return memo[vs]
        parts = comps(vs)
        if len(parts) > 1:
            memo[vs] = max(td(c) for c in parts)
            return memo[vs]
        best = len(vs)
        best_v = min(vs)
        for v in sorted(vs):
            d = 1 + td(vs - {v})
            if d < best:
                best, best_v = d, v
        memo[vs] = best
        choice[vs] = best_v
        return best

    overall = max((td(c) for c in comps(g.vertices)), default=0)
    if budget is not None and overall > budget:
        return None

    parent: dict[int, int] = {}

    def build(vs: frozenset[int], above: int) -> None:
        for comp in comps(vs):
            if len(comp) == 1:
                (v,) = comp
                parent[v] = above
            elif len(comp) > 1:
                td(comp)
                v = choice[comp]
                parent[v] = above
                build(comp - {v}, v)

    build(g.vertices, -1)
    return TreedepthDecomposition(parent)


def subdivide_all_edges(g: Graph, k: int) -> Graph:
    """Replace every edge by a path of k edges through k-1 fresh vertices.
    Preserves the feedback edge number for every k >= 1."""
    if k < 1:
        raise GraphError("k must be positive")
    if k == 1:
        return g
    nxt = max(g.vertices, default=-1) + 1
    pairs: list[tuple[int, int]] = []
    vlabels = dict(g.vertex_labels)
    for e in sorted(g.edges):
        u, v = g.edges[e]
        chain = [u]
        for _ in range(k - 1):
            chain.append(nxt)
            vlabels[nxt] = f"subdivision:{e}"
            nxt += 1
        chain.append(v)
        pairs.extend(zip(chain, chain[1:]))
    out = Graph.build(pairs, vertices=g.vertices)
    return Graph(out.vertices, out.edges, vlabels, {})
