from __future__ import annotations

import pytest

from oneplanar.graph import (
    Graph,
    GraphError,
    LinearOrdering,
    block_cut_tree,
    decompose_degree2_paths,
    feedback_edge_set,
    format_edge_list,
    parse_edge_list,
    prune_degree_one,
    subdivide_all_edges,
    treedepth_decomposition,
)

from conftest import (
    complete_graph,
    cycle_graph,
    longest_path_vertices,
    path_graph,
    random_connected_graph,
    star_graph,
    theta_graph,
)


def test_graph_rejects_loops_and_parallels():
    with pytest.raises(GraphError):
        Graph(frozenset({0}), {0: (0, 0)})
    with pytest.raises(GraphError):
        Graph(frozenset({0, 1}), {0: (0, 1), 1: (1, 0)})
    with pytest.raises(GraphError):
        Graph(frozenset({0}), {0: (0, 1)})


def test_ids_stable_under_subgraph():
    g = Graph.build([(0, 1), (1, 2), (2, 3), (0, 3)])
    h = g.induced_subgraph({0, 1, 2})
    assert set(h.edges) == {e for e, p in g.edges.items()
                            if set(p) <= {0, 1, 2}}
    for e in h.edges:
        assert h.edges[e] == g.edges[e]


def test_prune_degree_one():
    assert prune_degree_one(path_graph(5)).n == 0
    c4 = cycle_graph(4)
    assert prune_degree_one(c4).edges == c4.edges
    pendant = Graph.build([(0, 1), (1, 2), (2, 3), (0, 3), (2, 9)])
    pruned = prune_degree_one(pendant)
    assert pruned.vertices == frozenset({0, 1, 2, 3})
    assert pruned.m == 4


def test_feedback_edge_set():
    assert feedback_edge_set(path_graph(7)).ell == 0
    assert feedback_edge_set(cycle_graph(5)).ell == 1
    assert feedback_edge_set(complete_graph(4)).ell == 3  # m - n + 1
    g = cycle_graph(5)
    fes = feedback_edge_set(g)
    rest = g.subgraph_of_edges(set(g.edges) - fes.edges)
    assert feedback_edge_set(rest).ell == 0


def test_degree2_decomposition_theta():
    g = theta_graph((1, 2, 4))
    d = decompose_degree2_paths(g)
    assert d.p == 3
    assert d.lengths == (1, 2, 4)
    covered = [e for path in d.paths for e in path]
    assert sorted(covered) == sorted(g.edges)


def test_degree2_decomposition_k4_and_cycle():
    d = decompose_degree2_paths(complete_graph(4))
    assert d.p == 6
    assert d.lengths == (1,) * 6

    d = decompose_degree2_paths(cycle_graph(6))
    assert d.p == 1
    assert d.lengths == (6,)
    assert d.is_closed(0)


def test_degree2_decomposition_rejects_degree_one():
    with pytest.raises(GraphError):
        decompose_degree2_paths(path_graph(3))


def test_degree2_path_count_bound(rng):
    # p <= 3*ell - 3 for pruned graphs with ell >= 2 and no cycle components
    for _ in range(60):
        g = prune_degree_one(random_connected_graph(rng, rng.randint(5, 12),
                                                    rng.randint(2, 5)))
        if g.n == 0:
            continue
        ell = feedback_edge_set(g).ell
        d = decompose_degree2_paths(g)
        if ell >= 2 and not any(d.is_closed(i) for i in range(d.p)):
            assert d.p <= 3 * ell - 3
        assert sorted(e for path in d.paths for e in path) == sorted(g.edges)


def test_block_cut_tree_examples():
    two_triangles = Graph.build([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    b = block_cut_tree(two_triangles)
    assert len(b.blocks) == 2
    assert b.cut_vertices == frozenset({2})

    b = block_cut_tree(complete_graph(4))
    assert len(b.blocks) == 1
    assert b.cut_vertices == frozenset()

    b = block_cut_tree(path_graph(3))
    assert sorted(map(sorted, b.blocks)) == [[0, 1], [1, 2]]
    assert b.cut_vertices == frozenset({1})


def test_block_cut_tree_rejects_disconnected():
    g = Graph.build([(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        block_cut_tree(g)


def test_block_sum_identity(rng):
    # sum over blocks of (|block|-1) == |V|-1 for connected graphs
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(2, 10), rng.randint(0, 4))
        b = block_cut_tree(g)
        assert sum(len(blk) - 1 for blk in b.blocks) == g.n - 1


def test_treedepth_examples():
    assert treedepth_decomposition(path_graph(4)).depth == 3  # ceil(log2(5))
    assert treedepth_decomposition(complete_graph(3)).depth == 3
    assert treedepth_decomposition(star_graph(5)).depth == 2


def test_treedepth_budget_and_cap():
    assert treedepth_decomposition(path_graph(4), budget=2) is None
    assert treedepth_decomposition(path_graph(4), budget=3) is not None
    with pytest.raises(GraphError):
        treedepth_decomposition(path_graph(25))


def test_treedepth_validates(rng):
    for _ in range(25):
        g = random_connected_graph(rng, rng.randint(2, 8), rng.randint(0, 4))
        t = treedepth_decomposition(g)
        t.validate(g)
        # every simple path has < 2^d vertices
        assert longest_path_vertices(g) < 2 ** t.depth


def test_subdivide_examples():
    k3 = complete_graph(3)
    assert subdivide_all_edges(k3, 1).edges == k3.edges
    c6 = subdivide_all_edges(k3, 2)
    assert (c6.n, c6.m) == (6, 6)
    assert all(c6.degree(v) == 2 for v in c6.vertices)

    g = subdivide_all_edges(complete_graph(4), 3)
    assert (g.n, g.m) == (16, 18)
    assert feedback_edge_set(g).ell == 3


def test_subdivide_preserves_ell(rng):
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(3, 8), rng.randint(0, 5))
        ell = feedback_edge_set(g).ell
        for k in (1, 2, 3, 4):
            assert feedback_edge_set(subdivide_all_edges(g, k)).ell == ell


def test_edge_list_round_trip():
    text = "# comment\n0 1\n\n2 1  # trailing\n"
    g = parse_edge_list(text)
    assert g.m == 2
    canon = format_edge_list(g)
    assert canon == "0 1\n1 2\n"
    assert format_edge_list(parse_edge_list(canon)) == canon


def test_linear_ordering():
    g = path_graph(4)
    sigma = LinearOrdering({v: v + 1 for v in range(4)})
    assert sigma.bandwidth(g) == 1
    with pytest.raises(GraphError):
        LinearOrdering({0: 1, 1: 1})
