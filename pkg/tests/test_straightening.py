from __future__ import annotations

import pytest

from oneplanar.embedding import build_embedding
from oneplanar.graph import Graph, GraphError
from oneplanar.straightening import (
    LMRWord,
    find_bw_configurations,
    is_straightenable,
    lmr_word,
)

from test_embedding import k4_planar, k5_one_crossing


def minimal_b(outer=(0, 0, 0)):
    """Edge ab plus one (a,b)-crossing pair with both far endpoints tucked
    inside; a=0 b=1 a'=2 b'=3, dummy 4.  Edge ids: (0,1)=0 (0,2)=1 (1,3)=2."""
    g = Graph.build([(0, 1), (0, 2), (1, 3)])
    rotation = {
        0: [(0, 0, 0), (1, 0, 0)],
        1: [(2, 0, 0), (0, 1, 0)],
        2: [(1, 1, 1)],
        3: [(2, 1, 1)],
        4: [(1, 1, 0), (2, 0, 1), (1, 0, 1), (2, 1, 0)],
    }
    return build_embedding(g, [(1, 2)], rotation, outer=outer)


def minimal_w():
    """Two (a,b)-crossing pairs, all four far endpoints inside; a=0 b=1.
    Edge ids: (0,2)=0 (0,4)=1 (1,3)=2 (1,5)=3; dummies 6, 7."""
    g = Graph.build([(0, 2), (0, 4), (1, 3), (1, 5)])
    rotation = {
        0: [(1, 0, 0), (0, 0, 0)],
        1: [(2, 0, 0), (3, 0, 0)],
        2: [(0, 1, 1)],
        3: [(2, 1, 1)],
        4: [(1, 1, 1)],
        5: [(3, 1, 1)],
        6: [(0, 1, 0), (2, 0, 1), (0, 0, 1), (2, 1, 0)],
        7: [(3, 1, 0), (1, 0, 1), (3, 0, 1), (1, 1, 0)],
    }
    return build_embedding(g, [(0, 2), (1, 3)], rotation, outer=(1, 0, 0))


def _figure_embedding(c1_rotation, c2_rotation):
    """The three-strand figure: a=0 b=1, edge ab, one crossing pair per side.
    Edge ids: (0,1)=0 (0,2)=1 (0,4)=2 (1,3)=3 (1,5)=4; dummies 6, 7."""
    g = Graph.build([(0, 1), (0, 2), (0, 4), (1, 3), (1, 5)])
    rotation = {
        0: [(2, 0, 0), (0, 0, 0), (1, 0, 0)],
        1: [(3, 0, 0), (0, 1, 0), (4, 0, 0)],
        2: [(1, 1, 1)],
        3: [(3, 1, 1)],
        4: [(2, 1, 1)],
        5: [(4, 1, 1)],
        6: c1_rotation,
        7: c2_rotation,
    }
    return build_embedding(g, [(1, 3), (2, 4)], rotation, outer=(2, 0, 0))


def figure_lmr():
    return _figure_embedding(
        [(1, 1, 0), (3, 1, 0), (1, 0, 1), (3, 0, 1)],   # right-crossing
        [(2, 1, 0), (4, 0, 1), (2, 0, 1), (4, 1, 0)])   # left-crossing


def figure_rml():
    return _figure_embedding(
        [(1, 1, 0), (3, 0, 1), (1, 0, 1), (3, 1, 0)],   # left-crossing
        [(2, 1, 0), (4, 1, 0), (2, 0, 1), (4, 0, 1)])   # right-crossing


def single_left_pair():
    g = Graph.build([(0, 2), (1, 3)])
    rotation = {
        0: [(0, 0, 0)],
        1: [(1, 0, 0)],
        2: [(0, 1, 1)],
        3: [(1, 1, 1)],
        4: [(0, 1, 0), (1, 0, 1), (0, 0, 1), (1, 1, 0)],
    }
    return build_embedding(g, [(0, 1)], rotation, outer=(0, 0, 0))


# ---------------------------------------------------------------------------
# B / W detection
# ---------------------------------------------------------------------------

def test_minimal_b_detected():
    configs = find_bw_configurations(minimal_b())
    assert [c.kind for c in configs] == ["B"]
    assert configs[0].anchors == (0, 1)
    assert not is_straightenable(minimal_b())


def test_b_is_outer_face_sensitive():
    # re-rooting the outer face to the bounded side eliminates the B
    inside = minimal_b(outer=(1, 0, 0))
    assert find_bw_configurations(inside) == []
    assert is_straightenable(inside)


def test_minimal_w_detected():
    configs = find_bw_configurations(minimal_w())
    assert [c.kind for c in configs] == ["W"]
    assert configs[0].anchors == (0, 1)


def test_crossing_free_embeddings_are_clean():
    assert find_bw_configurations(k4_planar()) == []
    assert is_straightenable(k4_planar())


def test_k5_straight_line_drawing_straightenable():
    assert is_straightenable(k5_one_crossing())


# ---------------------------------------------------------------------------
# LMR words (figure reproduction)
# ---------------------------------------------------------------------------

def test_figure_lmr_clean():
    emb = figure_lmr()
    word = lmr_word(emb, 0, 1)
    assert word.word == "LMR"
    assert word.matches_pattern()
    assert find_bw_configurations(emb) == []


def test_figure_rml_two_b_one_w():
    emb = figure_rml()
    word = lmr_word(emb, 0, 1)
    assert word.word == "RML"
    assert not word.matches_pattern()
    configs = find_bw_configurations(emb)
    kinds = sorted(c.kind for c in configs)
    assert kinds == ["B", "B", "W"]
    assert set(word.bad_subwords()) == {"RL", "RM", "ML"}


def test_single_left_pair_word():
    emb = single_left_pair()
    word = lmr_word(emb, 0, 1)
    assert word.word == "L"
    assert word.matches_pattern()
    assert find_bw_configurations(emb) == []


def test_lmr_word_rejects_foreign_edges():
    with pytest.raises(GraphError):
        lmr_word(k5_one_crossing(), 0, 1)


def test_restriction_of_straightenable_is_clean():
    # restricting a straightenable embedding to the edges of an anchored
    # crossing pair (plus the anchor edge) keeps it free of configurations
    from oneplanar.embedding import restrict

    emb = k5_one_crossing()
    assert is_straightenable(emb)
    g = emb.graph
    (e1, e2) = emb.crossings[0].edges
    for a in g.edges[e1]:
        for b in g.edges[e2]:
            keep = {e1, e2}
            ab = g.edge_between(a, b)
            if ab is not None:
                keep.add(ab)
            sub = restrict(emb, keep)
            assert find_bw_configurations(sub) == []
            word = lmr_word(sub, a, b)
            assert word.matches_pattern()


def test_pattern_matcher():
    assert LMRWord("", (0, 0, 0)).matches_pattern()
    assert LMRWord("LLRR", (0, 0, 0)).matches_pattern()
    assert LMRWord("LMR", (0, 0, 0)).matches_pattern()
    assert not LMRWord("RL", (0, 0, 0)).matches_pattern()
    assert not LMRWord("MM", (0, 0, 0)).matches_pattern()
    assert not LMRWord("LRL", (0, 0, 0)).matches_pattern()
