import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galledpower.graph_core import (OVERFLOW, DisconnectedInput, Graph, blocks,
                                    chordless_cycles_upto, connected_components,
                                    critical_cliques, is_gnetwork_class,
                                    maximal_cliques)


def G(vs, es):
    return Graph(vs, es)


def test_connected_components_examples():
    assert connected_components(Graph()) == []
    k3 = G("abc", ["ab", "ac", "bc"])
    assert connected_components(k3) == [k3]
    two = G("abcd", ["ab", "cd"])
    comps = connected_components(two)
    assert [sorted(c.vertices) for c in comps] == [["a", "b"], ["c", "d"]]


def test_blocks_examples():
    tri = blocks(G("abc", ["ab", "ac", "bc"]))
    assert tri.blocks == (frozenset("abc"),)
    assert not tri.cut_vertices

    path = blocks(G("abc", ["ab", "bc"]))
    assert sorted(sorted(b) for b in path.blocks) == [["a", "b"], ["b", "c"]]
    assert path.cut_vertices == frozenset("b")

    bowtie = blocks(G("abxde", ["ax", "bx", "ab", "xd", "xe", "de"]))
    assert len(bowtie.blocks) == 2
    assert bowtie.cut_vertices == frozenset("x")
    # block tree is a path: block - x - block
    assert len(bowtie.block_tree.vertices) == 3
    assert len(bowtie.block_tree.edges) == 2


def test_blocks_requires_connected():
    with pytest.raises(DisconnectedInput):
        blocks(G("abcd", ["ab", "cd"]))


def test_blocks_edge_partition_property():
    g = G("abcdef", ["ab", "bc", "ca", "cd", "de", "ef", "fd"])
    dec = blocks(g)
    counted = sum(len(e) for e in dec.block_edges)
    assert counted == len(g.edges)
    non_cut = set(g.vertices) - dec.cut_vertices
    for v in non_cut:
        assert sum(1 for b in dec.blocks if v in b) == 1


def test_critical_cliques_examples():
    kn = critical_cliques(G("abcd", ["ab", "ac", "ad", "bc", "bd", "cd"]))
    assert kn.classes == (("a", "b", "c", "d"),)
    assert len(kn.quotient) == 1

    p4 = critical_cliques(G("abcd", ["ab", "bc", "cd"]))
    assert all(len(c) == 1 for c in p4.classes)
    assert p4.quotient == G("abcd", ["ab", "bc", "cd"])

    g = critical_cliques(G("abcd", ["ab", "ac", "bc", "bd", "cd"]))
    assert g.classes == (("a",), ("b", "c"), ("d",))
    assert g.quotient == G("abd", ["ab", "bd"])


def _expand(cc):
    vertices = [v for cls in cc.classes for v in cls]
    edges = []
    for cls in cc.classes:
        edges.extend(itertools.combinations(cls, 2))
    reps = [cls[0] for cls in cc.classes]
    for i, j in cc.quotient.sorted_edges():
        for u in cc.members(i):
            for v in cc.members(j):
                edges.append((u, v))
    return Graph(vertices, edges)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 7), st.data())
def test_critical_cliques_contract_expand(n, data):
    verts = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(verts, 2))
    mask = data.draw(st.integers(0, 2 ** len(pairs) - 1))
    g = Graph(verts, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
    cc = critical_cliques(g)
    assert _expand(cc) == g


def _naive_maximal_cliques(g):
    vs = list(g.vertices)
    out = []
    for r in range(1, len(vs) + 1):
        for group in itertools.combinations(vs, r):
            if g.is_clique(group):
                out.append(set(group))
    return sorted(
        tuple(sorted(c)) for c in out
        if not any(c < other for other in out)
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.data())
def test_maximal_cliques_agree_with_naive(n, data):
    verts = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(verts, 2))
    mask = data.draw(st.integers(0, 2 ** len(pairs) - 1))
    g = Graph(verts, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
    assert maximal_cliques(g) == _naive_maximal_cliques(g)


def test_maximal_cliques_overflow():
    c4 = G("abcd", ["ab", "bc", "cd", "da"])
    assert maximal_cliques(c4) == [("a", "b"), ("a", "d"), ("b", "c"), ("c", "d")]
    assert maximal_cliques(c4, 3) is OVERFLOW
    assert maximal_cliques(
        G("abcd", ["ab", "ac", "ad", "bc", "bd", "cd"])) == [("a", "b", "c", "d")]


def _brute_gnetwork_class(g):
    # cycles in distinct blocks may share a cut vertex; anything more means
    # two chordless cycles inside one block
    if len(g) == 0 or not g.is_connected():
        return False
    cycles = chordless_cycles_upto(g)
    for c1, c2 in itertools.combinations(cycles, 2):
        if len(set(c1) & set(c2)) > 1:
            return False
    return True


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data())
def test_is_gnetwork_class_matches_brute(n, data):
    verts = [chr(ord("a") + i) for i in range(n)]
    pairs = list(itertools.combinations(verts, 2))
    mask = data.draw(st.integers(0, 2 ** len(pairs) - 1))
    g = Graph(verts, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
    assert is_gnetwork_class(g) == _brute_gnetwork_class(g)


def test_is_gnetwork_class_examples():
    assert is_gnetwork_class(G("abcd", ["ab", "bc", "cd"]))
    two_c4 = G("abcdefg", ["ab", "bc", "cd", "da", "de", "ef", "fg", "gd"])
    assert is_gnetwork_class(two_c4)
    assert not is_gnetwork_class(G("abcd", ["ab", "ac", "ad", "bc", "bd", "cd"]))
