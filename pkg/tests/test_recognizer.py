import pytest

from galledpower.graph_core import Graph, critical_cliques, is_gnetwork_class
from galledpower.harness import GeneratorConfig, random_gnetwork
from galledpower.network import GNetwork, graph_square, leaf_power, relabel_x
from galledpower.recognizer import (LabelMismatch, recognize, recognize_square,
                                    verify, verify_forest)


def K(n):
    vs = [chr(ord("a") + i) for i in range(n)]
    return Graph(vs, [u + v for u in vs for v in vs if u < v])


def C(n):
    vs = [chr(ord("a") + i) for i in range(n)]
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def test_k2_examples():
    assert recognize(K(4), 2).is_power
    assert not recognize(Graph("abc", ["ab", "bc"]), 2).is_power
    two_cliques = Graph("abcd", ["ab", "cd"])
    res = recognize(two_cliques, 2)
    assert res.is_power and len(res.roots) == 2


def test_k3_examples():
    res = recognize(C(5), 3)
    assert res.is_power
    assert verify(res.root, C(5), 3)

    shared_one = Graph("abcdefg",
                       ["ab", "bc", "cd", "da", "de", "ef", "fg", "gd"])
    assert recognize(shared_one, 3).is_power
    shared_two = Graph("abcdef",
                       ["ab", "bc", "cd", "da", "ae", "ef", "fd", "ad"])
    # two 4-cycles sharing the edge ad
    assert not recognize(shared_two, 3).is_power


def test_k4_generated_round_trip():
    for seed in (2, 9, 23, 77):
        n = random_gnetwork(GeneratorConfig(seed=seed, leaf_count=(5, 25),
                                            cycle_count=(0, 3), stratified=True))
        g = leaf_power(n, 4)
        res = recognize(g, 4)
        assert res.is_power, res.evidence and res.evidence.render()
        assert verify_forest(res.roots, g, 4)


def test_recognize_disconnected_components():
    n1 = random_gnetwork(GeneratorConfig(seed=4, leaf_count=(4, 8)))
    g1 = leaf_power(n1, 4)
    shifted = {v: f"z{v}" for v in g1.vertices}
    g2 = Graph(shifted.values(),
               [(shifted[u], shifted[v]) for u, v in g1.sorted_edges()])
    union = Graph(list(g1.vertices) + list(g2.vertices),
                  list(g1.sorted_edges()) + list(g2.sorted_edges()))
    res = recognize(union, 4)
    assert res.is_power and len(res.roots) == 2
    assert verify_forest(res.roots, union, 4)


def test_cc_reduction_monotone():
    # blowing vertices into true-twin classes never changes the verdict
    for seed in (3, 8):
        n = random_gnetwork(GeneratorConfig(seed=seed, leaf_count=(4, 10),
                                            cycle_count=(0, 2)))
        g = leaf_power(n, 4)
        doubled_edges = list(g.sorted_edges())
        extra = []
        v0 = g.vertices[0]
        clone = v0 + "_twin"
        for w in g.adj(v0):
            extra.append((clone, w))
        extra.append((clone, v0))
        g2 = Graph(list(g.vertices) + [clone], doubled_edges + extra)
        r1, r2 = recognize(g, 4), recognize(g2, 4)
        assert r1.is_power == r2.is_power


def test_verify_examples():
    star = GNetwork(
        Graph(["#u", "#a", "#b", "#c"], [("#u", "#a"), ("#u", "#b"), ("#u", "#c")]),
        {"#a": ["a"], "#b": ["b"], "#c": ["c"]},
    )
    assert verify(star, K(3), 4)
    assert not verify(star, Graph("abc", ["ab", "bc"]), 4)
    with pytest.raises(LabelMismatch):
        verify(star, Graph("xyz", ["xy"]), 4)


def test_determinism_byte_identical():
    from galledpower.cli import serialize_forest

    n = random_gnetwork(GeneratorConfig(seed=31, leaf_count=(6, 18),
                                        cycle_count=(1, 2), stratified=True))
    g = leaf_power(n, 4)
    a = serialize_forest(recognize(g, 4).roots)
    b = serialize_forest(recognize(g, 4).roots)
    assert a == b


def test_recognize_square_examples():
    p5 = Graph("abcde", ["ab", "bc", "cd", "de"])
    sq = graph_square(p5)
    res = recognize_square(sq)
    assert res.is_power
    assert not res.root.invisible_vertices()
    assert graph_square(relabel_x(res.root)) == sq

    c8 = C(8)
    sq8 = graph_square(c8)
    res8 = recognize_square(sq8)
    assert res8.is_power
    assert graph_square(relabel_x(res8.root)) == sq8

    assert not recognize_square(C(4)).is_power
    k23 = Graph("abcde", ["ac", "ad", "ae", "bc", "bd", "be"])
    assert not recognize_square(k23).is_power


def test_recognize_square_requires_biconnected_quotient():
    p3 = Graph("abc", ["ab", "bc"])
    res = recognize_square(p3)
    assert not res.is_power
    assert res.evidence.stage == "NotBiconnected"


def test_evidence_stages():
    # an edge inside too many maximal cliques trips admissibility
    g = Graph("xyabcd", ["xy", "xa", "ya", "xb", "yb", "xc", "yc", "xd", "yd"])
    res = recognize(g, 4)
    if not res.is_power:
        assert res.evidence.stage in ("AdmissibilityViolation", "TooManyCliques",
                                      "BadCliqueBlock", "EmptyRootSet",
                                      "NoCompatibleChoice", "NotSquareComponent")
