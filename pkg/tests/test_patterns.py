"""Pattern detection and root catalogues, exercised through known root shapes."""

import pytest

from galledpower import patterns as P
from galledpower.clique_graph import build_mc
from galledpower.graph_core import Graph
from galledpower.network import GNetwork, inner_cycles, leaf_power, validate


def make_net(cycle_spec, attach=(), deep=()):
    """cycle_spec: (name, leaf|None) tuples; attach: names getting a pendant
    star; deep: (name, leaf, extras) for grandchild stars."""
    vs, edges, leaves = [], [], {}
    names = [c[0] for c in cycle_spec]
    for nm, lf in cycle_spec:
        vs.append("#" + nm)
        if lf:
            leaves["#" + nm] = [lf]
    for i in range(len(names)):
        edges.append(("#" + names[i], "#" + names[(i + 1) % len(names)]))
    for nm in attach:
        w = f"#x{nm}{len(vs)}"
        vs.append(w)
        edges.append(("#" + nm, w))
        leaves[w] = [f"e_{nm}{len(vs)}"]
    for nm, leaf, extras in deep:
        w = f"#d{nm}"
        vs.append(w)
        edges.append(("#" + nm, w))
        leaves[w] = [leaf]
        for t in range(extras):
            z = f"#dd{nm}{t}"
            vs.append(z)
            edges.append((w, z))
            leaves[z] = [f"f_{nm}{t}"]
    return GNetwork(Graph(vs, edges), leaves)


F, T = False, True

SHAPES = {
    "C1": make_net([("a", "xa"), ("b", "xb"), ("c", "xc")], attach="abc"),
    "C9": make_net([("a", "xa"), ("b", "xb"), ("c", "xc")], attach="ab"),
    "C2": make_net([("a", "xa"), ("b", "xb"), ("c", "xc"), ("d", "xd")], attach="ab"),
    "C3": make_net([(c, "x" + c) for c in "abcdef"]),
    "CPrime": make_net(
        [("a", "xa"), ("i", None), ("b", "xb"), ("j", None),
         ("c", "xc"), ("k", None), ("d", "xd"), ("l", None)], attach="i"),
    "C8": make_net([("a", "xa"), ("b", "xb"), ("u", None)], attach="abu"),
    "C4": make_net([("u", None), ("a", "xa"), ("b", "xb"), ("c", "xc")], attach="uabc"),
    "C6": make_net([("a", "xa"), ("b", "xb"), ("c", "xc"), ("d", "xd"),
                    ("e", "xe"), ("u", None)]),
    "C5": make_net([("a", "xa"), ("u", None), ("b", "xb"), ("v", None),
                    ("c", "xc"), ("d", "xd")], attach=["u", "a"]),
    "C7": make_net([("u", None), ("a", "xa"), ("m", "xm"), ("b", "xb")],
                   attach=["u"], deep=[("m", "D", 1)]),
}


@pytest.mark.parametrize("kind", sorted(SHAPES))
def test_detection_finds_each_kind(kind):
    n = SHAPES[kind]
    cg = build_mc(leaf_power(n, 4))
    easy = P.detect_easy(cg)
    assert isinstance(easy, list)
    pats = easy + P.detect_other(cg, easy)
    assert kind in {p.kind for p in pats}


@pytest.mark.parametrize("kind", sorted(SHAPES))
def test_root_candidates_satisfy_invariant(kind):
    n = SHAPES[kind]
    g = leaf_power(n, 4)
    cg = build_mc(g)
    easy = P.detect_easy(cg)
    pats = easy + P.detect_other(cg, easy)
    easy_roots = {}
    for p in pats:
        if p.kind in P.EASY_KINDS:
            easy_roots[p.nodes] = P.easy_root(cg, p)
    for p in pats:
        if p.kind in P.EASY_KINDS:
            cands = [easy_roots[p.nodes]]
        else:
            cands = P.root_set(cg, p, pats, easy_roots).candidates
            assert cands, f"empty root set for {p.kind}"
        for cand in cands:
            assert validate(cand.network) == []
            ground = p.ground(cg)
            assert leaf_power(cand.network, 4) == g.subgraph(ground)
            assert len(inner_cycles(cand.network)) <= 1
            if cand.has_cycle():
                got = set()
                for v in cand.cycle:
                    got.update(cand.network.leaves_of(v))
                assert frozenset(got) == cand.cycle_labels


def test_easy_root_unique_per_pattern():
    n = SHAPES["CPrime"]
    cg = build_mc(leaf_power(n, 4))
    easy = P.detect_easy(cg)
    p = [q for q in easy if q.kind == "CPrime"][0]
    r1 = P.easy_root(cg, p)
    r2 = P.easy_root(cg, p)
    assert r1.network == r2.network


def test_ext_examples():
    n = SHAPES["C9"]
    cg = build_mc(leaf_power(n, 4))
    easy = P.detect_easy(cg)
    pats = easy + P.detect_other(cg, easy)
    p = [q for q in pats if q.kind == "C9"][0]
    assert P.ext(cg, p) == frozenset(p.nodes)  # isolated pattern

    # pattern with a pendant neighbor and its neighbor: both in ext
    n7 = SHAPES["C7"]
    cg7 = build_mc(leaf_power(n7, 4))
    easy7 = P.detect_easy(cg7)
    pats7 = easy7 + P.detect_other(cg7, easy7)
    p7 = [q for q in pats7 if q.kind == "C7"][0]
    assert set(p7.nodes) <= P.ext(cg7, p7)


def test_detect_cut_shapes():
    # C11: 4-cycle with two invisibles, cut vertex on the cycle
    vs = ["#px", "#u1", "#pw", "#u2", "#e1", "#e2"]
    edges = [("#px", "#u1"), ("#u1", "#pw"), ("#pw", "#u2"), ("#u2", "#px"),
             ("#e1", "#u1"), ("#e2", "#u2")]
    leaves = {"#px": ["x"], "#pw": ["w"], "#e1": ["e1"], "#e2": ["e2"]}
    n = GNetwork(Graph(vs, edges), leaves)
    cg = build_mc(leaf_power(n, 4))
    easy = P.detect_easy(cg)
    cut = P.detect_cut(cg, frozenset(["x"]), easy + P.detect_other(cg, easy))
    kinds = {p.kind for p in cut}
    assert "C11" in kinds
    rs = P.root_set(cg, [p for p in cut if p.kind == "C11"][0], cut, {})
    ids = {c.catalogue_id for c in rs.candidates}
    assert any(i.startswith("R11,1") for i in ids)
    assert any(i.startswith("R11,2") for i in ids)
    flags = {(c.c_flag("x"), c.i_flag("x")) for c in rs.candidates}
    assert (False, True) in flags  # cycle through p(x), invisible neighbors
    assert (True, False) in flags  # tree root

    # no cut vertices: nothing detected
    assert P.detect_cut(cg, frozenset(), easy) == []


def test_detect_c10():
    vs = ["#u", "#a", "#b", "#x", "#ea"]
    edges = [("#u", "#a"), ("#a", "#b"), ("#b", "#u"), ("#x", "#u"), ("#ea", "#a")]
    leaves = {"#a": ["xa"], "#b": ["xb"], "#x": ["x"], "#ea": ["ea"]}
    n = GNetwork(Graph(vs, edges), leaves)
    cg = build_mc(leaf_power(n, 4))
    easy = P.detect_easy(cg)
    cut = P.detect_cut(cg, frozenset(["x"]), easy + P.detect_other(cg, easy))
    c10 = [p for p in cut if p.kind == "C10"]
    assert c10
    rs = P.root_set(cg, c10[0], cut, {})
    assert any(c.i_flag("x") and c.has_cycle() for c in rs.candidates)
    assert any(not c.has_cycle() for c in rs.candidates)
