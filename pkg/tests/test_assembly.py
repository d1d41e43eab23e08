import pytest

from galledpower.assembly import (NotSquare, Slot, choose_subroots,
                                  square_forest_root, subtract, tree_spec_graph)
from galledpower.clique_graph import build_mc
from galledpower.graph_core import Graph
from galledpower.network import GNetwork, graph_square, leaf_power
from galledpower.patterns import RootCandidate


def test_square_forest_root_p5():
    p5 = Graph("abcde", ["ab", "bc", "cd", "de"])
    h = graph_square(p5)
    spec = square_forest_root(h, {})
    assert graph_square(tree_spec_graph(spec)) == h
    # three maximal cliques force the unique root, which is P5 itself
    assert tree_spec_graph(spec) == p5


def test_square_forest_root_k2():
    spec = square_forest_root(Graph("ab", ["ab"]), {})
    assert spec.stars[0].middle == ("visible", "a")  # smallest label wins


def test_square_forest_root_c4_rejected():
    with pytest.raises(NotSquare):
        square_forest_root(Graph("abcd", ["ab", "bc", "cd", "da"]), {})


def test_square_forest_root_two_cliques_constraint():
    g = graph_square(Graph("abcd", ["ab", "bc", "cd"]))  # two cliques share {b, c}
    forced = square_forest_root(g, {frozenset("abc"): ("visible", "b")})
    middles = {s.members: s.middle[1] for s in forced.stars}
    assert middles[("a", "b", "c")] == "b"
    other = square_forest_root(g, {frozenset("abc"): ("visible", "c")})
    middles = {s.members: s.middle[1] for s in other.stars}
    assert middles[("a", "b", "c")] == "c"
    with pytest.raises(NotSquare):
        square_forest_root(g, {frozenset("abc"): ("visible", "a")})


def _candidate(labels, cycle_parents, invisible=(), catalogue="t"):
    """Tiny network; the cycle alternates labeled parents with invisibles."""
    vs = [f"#p_{x}" for x in labels] + [f"#u{i}" for i in range(len(invisible))]
    order = []
    for i, x in enumerate(cycle_parents):
        order.append(f"#p_{x}")
        if i < len(invisible):
            order.append(f"#u{i}")
    edges = []
    for i in range(len(order)):
        if len(order) >= 3:
            edges.append((order[i], order[(i + 1) % len(order)]))
    if not edges and len(vs) >= 2:
        edges = [(vs[0], vs[1])]
    g = Graph(vs, edges)
    net = GNetwork(g, {f"#p_{x}": [x] for x in labels})
    cycle = tuple(order) if len(order) >= 3 else ()
    return RootCandidate(net, cycle, catalogue)


def test_choose_subroots_flag_table():
    # block 0 demands i=True at x through its only candidate (x's parent on a
    # cycle of invisibles); block 1 offers both; the pair must satisfy the
    # disjunctions
    cyc = _candidate("xw", "xw", invisible=("u1", "u2"))
    assert cyc.i_flag("x") and not cyc.c_flag("x")
    tree = _candidate("xy", ())
    assert not tree.i_flag("x") and tree.c_flag("x")

    from galledpower.patterns import Pattern

    p0 = Pattern("C11", (0, 1), ("x",))
    p1 = Pattern("C11", (0, 1), ("x",))
    slots = [
        Slot(0, p0, frozenset("xw"), (cyc,)),
        Slot(1, p1, frozenset("xy"), (cyc, tree)),
    ]
    combos = list(choose_subroots(slots, frozenset(), {"x": [0, 1]}))
    assert combos, "compatible assignment must exist"
    first = combos[0]
    # block 0 keeps the cycle (c=False), so block 1 must pick c=True
    assert first[1].c_flag("x")

    # both blocks insisting on c=False at x is impossible
    slots_bad = [
        Slot(0, p0, frozenset("xw"), (cyc,)),
        Slot(1, p1, frozenset("xy"), (cyc,)),
    ]
    assert list(choose_subroots(slots_bad, frozenset(), {"x": [0, 1]})) == []


def test_choose_subroots_cycle_disjointness():
    from galledpower.patterns import Pattern

    c1 = _candidate("ab", "ab", invisible=("u",))
    c2 = _candidate("bc", "bc", invisible=("u",))
    p0 = Pattern("C8", (0,))
    p1 = Pattern("C8", (1,))
    slots = [Slot(0, p0, frozenset("ab"), (c1,)),
             Slot(0, p1, frozenset("bc"), (c2,))]
    # cycles share label b: no assignment
    assert list(choose_subroots(slots, frozenset(), {})) == []


def test_subtract_removes_carrier_and_star_edges():
    # C2 shape: N4 with two stars; after subtraction the two star cliques
    # separate and carry forced middles
    vs = [f"#{i}" for i in range(4)] + ["#s1", "#s2"]
    edges = [(f"#{i}", f"#{(i + 1) % 4}") for i in range(4)]
    edges += [("#0", "#s1"), ("#1", "#s2")]
    leaves = {f"#{i}": [c] for i, c in enumerate("abcd")}
    leaves.update({"#s1": ["e"], "#s2": ["f"]})
    n = GNetwork(Graph(vs, edges), leaves)
    g = leaf_power(n, 4)
    cg = build_mc(g)
    from galledpower import patterns as P

    easy = P.detect_easy(cg)
    c2 = [p for p in easy if p.kind == "C2"][0]
    cand = P.easy_root(cg, c2)
    comps, constraints = subtract(cg, [cand])
    assert len(comps) == 2
    assert all(len(c.vertices) == 4 for c in comps)
    kinds = sorted(v for _, v in constraints.values())
    assert kinds == ["a", "b"]  # the two star middles sit on the cycle


def test_subtract_empty_choice_keeps_graph():
    g = Graph("abc", ["ab", "bc", "ac"])
    cg = build_mc(g)
    comps, constraints = subtract(cg, [])
    assert len(comps) == 1 and comps[0] == g
    assert constraints == {}
