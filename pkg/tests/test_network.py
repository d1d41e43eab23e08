import pytest

from galledpower.graph_core import Graph
from galledpower.harness import GeneratorConfig, random_gnetwork
from galledpower.network import (GNetwork, InvisibleVertexPresent, graph_square,
                                 induced_subnetwork, inner_cycles, is_basic,
                                 leaf_power, normalize, overlay_stars, relabel_x,
                                 separate_stars, validate)


def net(vs, edges, leaves):
    return GNetwork(Graph(vs, edges), leaves)


def invisible_star(labels):
    u = "#u"
    vs = [u] + [f"#p{i}" for i in range(len(labels))]
    edges = [(u, f"#p{i}") for i in range(len(labels))]
    return net(vs, edges, {f"#p{i}": [x] for i, x in enumerate(labels)})


def n4(labels="abcd"):
    vs = [f"#{i}" for i in range(4)]
    edges = [(vs[i], vs[(i + 1) % 4]) for i in range(4)]
    return net(vs, edges, {vs[i]: [labels[i]] for i in range(4)})


def test_leaf_power_examples():
    star = invisible_star("abc")
    assert leaf_power(star, 4) == Graph("abc", ["ab", "ac", "bc"])
    assert leaf_power(n4(), 4) == Graph("abcd", ["ab", "ac", "ad", "bc", "bd", "cd"])
    cat = net(["#1", "#2", "#3"], [("#1", "#2"), ("#2", "#3")],
              {"#1": ["a"], "#2": ["b"], "#3": ["c"]})
    assert leaf_power(cat, 3) == Graph("abc", ["ab", "bc"])
    assert leaf_power(cat, 4) == Graph("abc", ["ab", "ac", "bc"])


def test_leaf_power_monotone_in_k():
    gen = random_gnetwork(GeneratorConfig(seed=11, leaf_count=(6, 12), cycle_count=(1, 2)))
    for k in (2, 3):
        assert leaf_power(gen, k).edges <= leaf_power(gen, k + 1).edges


def test_is_basic():
    assert is_basic(invisible_star("ab"))
    multi = net(["#v"], [], {"#v": ["a", "b"]})
    assert not is_basic(multi)


def test_validate_examples():
    n5 = net([f"#{i}" for i in range(5)],
             [(f"#{i}", f"#{(i + 1) % 5}") for i in range(5)],
             {f"#{i}": [chr(ord('a') + i)] for i in range(5)})
    assert validate(n5) == []

    shared_edge = net(["#a", "#b", "#c", "#d"],
                      [("#a", "#b"), ("#b", "#c"), ("#c", "#a"),
                       ("#a", "#d"), ("#d", "#b")],
                      {"#a": ["a"], "#b": ["b"], "#c": ["c"], "#d": ["d"]})
    assert any("intersecting" in p for p in validate(shared_edge))

    dup = net(["#a", "#b"], [("#a", "#b")], {"#a": ["x"], "#b": ["x"]})
    assert any("duplicate" in p for p in validate(dup))


def test_normalize_is_oracle_checked():
    base = random_gnetwork(GeneratorConfig(seed=3, leaf_count=(6, 14), cycle_count=(1, 2)))
    out, report = normalize(base)
    assert out == base
    assert report.removed_invisible_edges == 0
    assert report.shortened_cycles == ()


def test_normalize_removes_invisible_pair():
    # a cycle closed through two adjacent invisibles is a removable edge
    vs = ["#a", "#b", "#i1", "#i2", "#t"]
    edges = [("#a", "#b"), ("#b", "#i2"), ("#i2", "#i1"), ("#i1", "#a"),
             ("#a", "#t")]
    perturbed = net(vs, edges, {"#a": ["a"], "#b": ["b"], "#t": ["t"]})
    out, report = normalize(perturbed)
    assert report.removed_invisible_edges >= 1
    assert leaf_power(out, 4) == leaf_power(perturbed, 4)
    assert not inner_cycles(out)


def test_normalize_shortens_one_attach_triangle():
    # triangle with a single attachment vertex carrying the rest of the tree
    vs = ["#a", "#b", "#c", "#t", "#s"]
    edges = [("#a", "#b"), ("#b", "#c"), ("#c", "#a"), ("#a", "#t"), ("#t", "#s")]
    leaves = {"#a": ["a"], "#b": ["b"], "#c": ["c"], "#t": ["t"], "#s": ["s"]}
    n = net(vs, edges, leaves)
    out, report = normalize(n)
    assert len(report.shortened_cycles) == 1
    assert report.shortened_cycles[0][1] == "standard_1"
    assert leaf_power(out, 4) == leaf_power(n, 4)
    assert not inner_cycles(out)


def test_induced_subnetwork_path_and_cycle():
    path = net([f"#{i}" for i in range(5)],
               [(f"#{i}", f"#{i+1}") for i in range(4)],
               {"#0": ["a"], "#4": ["b"]})
    sub = induced_subnetwork(path, ["a", "b"])
    assert sub.inner_graph == path.inner_graph

    four = n4()
    sub = induced_subnetwork(four, ["a", "c"])
    # one of the two arcs survives; distances are preserved
    assert len(sub.inner_vertices) == 3
    assert leaf_power(sub, 4).has_edge("a", "c")
    with pytest.raises(ValueError):
        induced_subnetwork(four, [])


def test_separate_and_overlay_roundtrip():
    for seed in range(1, 12):
        n = random_gnetwork(GeneratorConfig(seed=seed, leaf_count=(5, 16), cycle_count=(0, 2)))
        forest = separate_stars(n)
        assert overlay_stars(forest) == n
        if not inner_cycles(n):
            assert len(forest.trees) == 1


def test_separate_stars_star_count():
    # one 8-cycle, all visible, each vertex with a pendant star
    vs = [f"#c{i}" for i in range(8)] + [f"#s{i}" for i in range(8)]
    edges = [(f"#c{i}", f"#c{(i+1) % 8}") for i in range(8)]
    edges += [(f"#c{i}", f"#s{i}") for i in range(8)]
    leaves = {f"#c{i}": [f"x{i}"] for i in range(8)}
    leaves.update({f"#s{i}": [f"y{i}"] for i in range(8)})
    n = net(vs, edges, leaves)
    forest = separate_stars(n)
    assert len(forest.trees) == 8
    assert overlay_stars(forest) == n


def test_relabel_x_and_square():
    four = n4()
    x = relabel_x(four)
    assert x == Graph("abcd", ["ab", "bc", "cd", "da"])
    assert graph_square(x) == leaf_power(four, 4)
    with pytest.raises(InvisibleVertexPresent):
        relabel_x(invisible_star("ab"))


def test_relabel_x_square_identity_on_random_visible_nets():
    for seed in range(1, 10):
        n = random_gnetwork(GeneratorConfig(
            seed=seed, leaf_count=(5, 14), cycle_count=(0, 2), invisible_density=0.0))
        if n.invisible_vertices():
            continue
        assert graph_square(relabel_x(n)) == leaf_power(n, 4)
