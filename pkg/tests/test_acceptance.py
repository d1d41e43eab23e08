"""Acceptance suite: every criterion printed as its own pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; plain `pytest` runs the same checks silently.
"""

import math
import os
import random
import time
from dataclasses import replace

import pytest

from galledpower.clique_graph import build_mc
from galledpower.evidence import NotPowerEvidence
from galledpower.graph_core import (OVERFLOW, Graph, critical_cliques,
                                    is_gnetwork_class, maximal_cliques)
from galledpower.harness import (GeneratorConfig, graph6, random_gnetwork,
                                 round_trip)
from galledpower.network import (GNetwork, graph_square, inner_cycles,
                                 leaf_power, normalize, relabel_x, validate)
from galledpower.recognizer import recognize, recognize_square, verify_forest

FIXTURE = os.path.join(os.path.dirname(__file__), "fixtures", "small_verdicts.tsv")

ACCEPT_CFG = GeneratorConfig(seed=1, leaf_count=(4, 40), cycle_count=(0, 3),
                             stratified=True)


def _report(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_1_round_trip_k4():
    t0 = time.time()
    rep = round_trip(ACCEPT_CFG, 1000, 4)
    elapsed = time.time() - t0
    _report(
        "criterion 1: 1000/1000 k=4 round trips recognized and verified",
        rep.ok and rep.trials == 1000,
        f"{elapsed:.1f}s, failures={list(rep.failures)[:3]}",
    )
    _report("criterion 1: runtime under 60 seconds", elapsed < 60.0,
            f"{elapsed:.1f}s")
    # stash for criterion 3
    test_criterion_1_round_trip_k4.report = rep


def test_criterion_2_round_trip_k3():
    rep = round_trip(ACCEPT_CFG, 1000, 3)
    _report("criterion 2: 1000/1000 k=3 round trips recognized and verified",
            rep.ok, f"failures={list(rep.failures)[:3]}")
    disagreements = 0
    for t in range(0, 1000, 7):
        n = random_gnetwork(replace(ACCEPT_CFG, seed=ACCEPT_CFG.seed + t))
        g = leaf_power(n, 3)
        quotient_ok = all(
            is_gnetwork_class(critical_cliques(comp).quotient)
            for comp in [g.subgraph(c.vertices) for c in
                         __import__("galledpower.graph_core", fromlist=["x"]
                                    ).connected_components(g)]
        )
        if recognize(g, 3).is_power != quotient_ok:
            disagreements += 1
    _report("criterion 2: verdicts equal the critical-clique class test",
            disagreements == 0, f"{disagreements} disagreements")


def test_criterion_3_clique_bound():
    violations = []
    for t in range(1000):
        n = random_gnetwork(replace(ACCEPT_CFG, seed=ACCEPT_CFG.seed + t))
        g = leaf_power(n, 4)
        cliques = maximal_cliques(g, max(1, 3 * len(g.edges)))
        if cliques is OVERFLOW:
            violations.append(ACCEPT_CFG.seed + t)
    _report("criterion 3: every power has at most 3|E| maximal cliques",
            not violations, f"violations={violations[:3]}")


def test_criterion_4_small_instance_agreement():
    assert os.path.exists(FIXTURE), (
        "fixture missing; regenerate with gen_fixture.py (brute force, inner "
        "bound 12)")
    rows = []
    with open(FIXTURE) as fh:
        for line in fh:
            code, verdict = line.split()
            rows.append((code, verdict))
    n_checked = 0
    mismatches = []
    for code, verdict in rows:
        g = _graph6_decode(code)
        res = recognize(g, 4)
        got = "power" if res.is_power else "notpower"
        if got != verdict:
            mismatches.append((code, got, verdict))
        n_checked += 1
    _report(
        f"criterion 4: recognize matches brute force on all {n_checked} "
        "connected graphs with <= 6 vertices",
        n_checked >= 142 and not mismatches,
        f"mismatches={mismatches[:3]}",
    )


def _graph6_decode(code):
    n = ord(code[0]) - 63
    bits = []
    for ch in code[1:]:
        val = ord(ch) - 63
        bits.extend((val >> (5 - i)) & 1 for i in range(6))
    verts = [chr(ord("a") + i) for i in range(n)]
    edges = []
    idx = 0
    for j in range(n):
        for i in range(j):
            if idx < len(bits) and bits[idx]:
                edges.append((verts[i], verts[j]))
            idx += 1
    return Graph(verts, edges)


def test_criterion_5_soundness_everywhere():
    # every Power verdict across a mixed suite passes exact verification
    bad = []
    for seed in range(1, 120):
        cfg = replace(ACCEPT_CFG, seed=seed, stratified=bool(seed % 2))
        n = random_gnetwork(cfg)
        for k in (2, 3, 4):
            g = leaf_power(n, k)
            res = recognize(g, k)
            if res.is_power and not verify_forest(res.roots, g, k):
                bad.append((seed, k))
    _report("criterion 5: every Power verdict passes exact verification",
            not bad, f"bad={bad[:3]}")


def test_criterion_6_pattern_coverage():
    seen = set()
    invariant_failures = []
    for seed in range(1, 105):
        n = random_gnetwork(replace(ACCEPT_CFG, seed=seed))
        g = leaf_power(n, 4)
        res = recognize(g, 4, debug=True)
        if not res.is_power:
            continue
        for note in res.debug:
            kind = note.split(":", 2)[1].split("@", 1)[0]
            seen.add(kind)
    wanted = {"CPrime", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9",
              "C10", "C11", "C12"}
    _report("criterion 6: stratified batch triggers every pattern kind",
            wanted <= seen, f"missing={sorted(wanted - seen)}")

    # catalogue roots satisfy the authoritative invariant on a sample
    from galledpower import patterns as P
    from galledpower.graph_core import blocks as gblocks, connected_components

    checked = 0
    for seed in range(1, 40):
        n = random_gnetwork(replace(ACCEPT_CFG, seed=seed))
        g = leaf_power(n, 4)
        for comp in connected_components(g):
            q = critical_cliques(comp).quotient
            if len(q) == 1:
                continue
            dec = gblocks(q)
            for bset in dec.blocks:
                bg = q.subgraph(bset)
                if bg.is_clique():
                    continue
                cg = build_mc(bg)
                if isinstance(cg, NotPowerEvidence):
                    continue
                easy = P.detect_easy(cg)
                if not isinstance(easy, list):
                    continue
                pats = easy + P.detect_other(cg, easy)
                roots = {}
                for p in pats:
                    if p.kind in P.EASY_KINDS:
                        roots[p.nodes] = P.easy_root(cg, p)
                for p in pats:
                    cands = ([roots[p.nodes]] if p.kind in P.EASY_KINDS
                             else P.root_set(cg, p, pats, roots).candidates)
                    for cand in cands:
                        checked += 1
                        if leaf_power(cand.network, 4) != bg.subgraph(p.ground(cg)):
                            invariant_failures.append((seed, p.kind))
    _report(
        "criterion 6: every instantiated catalogue root satisfies the "
        "power-of-root invariant",
        checked > 50 and not invariant_failures,
        f"checked={checked}, failures={invariant_failures[:3]}",
    )


def _perturb(n: GNetwork, rng: random.Random) -> GNetwork:
    """Graft reducible cycles and an invisible-invisible edge onto n."""
    vs = list(n.inner_vertices)
    edges = list(n.inner_graph.sorted_edges())
    leaves = {v: list(ls) for v, ls in n.leaf_map.items()}
    inv = set(n.invisible_vertices())
    nbrs = {v: set() for v in vs}
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    hosts = [v for v in vs if v in n.leaf_map and not (nbrs[v] & inv)]
    serial = [0]

    def fresh(label=None):
        v = f"#q{serial[0]}"
        serial[0] += 1
        vs.append(v)
        if label:
            leaves[v] = [label]
        return v

    host = rng.choice(hosts)
    kind = rng.randrange(3)
    if kind == 0:
        # one-attach triangle (standard_1 shape)
        a = fresh(f"pa{serial[0]}")
        b = fresh(f"pb{serial[0]}")
        c = fresh(f"pc{serial[0]}")
        edges += [(host, a), (a, b), (b, c), (c, a)]
    elif kind == 1:
        # one-attach 4-cycle without invisible vertices (standard_2 shape)
        ring = [fresh(f"p{serial[0]}_{i}") for i in range(4)]
        edges += [(host, ring[0])]
        edges += [(ring[i], ring[(i + 1) % 4]) for i in range(4)]
    else:
        # 5-cycle with one free invisible vertex (standard_4 shape)
        x, y, z, t = (fresh(f"p{serial[0]}_{i}") for i in range(4))
        u = fresh()
        edges += [(host, y), (x, y), (y, z), (z, t), (t, u), (u, x)]
    # invisible-invisible edge on a small closed gadget
    g1, g2 = fresh(), fresh()
    w1, w2 = fresh(f"w{serial[0]}a"), fresh(f"w{serial[0]}b")
    edges += [(host, w1), (w1, g1), (g1, g2), (g2, w2), (w2, host)]
    return GNetwork(Graph(vs, edges), leaves)


def test_criterion_7_normalization_invariance():
    failures = []
    done = 0
    seed = 5000
    while done < 500:
        seed += 1
        base = random_gnetwork(replace(ACCEPT_CFG, seed=seed, stratified=False))
        rng = random.Random(seed)
        try:
            perturbed = _perturb(base, rng)
        except IndexError:
            continue  # no safe graft point on this instance
        done += 1
        assert validate(perturbed) == []
        out, report = normalize(perturbed)
        if leaf_power(out, 4) != leaf_power(perturbed, 4):
            failures.append(seed)
        elif report.removed_invisible_edges + len(report.shortened_cycles) == 0:
            failures.append((seed, "nothing rewritten"))
    _report("criterion 7: normalize preserves the 4-leaf power on 500 "
            "perturbed networks", not failures, f"failures={failures[:3]}")


def test_criterion_8_square_recognition():
    done = 0
    failures = []
    seed = 0
    while done < 200 and seed < 4000:
        seed += 1
        n = random_gnetwork(GeneratorConfig(
            seed=seed, leaf_count=(4, 18), cycle_count=(0, 2),
            invisible_density=0.0))
        if n.invisible_vertices():
            continue
        h = relabel_x(n)
        sq = graph_square(h)
        done += 1
        res = recognize_square(sq)
        if not res.is_power:
            failures.append((seed, res.evidence.stage))
            continue
        if graph_square(relabel_x(res.root)) != sq:
            failures.append((seed, "square mismatch"))
    _report(f"criterion 8: {done} squares of invisible-free networks recognized",
            done == 200 and not failures, f"failures={failures[:3]}")
    c4 = Graph("abcd", ["ab", "bc", "cd", "da"])
    k23 = Graph("abcde", ["ac", "ad", "ae", "bc", "bd", "be"])
    _report("criterion 8: C4 and K_{2,3} rejected as squares",
            not recognize_square(c4).is_power and not recognize_square(k23).is_power)


def test_criterion_9_polynomial_scaling():
    sizes = (100, 200, 400, 800)
    points = []
    for target in sizes:
        lo = max(4, int(target * 0.38))
        found = None
        for seed in range(900, 2000):
            cfg = GeneratorConfig(seed=seed, leaf_count=(lo, lo + 10),
                                  cycle_count=(1, 3))
            n = random_gnetwork(cfg)
            g = leaf_power(n, 4)
            if target * 0.75 <= len(g.edges) <= target * 1.3:
                found = g
                break
        assert found is not None, f"no instance near |E|={target}"
        t0 = time.time()
        res = recognize(found, 4)
        dt = max(time.time() - t0, 1e-4)
        assert res.is_power
        points.append((len(found.edges), dt))
    xs = [math.log(e) for e, _ in points]
    ys = [math.log(t) for _, t in points]
    n_pts = len(points)
    xbar, ybar = sum(xs) / n_pts, sum(ys) / n_pts
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs)
    _report("criterion 9: log-log runtime slope at most 3.5",
            slope <= 3.5, f"slope={slope:.2f}, points={points}")
