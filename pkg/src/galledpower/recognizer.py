"""Top-level recognition of k-leaf powers of galled networks (k = 2, 3, 4)."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from . import patterns as pat
from .assembly import (NotSquare, OverlayConflict, Slot, assemble_block,
                       choose_subroots, glue_blocks, square_forest_root, subtract)
from .clique_graph import CliqueGraph, build_mc
from .evidence import NotPowerEvidence
from .graph_core import (Graph, Vertex, blocks, connected_components,
                         critical_cliques, is_gnetwork_class)
from .network import (GNetwork, graph_square, inner_cycles, is_basic,
                      leaf_power, relabel_x, validate)


class LabelMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RecognitionResult:
    k: int
    roots: Optional[Tuple[GNetwork, ...]]
    evidence: Optional[NotPowerEvidence] = None
    debug: Tuple[str, ...] = ()

    @property
    def is_power(self) -> bool:
        return self.roots is not None

    @property
    def root(self) -> GNetwork:
        if self.roots is None:
            raise ValueError("not a power")
        if len(self.roots) != 1:
            raise ValueError("disconnected input: use .roots")
        return self.roots[0]


def verify(n: GNetwork, g: Graph, k: int) -> bool:
    """True iff n is a valid network whose k-leaf power is exactly g."""
    if frozenset(n.leaf_labels) != frozenset(g.vertices):
        raise LabelMismatch("network leaves differ from graph vertices")
    if validate(n):
        return False
    return leaf_power(n, k) == g


def verify_forest(roots: Sequence[GNetwork], g: Graph, k: int) -> bool:
    labels: List[Vertex] = []
    for n in roots:
        labels.extend(n.leaf_labels)
    if sorted(labels) != sorted(set(labels)) or frozenset(labels) != frozenset(g.vertices):
        raise LabelMismatch("forest leaves do not partition the graph vertices")
    edges = set()
    for n in roots:
        if validate(n):
            return False
        edges |= leaf_power(n, k).edges
    return Graph(g.vertices, edges) == g


def _leaf_bundle(members: Sequence[Vertex]) -> GNetwork:
    centre = "#s_" + min(members)
    return GNetwork(Graph([centre]), {centre: list(members)})


def _expand_classes(net: GNetwork, classes: Dict[Vertex, Tuple[Vertex, ...]]) -> GNetwork:
    new_leaves = {}
    for v in net.inner_vertices:
        out: List[Vertex] = []
        for rep in net.leaves_of(v):
            out.extend(classes[rep])
        if out:
            new_leaves[v] = out
    return GNetwork(net.inner_graph, new_leaves)


def recognize(g: Graph, k: int, debug: bool = False) -> RecognitionResult:
    """Decide whether g is a k-leaf galled-network power and build a root."""
    if k not in (2, 3, 4):
        raise ValueError("k must be 2, 3 or 4")
    if len(g) == 0:
        return RecognitionResult(k, ())
    roots: List[GNetwork] = []
    notes: List[str] = []
    for comp in connected_components(g):
        res = _recognize_component(comp, k, notes)
        if isinstance(res, NotPowerEvidence):
            return RecognitionResult(k, None, res, tuple(notes))
        roots.append(res)
    out = RecognitionResult(k, tuple(roots), None, tuple(notes))
    assert verify_forest(out.roots, g, k), "internal fault: root failed verification"
    return out


def _recognize_component(comp: Graph, k: int, notes: List[str]) -> Union[GNetwork, NotPowerEvidence]:
    if k == 2:
        if comp.is_clique():
            return _leaf_bundle(comp.vertices)
        return NotPowerEvidence("NotCliqueComponent", "a 2-leaf power component must be a clique",
                                comp.vertices[:4])
    cc = critical_cliques(comp)
    classes = {cls[0]: cls for cls in cc.classes}
    q = cc.quotient
    if k == 3:
        if not is_gnetwork_class(q):
            return NotPowerEvidence("NotGNetworkClass",
                                    "critical-clique quotient has intersecting cycles")
        builder_leaves = {f"#p_{v}": [v] for v in q.vertices}
        inner = Graph((f"#p_{v}" for v in q.vertices),
                      ((f"#p_{u}", f"#p_{v}") for u, v in q.sorted_edges()))
        return _expand_classes(GNetwork(inner, builder_leaves), classes)
    basic = _recognize_basic4(q, notes)
    if isinstance(basic, NotPowerEvidence):
        return basic
    return _expand_classes(basic, classes)


def _recognize_basic4(q: Graph, notes: List[str],
                      square_mode: bool = False) -> Union[GNetwork, NotPowerEvidence]:
    """Algorithm for one connected graph with singleton critical cliques."""
    if len(q) == 1:
        v = q.vertices[0]
        return GNetwork(Graph([f"#p_{v}"]), {f"#p_{v}": [v]})
    dec = blocks(q)
    cuts = dec.cut_vertices
    evidence: Optional[NotPowerEvidence] = None

    block_graphs = [q.subgraph(b) for b in dec.blocks]
    clique_blocks = frozenset(
        i for i, bg in enumerate(block_graphs) if bg.is_clique()
    )
    cut_map: Dict[Vertex, List[int]] = {}
    for x in cuts:
        cut_map[x] = [i for i, b in enumerate(dec.blocks) if x in b]

    options: List[Tuple[FrozenSet[FrozenSet[int]], int]] = [(frozenset(), 0)]
    tried: Set[Tuple[FrozenSet[FrozenSet[int]], int]] = set()

    while options:
        flips, easy_choice = options.pop(0)
        if (flips, easy_choice) in tried:
            continue
        tried.add((flips, easy_choice))
        outcome = _attempt(q, dec, block_graphs, clique_blocks, cut_map, cuts,
                           flips, easy_choice, notes, square_mode)
        if isinstance(outcome, GNetwork):
            return outcome
        ev, retries = outcome
        if evidence is None:
            evidence = ev
        for option in retries:
            if option not in tried and len(options) < 24:
                options.append(option)
    return evidence if evidence is not None else NotPowerEvidence(
        "NoCompatibleChoice", "no consistent cycle-root set exists")


def _attempt(q, dec, block_graphs, clique_blocks, cut_map, cuts, flips,
             easy_choice, notes, square_mode):
    slots: List[Slot] = []
    block_cgs: Dict[int, CliqueGraph] = {}
    retries: List[Tuple[FrozenSet[FrozenSet[int]], int]] = []
    more_easy_choices = False
    for bi, bg in enumerate(block_graphs):
        if bi in clique_blocks:
            continue
        cg = build_mc(bg)
        if isinstance(cg, NotPowerEvidence):
            return cg, []
        block_cgs[bi] = cg
        easy_all = pat.detect_easy_all(cg)
        if isinstance(easy_all, NotPowerEvidence):
            return easy_all, []
        if easy_choice < len(easy_all) - 1:
            more_easy_choices = True
        easy = easy_all[min(easy_choice, len(easy_all) - 1)]
        if square_mode:
            bad = _square_filter_easy(cg, easy)
            if bad is not None:
                return bad, []
        truly_easy = [p for p in easy if p.kind in pat.EASY_KINDS]
        block_other = [p for p in easy if p.kind not in pat.EASY_KINDS]
        easy_roots: Dict[Tuple[int, ...], pat.RootCandidate] = {}
        for p in truly_easy:
            try:
                rc = pat.easy_root(cg, p)
            except pat.InfeasiblePattern as exc:
                return NotPowerEvidence("EmptyRootSet", str(exc)), []
            if square_mode and rc.network.invisible_vertices():
                return NotPowerEvidence(
                    "EmptyRootSet", f"{p.kind} root needs an invisible vertex"), []
            easy_roots[p.nodes] = rc
            slots.append(Slot(bi, p, p.ground(cg), (rc,)))
        other = block_other + pat.detect_other(cg, easy, claw_flips=frozenset(
            fl for fl in flips))
        if square_mode:
            other = [p for p in other if p.kind == "C9"]
        cut_pats = [] if square_mode else pat.detect_cut(
            cg, frozenset(cuts & frozenset(bg.vertices)), easy + other)
        allp = easy + other + cut_pats
        for p in other + cut_pats:
            rs = pat.root_set(cg, p, allp, easy_roots)
            cands = rs.candidates
            if square_mode:
                cands = tuple(c for c in cands if not c.network.invisible_vertices())
            if not cands:
                if p.kind == "C4":
                    for alt in _flip_suggestions(cg, easy, flips):
                        retries.append((alt, easy_choice))
                if more_easy_choices:
                    retries.append((flips, easy_choice + 1))
                return (
                    NotPowerEvidence(
                        "EmptyRootSet",
                        f"{p.kind} at {tuple(cg.describe(i) for i in p.nodes)} has no admissible root",
                    ),
                    retries,
                )
            slots.append(Slot(bi, p, p.ground(cg), cands))
        if notes is not None:
            for p in allp:
                notes.append(f"block{bi}:{p.kind}@{','.join(cg.describe(i) for i in p.nodes)}")

    last_failure: Optional[NotPowerEvidence] = None
    block_variants: List[List[Tuple[GNetwork, Dict[Vertex, Tuple[bool, bool]]]]] = []
    for bi, bg in enumerate(block_graphs):
        if bi in clique_blocks:
            if square_mode:
                centre = min(bg.vertices)
                gg = Graph({f"#p_{v}" for v in bg.vertices},
                           ((f"#p_{v}", f"#p_{centre}")
                            for v in bg.vertices if v != centre))
                net = GNetwork(gg, {f"#p_{v}": [v] for v in bg.vertices})
            else:
                u = "#s" + str(bi)
                gg = Graph([u] + [f"#p_{v}" for v in bg.vertices],
                           ((f"#p_{v}", u) for v in bg.vertices))
                net = GNetwork(gg, {f"#p_{v}": [v] for v in bg.vertices})
            flags = {x: (True, True) for x in cuts if x in bg}
            block_variants.append([(net, flags)])
            continue
        my_slots = [s for s in slots if s.block == bi]
        variants, fail = _assemble_block_variants(
            bg, block_cgs[bi], my_slots, cuts)
        if not variants:
            if fail is not None and last_failure is None:
                last_failure = fail
            for bj, cg in block_cgs.items():
                easy2 = pat.detect_easy(cg)
                if isinstance(easy2, list):
                    for alt in _flip_suggestions(cg, easy2, flips):
                        retries.append((alt, easy_choice))
            if more_easy_choices:
                retries.append((flips, easy_choice + 1))
            return (last_failure or NotPowerEvidence(
                "NoCompatibleChoice", "a block admits no assembled root"),
                retries)
        block_variants.append(variants)

    for combo in _flag_compatible_combos(block_variants, cut_map):
        parts = [variant[0] for variant in combo]
        full = glue_blocks(parts, cuts)
        if not validate(full) and leaf_power(full, 4) == q:
            return full
        last_failure = NotPowerEvidence(
            "NoCompatibleChoice", "glued network does not realize the graph")

    if last_failure is None:
        last_failure = NotPowerEvidence("NoCompatibleChoice",
                                        "no consistent cycle-root set exists")
    for bi, cg in block_cgs.items():
        easy = pat.detect_easy(cg)
        if isinstance(easy, list):
            for alt in _flip_suggestions(cg, easy, flips):
                retries.append((alt, easy_choice))
    if more_easy_choices:
        retries.append((flips, easy_choice + 1))
    return last_failure, retries


def _assemble_block_variants(bg: Graph, cg: CliqueGraph, my_slots: Sequence[Slot],
                             cuts: FrozenSet[Vertex], limit: int = 600):
    """All assembled roots of one block, one per viable candidate combo.

    Returns (variants, failure): variants are (network, flags-per-cut-vertex)
    pairs whose 4-leaf power equals the block, deduplicated by flag
    signature so the cross-block search stays small.
    """
    variants: List[Tuple[GNetwork, Dict[Vertex, Tuple[bool, bool]]]] = []
    failure: Optional[NotPowerEvidence] = None
    seen_signatures: Set[Tuple[Tuple[Vertex, bool, bool], ...]] = set()
    my_cuts = sorted(x for x in cuts if x in bg)
    tried = 0
    for chosen in itertools.product(*(s.candidates for s in my_slots)):
        if tried >= limit:
            break
        ok = True
        for i_, c1 in enumerate(chosen):
            if not c1.has_cycle():
                continue
            for c2 in chosen[i_ + 1:]:
                if c2.has_cycle() and c1.cycle_labels & c2.cycle_labels:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        tried += 1
        try:
            comps, constraints = subtract(cg, list(chosen))
            specs = []
            for comp in comps:
                comp_constraints = {
                    c: constraints[c]
                    for c in constraints
                    if c <= frozenset(comp.vertices)
                }
                specs.append(square_forest_root(comp, comp_constraints))
            net = assemble_block(list(chosen), specs)
        except NotSquare as exc:
            failure = failure or NotPowerEvidence("NotSquareComponent", str(exc))
            continue
        except OverlayConflict as exc:
            failure = failure or NotPowerEvidence("NoCompatibleChoice", str(exc))
            continue
        if leaf_power(net, 4) != bg:
            failure = failure or NotPowerEvidence(
                "NoCompatibleChoice", "assembled block root does not realize the block")
            continue
        flags = {}
        for x in my_cuts:
            px = net.parent(x)
            on_cycle = False
            for cyc in inner_cycles(net):
                if px in cyc:
                    on_cycle = True
            ns = net.inner_graph.adj(px)
            flags[x] = (
                not on_cycle,
                bool(ns) and all(not net.is_visible(w) for w in ns),
            )
        signature = tuple((x,) + flags[x] for x in my_cuts)
        if signature in seen_signatures:
            continue
        seen_signatures.add(signature)
        variants.append((net, flags))
        if not my_cuts or len(variants) >= 4 ** len(my_cuts) or len(variants) >= 16:
            break
    return variants, failure


def _flag_compatible_combos(block_variants, cut_map, limit: int = 200):
    """Cross-block choice of one variant per block, flag-checked at cuts."""
    picks: List[int] = []
    emitted = 0

    def cut_ok_partial() -> bool:
        for x, bids in cut_map.items():
            cs, is_ = [], []
            for bi in bids:
                if bi >= len(picks):
                    continue
                _, flags = block_variants[bi][picks[bi]]
                if x in flags:
                    cs.append(flags[x][0])
                    is_.append(flags[x][1])
            if cs.count(False) > 1 or is_.count(False) > 1:
                return False
        return True

    def search(bi: int):
        nonlocal emitted
        if emitted >= limit:
            return
        if bi == len(block_variants):
            emitted += 1
            yield [block_variants[j][picks[j]] for j in range(bi)]
            return
        for idx in range(len(block_variants[bi])):
            picks.append(idx)
            if cut_ok_partial():
                yield from search(bi + 1)
            picks.pop()
            if emitted >= limit:
                return

    yield from search(0)


def _flip_suggestions(cg: CliqueGraph, easy: Sequence[pat.Pattern],
                      flips: FrozenSet[FrozenSet[int]]) -> List[FrozenSet[FrozenSet[int]]]:
    """Alternative C4-vs-C4 overlap choices worth retrying."""
    out = []
    claws = [p for p in pat.detect_other(cg, easy, claw_flips=frozenset()) if p.kind == "C4"]
    all_claws = []
    for z in cg.nodes():
        pass
    for p in claws:
        for arm in p.nodes[1:]:
            pair = frozenset((p.nodes[0], arm))
            candidate = flips | {pair}
            if pair not in flips:
                out.append(frozenset(candidate))
    return out[:8]


def recognize_square(g: Graph, debug: bool = False) -> RecognitionResult:
    """Square-of-galled-network recognition (4-leaf power without invisibles)."""
    if len(g) == 0:
        return RecognitionResult(4, ())
    if not g.is_connected():
        return RecognitionResult(4, None, NotPowerEvidence(
            "NotBiconnected", "a square of a connected network is connected"))
    if len(g) > 2 and len(blocks(g).blocks) != 1:
        return RecognitionResult(4, None, NotPowerEvidence(
            "NotBiconnected", "squares of connected networks are biconnected"))
    notes: List[str] = []
    res = _recognize_basic4(g, notes, square_mode=True)
    if isinstance(res, NotPowerEvidence):
        return RecognitionResult(4, None, res, tuple(notes))
    if res.invisible_vertices():
        return RecognitionResult(4, None, NotPowerEvidence(
            "EmptyRootSet", "constructed root has an invisible vertex"), tuple(notes))
    assert verify(res, g, 4), "internal fault: square root failed verification"
    assert graph_square(relabel_x(res)) == g, "internal fault: square mismatch"
    return RecognitionResult(4, (res,), None, tuple(notes))


def _square_filter_easy(cg: CliqueGraph, easy: Sequence[pat.Pattern]) -> Optional[NotPowerEvidence]:
    for p in easy:
        if p.kind in ("C6", "C8"):
            return NotPowerEvidence("EmptyRootSet",
                                    f"{p.kind} root needs an invisible vertex")
        if p.kind == "CPrime":
            k = len(p.nodes)
            for i in range(k):
                if cg.weight(p.nodes[i], p.nodes[(i + 1) % k]) != 2:
                    return NotPowerEvidence(
                        "EmptyRootSet", "square roots admit only weight-2 cycles")
    return None
