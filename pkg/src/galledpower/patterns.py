"""Cycle-forcing subgraphs of MC(G) and their admissible root networks.

Pattern kinds and their templates (weights are edge-label sizes in MC):

  C1  triangle, all weights 3, all labels equal
  C2  star around a middle node, every edge weight 3
  C3  8-node, 12-edge block: a hexagon of overlapping triples plus two hubs
  C'  any other chordless cycle appearing as a block of MC
  C4  claw, weight-2 arms whose labels pairwise intersect in one vertex
  C5  4-node path, weight-2 edges all sharing one common vertex
  C6  4-cycle block, weight 2, one vertex common to all four labels
  C7  3-node path, two weight-2 edges with disjoint labels
  C8  triangle block, all weights 2, all labels equal
  C9  weight-3 edge not inside a C1 and not an arm of a C2
  C10 weight-2 edge with a cut vertex buried in one endpoint
  C11 weight-2 edge whose label holds a cut vertex, endpoints pendant
  C12 3-node path whose both labels hold the cut vertex, ends pendant

Each kind owns a finite generator of candidate root networks; every
generated candidate is checked against the one authoritative invariant
(its 4-leaf power equals the induced species subgraph of the pattern), so
a bad generation is discarded rather than propagated.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .clique_graph import CliqueGraph, Node, label_of_subgraph
from .evidence import NotPowerEvidence
from .graph_core import Graph, Vertex, chordless_cycles_upto
from .network import GNetwork, is_basic, inner_cycles, leaf_power, validate

EASY_KINDS = ("CPrime", "C1", "C2", "C3")
OTHER_KINDS = ("C4", "C5", "C6", "C7", "C8", "C9")
CUT_KINDS = ("C10", "C11", "C12")


class InfeasiblePattern(ValueError):
    """A detected pattern admits no root (clique sizes contradict the shape)."""


_EXT_SERIAL = itertools.count()


@dataclass(frozen=True)
class Pattern:
    kind: str
    nodes: Tuple[Node, ...]  # ordered: cycles cyclic, paths end-to-end, stars middle-first
    anchor: Tuple[Vertex, ...] = ()  # lc for C5, cut vertex for C10-C12

    def node_set(self) -> FrozenSet[Node]:
        return frozenset(self.nodes)

    def ground(self, cg: CliqueGraph) -> FrozenSet[Vertex]:
        out: Set[Vertex] = set()
        for i in self.nodes:
            out |= cg.label(i)
        return frozenset(out)

    def label(self, cg: CliqueGraph) -> FrozenSet[Vertex]:
        return label_of_subgraph(cg, self.nodes)


@dataclass(frozen=True)
class RootCandidate:
    network: GNetwork
    cycle: Tuple[str, ...]
    catalogue_id: str

    @functools.cached_property
    def cycle_labels(self) -> FrozenSet[Vertex]:
        out = set()
        for v in self.cycle:
            out.update(self.network.leaves_of(v))
        return frozenset(out)

    def has_cycle(self) -> bool:
        return bool(self.cycle)

    def c_flag(self, x: Vertex) -> bool:
        if x not in self.network.leaf_labels:
            return True
        return self.network.parent(x) not in self.cycle

    def i_flag(self, x: Vertex) -> bool:
        if x not in self.network.leaf_labels:
            return False
        p = self.network.parent(x)
        ns = self.network.inner_graph.adj(p)
        return bool(ns) and all(not self.network.is_visible(w) for w in ns)


@dataclass(frozen=True)
class RootSet:
    pattern: Pattern
    candidates: Tuple[RootCandidate, ...]


# ---------------------------------------------------------------------------
# construction helpers


class _Builder:
    def __init__(self):
        self.vertices: Set[str] = set()
        self.edges: Set[Tuple[str, str]] = set()
        self.leaves: Dict[str, List[str]] = {}
        self._fresh = 0

    def parent_of(self, label: Vertex) -> str:
        v = f"#p_{label}"
        if v not in self.vertices:
            self.vertices.add(v)
            self.leaves[v] = [label]
        return v

    def fresh(self) -> str:
        v = f"#q{self._fresh}"
        self._fresh += 1
        self.vertices.add(v)
        return v

    def edge(self, u: str, v: str) -> None:
        if u != v:
            self.edges.add((u, v) if u <= v else (v, u))

    def hang(self, labels: Iterable[Vertex], at: str) -> None:
        for x in sorted(labels):
            self.edge(self.parent_of(x), at)

    def build(self) -> Optional[GNetwork]:
        try:
            net = GNetwork(Graph(self.vertices, self.edges), self.leaves)
        except ValueError:
            return None
        return net


def _checked(cg: CliqueGraph, pattern: Pattern, net: Optional[GNetwork],
             catalogue_id: str, max_cycles: int = 1) -> Optional[RootCandidate]:
    """Keep a candidate only if it is a valid basic root of the pattern."""
    if net is None:
        return None
    if validate(net) or not is_basic(net):
        return None
    cycles = inner_cycles(net)
    if len(cycles) > max_cycles:
        return None
    ground = pattern.ground(cg)
    if frozenset(net.leaf_labels) != ground:
        return None
    if leaf_power(net, 4) != cg.backing.subgraph(ground):
        return None
    cyc = cycles[0] if cycles else ()
    return RootCandidate(net, tuple(cyc), catalogue_id)


# ---------------------------------------------------------------------------
# block classification of MC


def shadow_edges(cg: CliqueGraph) -> Set[Tuple[Node, Node]]:
    """Weight-1 MC edges that merely mirror a 2-path through a bigger overlap.

    An invisible star whose rim leaf also lies in the star one step further
    along a cycle produces an extra weight-1 edge; it carries no structure of
    its own and is ignored when classifying the cyclic parts of MC.
    """
    out: Set[Tuple[Node, Node]] = set()
    for (a, b), lab in cg.edge_labels.items():
        if len(lab) != 1:
            continue
        for c in cg.neighbors(a):
            if c != b and cg.has_edge(c, b):
                if cg.edge_label(a, c) == lab and lab < cg.edge_label(c, b):
                    out.add((a, b))
                    break
        else:
            for c in cg.neighbors(b):
                if c != a and cg.has_edge(c, a):
                    if cg.edge_label(b, c) == lab and lab < cg.edge_label(c, a):
                        out.add((a, b))
                        break
    return out


def _mc_blocks(cg: CliqueGraph, drop: FrozenSet[Tuple[Node, Node]] = frozenset()
               ) -> List[Tuple[FrozenSet[Node], FrozenSet[Tuple[Node, Node]]]]:
    from .graph_core import blocks as _blocks, connected_components

    g = cg.as_graph()
    if drop:
        keep = [
            (str(i), str(j))
            for (i, j) in cg.edge_labels
            if (i, j) not in drop
        ]
        g = Graph(g.vertices, keep)
    out = []
    for sub in connected_components(g):
        if len(sub) == 1:
            continue
        dec = _blocks(sub)
        for bset, bedges in zip(dec.blocks, dec.block_edges):
            out.append((
                frozenset(int(v) for v in bset),
                frozenset((int(a), int(b)) if int(a) < int(b) else (int(b), int(a)) for a, b in bedges),
            ))
    return sorted(out, key=lambda t: sorted(t[0]))


def _components(cg: CliqueGraph) -> List[List[Node]]:
    seen: Set[Node] = set()
    comps = []
    for start in cg.nodes():
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            for w in cg.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _is_halo_triangle(cg: CliqueGraph, nodes: Sequence[Node]) -> bool:
    """Triangle around a C2 middle: one w3 edge and two equal w2 labels inside it."""
    if len(nodes) != 3:
        return False
    a, b, c = sorted(nodes)
    labs = sorted(
        [cg.edge_label(a, b), cg.edge_label(a, c), cg.edge_label(b, c)],
        key=len,
    )
    return (
        len(labs[0]) == 2
        and labs[0] == labs[1]
        and len(labs[2]) == 3
        and labs[0] < labs[2]
    )


def _cycle_order(nodes: FrozenSet[Node], edges: FrozenSet[Tuple[Node, Node]]) -> Optional[Tuple[Node, ...]]:
    if len(edges) != len(nodes):
        return None
    adj: Dict[Node, List[Node]] = {v: [] for v in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    if any(len(ns) != 2 for ns in adj.values()):
        return None
    start = min(nodes)
    order = [start, min(adj[start])]
    while len(order) < len(nodes):
        prev, cur = order[-2], order[-1]
        order.append([w for w in adj[cur] if w != prev][0])
    return tuple(order)


def _classify_c3(cg: CliqueGraph, nodes: FrozenSet[Node],
                 edges: FrozenSet[Tuple[Node, Node]]) -> Optional[Pattern]:
    """Match the 8-node double-hexagon; nodes ordered hexagon-first then hubs."""
    if len(nodes) != 8 or len(edges) != 12:
        return None
    if any(len(cg.edge_label(a, b)) != 2 for a, b in edges):
        return None
    for hubs in itertools.combinations(sorted(nodes), 2):
        o1, o2 = hubs
        if (min(o1, o2), max(o1, o2)) in edges:
            continue
        rest = nodes - {o1, o2}
        rest_edges = frozenset((a, b) for a, b in edges if a in rest and b in rest)
        order = _cycle_order(frozenset(rest), rest_edges)
        if order is None:
            continue
        deg_o1 = [v for v in rest if (min(o1, v), max(o1, v)) in edges]
        deg_o2 = [v for v in rest if (min(o2, v), max(o2, v)) in edges]
        if len(deg_o1) != 3 or len(deg_o2) != 3:
            continue
        idx = {v: i for i, v in enumerate(order)}
        if {idx[v] % 2 for v in deg_o1} in ({0}, {1}) and {idx[v] % 2 for v in deg_o2} in ({0}, {1}):
            if {idx[v] % 2 for v in deg_o1} != {idx[v] % 2 for v in deg_o2}:
                return Pattern("C3", order + (o1, o2))
    return None


def _shadow_drop_choices(cg: CliqueGraph) -> List[FrozenSet[Tuple[Node, Node]]]:
    """Drop-sets resolving shadow edges.

    Flagged edges sharing an endpoint and a label form a group of which at
    most one (the true rim edge) may stay; the likeliest keeper comes first,
    alternatives follow for the retry loop.
    """
    flagged = shadow_edges(cg)
    if not flagged:
        return [frozenset()]

    def middle_set(node: Node) -> FrozenSet[Vertex]:
        labs = [cg.edge_label(node, j) for j in cg.neighbors(node)
                if cg.weight(node, j) == 2]
        if not labs:
            return cg.label(node)
        out = labs[0]
        for lab in labs[1:]:
            out = out & lab
        return out if out else cg.label(node)

    def keep_score(node: Node, s: Vertex) -> int:
        mset = middle_set(node)
        if mset == frozenset((s,)):
            return 2
        return 1 if s in mset else 0

    groups: Dict[Tuple[Node, FrozenSet[Vertex]], List[Tuple[Node, Node]]] = {}
    for e in sorted(flagged):
        lab = cg.edge_label(*e)
        for shared in e:
            groups.setdefault((shared, lab), []).append(e)
    grouped: List[List[Tuple[Node, Node]]] = []
    used: Set[Tuple[Node, Node]] = set()
    for (shared, lab), members in sorted(groups.items(),
                                         key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        members = [e for e in members if e not in used]
        if len(members) < 2:
            continue
        (s,) = lab
        members.sort(key=lambda e: (-keep_score(next(iter(set(e) - {shared})), s), e))
        grouped.append(members)
        used.update(members)
    singles = [e for e in sorted(flagged) if e not in used]

    group_options: List[List[FrozenSet[Tuple[Node, Node]]]] = []
    for members in grouped:
        options = [frozenset(e for e in members if e != keeper) for keeper in members]
        options.append(frozenset(members))  # sometimes every edge is a shadow
        group_options.append(options)
    index_space = 1
    for options in group_options:
        index_space *= len(options)
    combos: List[FrozenSet[Tuple[Node, Node]]] = []
    if index_space <= 4096:
        indexed = sorted(
            itertools.product(*(range(len(o)) for o in group_options)),
            key=lambda idx: (sum(idx), idx),
        )
        for idx in indexed[:48]:
            drop = frozenset(singles)
            for gi, oi in enumerate(idx):
                drop |= group_options[gi][oi]
            combos.append(drop)
    else:
        drop = frozenset(singles)
        for options in group_options:
            drop |= options[0]
        combos.append(drop)
    combos.append(frozenset())
    return combos


def detect_easy_all(cg: CliqueGraph) -> Union[List[List[Pattern]], NotPowerEvidence]:
    """All valid easy-pattern readings of MC, one per viable shadow resolution.

    Shadow edges are resolved by trying each drop choice; a choice is viable
    when every cyclic block classifies and every easy root constructs.
    """
    fallback: Optional[NotPowerEvidence] = None
    outcomes: List[List[Pattern]] = []
    seen: Set[Tuple[Tuple[str, Tuple[Node, ...]], ...]] = set()
    for drop in _shadow_drop_choices(cg):
        result = _detect_easy_dropped(cg, drop)
        if isinstance(result, NotPowerEvidence):
            if fallback is None:
                fallback = result
            continue
        ok = True
        for p in result:
            if p.kind in EASY_KINDS:
                try:
                    easy_root(cg, p)
                except InfeasiblePattern as exc:
                    if fallback is None:
                        fallback = NotPowerEvidence("EmptyRootSet", str(exc))
                    ok = False
                    break
        if ok:
            key = tuple((p.kind, p.nodes) for p in result)
            if key not in seen:
                seen.add(key)
                outcomes.append(result)
    if outcomes:
        return outcomes
    return fallback if fallback is not None else NotPowerEvidence(
        "BadCliqueBlock", "no shadow resolution classifies the MC blocks")


def detect_easy(cg: CliqueGraph) -> Union[List[Pattern], NotPowerEvidence]:
    """First viable easy-pattern reading (see detect_easy_all)."""
    out = detect_easy_all(cg)
    if isinstance(out, NotPowerEvidence):
        return out
    return out[0]


def _detect_easy_dropped(cg: CliqueGraph, drop: FrozenSet[Tuple[Node, Node]]
                         ) -> Union[List[Pattern], NotPowerEvidence]:
    patterns: List[Pattern] = []
    for bnodes, bedges in _mc_blocks(cg, drop):
        if len(bedges) <= 1:
            continue
        c3 = _classify_c3(cg, bnodes, bedges)
        if c3 is not None:
            patterns.append(c3)
            continue
        if _is_halo_triangle(cg, sorted(bnodes)):
            continue
        order = _cycle_order(bnodes, bedges)
        if order is None:
            return NotPowerEvidence(
                "BadCliqueBlock",
                "a 2-connected part of MC(G) is not one of the admissible shapes",
                tuple(cg.describe(i) for i in sorted(bnodes)),
            )
        weights = [cg.weight(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]
        labels = [cg.edge_label(order[i], order[(i + 1) % len(order)]) for i in range(len(order))]
        if len(order) == 3 and all(w == 3 for w in weights) and labels[0] == labels[1] == labels[2]:
            patterns.append(Pattern("C1", order))
        elif len(order) == 3 and all(w == 2 for w in weights) and labels[0] == labels[1] == labels[2]:
            patterns.append(Pattern("C8", order))
        elif len(order) == 4 and all(w == 2 for w in weights) and frozenset.intersection(*labels):
            patterns.append(Pattern("C6", order))
        else:
            patterns.append(Pattern("CPrime", order))

    in_c1 = {
        frozenset(e)
        for p in patterns
        if p.kind == "C1"
        for e in itertools.combinations(p.nodes, 2)
    }
    for m in cg.nodes():
        arms = [
            j
            for j in cg.neighbors(m)
            if cg.weight(m, j) == 3 and frozenset((m, j)) not in in_c1
        ]
        if len(arms) >= 2:
            patterns.append(Pattern("C2", (m,) + tuple(sorted(arms))))
    return patterns


def detect_other(cg: CliqueGraph, easy: Sequence[Pattern],
                 claw_flips: FrozenSet[FrozenSet[Node]] = frozenset()) -> List[Pattern]:
    """C4, C5, C7, C9 on the acyclic part of MC, with overlap deduplication.

    claw_flips lets the recognizer retry the C4-vs-C4 overlap with the other
    representative when the first choice led nowhere.
    """
    cycle_owned: Set[Node] = set()
    for p in easy:
        if p.kind in ("CPrime", "C1", "C3", "C6", "C8"):
            cycle_owned.update(p.nodes)
    c2_middles = {p.nodes[0] for p in easy if p.kind == "C2"}
    c2_edges = {
        frozenset((p.nodes[0], a)) for p in easy if p.kind == "C2" for a in p.nodes[1:]
    }
    patterns: List[Pattern] = []

    # C9: weight-3 segments not in a C1 and not arms of a C2
    for (i, j), lab in sorted(cg.edge_labels.items()):
        if len(lab) != 3 or i in cycle_owned or j in cycle_owned:
            continue
        if frozenset((i, j)) in c2_edges or i in c2_middles or j in c2_middles:
            continue
        patterns.append(Pattern("C9", (i, j)))

    def w2_neighbors(z: Node) -> List[Node]:
        return [
            j
            for j in cg.neighbors(z)
            if cg.weight(z, j) == 2 and j not in cycle_owned
        ]

    def usable(z: Node) -> bool:
        return z not in cycle_owned

    # C4 claws
    claws: List[Pattern] = []
    for z in cg.nodes():
        if not usable(z):
            continue
        ns = w2_neighbors(z)
        for trio in itertools.combinations(sorted(ns), 3):
            labs = [cg.edge_label(z, a) for a in trio]
            union = labs[0] | labs[1] | labs[2]
            if len(union) != 3:
                continue
            if labs[0] & labs[1] & labs[2]:
                continue
            if any(len(labs[a] & labs[b]) != 1 for a, b in itertools.combinations(range(3), 2)):
                continue
            if len(set(labs)) != 3:
                continue
            if any(cg.has_edge(a, b) for a, b in itertools.combinations(trio, 2)):
                continue
            claws.append(Pattern("C4", (z,) + trio))

    # C4+C4 overlap: two claws sharing a center-arm edge; keep one per pair
    retained: List[Pattern] = []
    dropped: Set[Tuple[Node, ...]] = set()
    by_center = {p.nodes[0]: p for p in claws}
    for p in sorted(claws, key=lambda q: q.nodes):
        if p.nodes in dropped:
            continue
        partner = None
        for arm in p.nodes[1:]:
            q = by_center.get(arm)
            if q is not None and p.nodes[0] in q.nodes[1:] and q.nodes not in dropped:
                partner = q
                break
        if partner is not None and partner.nodes != p.nodes:
            keep, drop = p, partner
            if frozenset((p.nodes[0], partner.nodes[0])) in claw_flips:
                keep, drop = partner, p
            dropped.add(drop.nodes)
            retained.append(keep)
        else:
            retained.append(p)
    claws = retained
    patterns.extend(claws)
    claw_edges = {
        frozenset((p.nodes[0], a)) for p in claws for a in p.nodes[1:]
    }

    # C7 paths: center with two disjoint w2 labels and no incident w3 edge
    sevens: List[Pattern] = []
    for z in cg.nodes():
        if not usable(z):
            continue
        if any(cg.weight(z, j) == 3 for j in cg.neighbors(z)):
            continue
        ns = w2_neighbors(z)
        for e1, e2 in itertools.combinations(sorted(ns), 2):
            if cg.edge_label(z, e1) & cg.edge_label(z, e2):
                continue
            if cg.has_edge(e1, e2):
                continue
            if frozenset((z, e1)) in claw_edges or frozenset((z, e2)) in claw_edges:
                continue  # C4+C7: the claw is kept
            sevens.append(Pattern("C7", (e1, z, e2)))
    # C7s sharing the center and one end describe the same forced cycle
    kept_sevens: List[Pattern] = []
    for p in sorted(sevens, key=lambda q: q.nodes):
        clash = any(
            q.nodes[1] == p.nodes[1] and (set(q.nodes) & set(p.nodes)) - {p.nodes[1]}
            for q in kept_sevens
        )
        if not clash:
            kept_sevens.append(p)
    sevens = kept_sevens
    patterns.extend(sevens)
    seven_edges = {
        frozenset(e) for p in sevens for e in ((p.nodes[0], p.nodes[1]), (p.nodes[1], p.nodes[2]))
    }

    # C5 paths: all three labels share one vertex, nodes free of w3 edges
    fives: List[Pattern] = []
    seen_five: Set[FrozenSet[Node]] = set()
    for z1 in cg.nodes():
        if not usable(z1):
            continue
        for z2 in w2_neighbors(z1):
            if z2 <= z1:
                continue
            mid = cg.edge_label(z1, z2)
            for ell in sorted(mid):
                for p1 in w2_neighbors(z1):
                    if p1 == z2 or cg.edge_label(z1, p1) & mid != {ell}:
                        continue
                    for p2 in w2_neighbors(z2):
                        if p2 in (z1, p1) or cg.edge_label(z2, p2) & mid != {ell}:
                            continue
                        if cg.edge_label(z1, p1) & cg.edge_label(z2, p2) != {ell}:
                            continue
                        quad = (p1, z1, z2, p2)
                        if any(
                            cg.has_edge(a, b)
                            for a, b in itertools.combinations(quad, 2)
                            if frozenset((a, b)) not in (
                                frozenset((p1, z1)), frozenset((z1, z2)), frozenset((z2, p2)))
                        ):
                            continue
                        if any(
                            any(cg.weight(v, j) == 3 for j in cg.neighbors(v)) for v in quad
                        ):
                            continue
                        edges = [frozenset((p1, z1)), frozenset((z1, z2)), frozenset((z2, p2))]
                        if any(e in claw_edges or e in seven_edges for e in edges):
                            continue  # C4+C5 and C5+C7: the other kind is kept
                        key = frozenset(quad)
                        if key in seen_five:
                            continue
                        seen_five.add(key)
                        fives.append(Pattern("C5", quad, (ell,)))
    # C5s with one common vertex whose paths overlap describe one cycle;
    # keep one representative per overlap group, preferring one that has
    # constructible roots
    groups: List[List[Pattern]] = []
    for p in sorted(fives, key=lambda q: q.nodes):
        edges = {frozenset(e) for e in zip(p.nodes, p.nodes[1:])}
        placed = False
        for grp in groups:
            if grp[0].anchor == p.anchor and any(
                edges & {frozenset(e) for e in zip(q.nodes, q.nodes[1:])}
                for q in grp
            ):
                grp.append(p)
                placed = True
                break
        if not placed:
            groups.append([p])
    for grp in groups:
        chosen = None
        if len(grp) > 1:
            for p in grp:
                if _catalogue_candidates(cg, p):
                    chosen = p
                    break
        patterns.append(chosen if chosen is not None else grp[0])
    return patterns


def detect_cut(cg: CliqueGraph, cuts: FrozenSet[Vertex],
               prior: Sequence[Pattern]) -> List[Pattern]:
    """C10-C12 around cut vertices, outside all previously detected patterns."""
    used: Set[Node] = set()
    for p in prior:
        used.update(p.nodes)
    patterns: List[Pattern] = []
    taken: Set[Tuple[str, Tuple[Node, ...], Vertex]] = set()

    def pendant(i: Node, other: Iterable[Node]) -> bool:
        return all(j in other for j in cg.neighbors(i))

    for (i, j), lab in sorted(cg.edge_labels.items()):
        if len(lab) != 2 or i in used or j in used:
            continue
        for x in sorted(cuts):
            if x in lab and pendant(i, (j,)) and pendant(j, (i,)):
                patterns.append(Pattern("C11", (i, j), (x,)))
            for a, b in ((i, j), (j, i)):
                if x in cg.label(a) and x not in lab:
                    key = ("C10", (a, b), x)
                    if key not in taken:
                        taken.add(key)
                        patterns.append(Pattern("C10", (a, b), (x,)))
    for b in cg.nodes():
        if b in used:
            continue
        ns = [j for j in cg.neighbors(b) if cg.weight(b, j) == 2]
        for i, k in itertools.combinations(sorted(ns), 2):
            if i in used or k in used or cg.has_edge(i, k):
                continue
            common = cg.edge_label(b, i) & cg.edge_label(b, k)
            for x in sorted(cuts & common):
                if pendant(i, (b,)) and pendant(k, (b,)):
                    patterns.append(Pattern("C12", (i, b, k), (x,)))
    return patterns


def ext(cg: CliqueGraph, p: Pattern) -> FrozenSet[Node]:
    """The pattern's nodes plus every MC node within hop distance two."""
    frontier = set(p.nodes)
    out = set(p.nodes)
    for _ in range(2):
        nxt = set()
        for v in frontier:
            for w in cg.neighbors(v):
                if w not in out:
                    nxt.add(w)
        out |= nxt
        frontier = nxt
    return frozenset(out)


# ---------------------------------------------------------------------------
# easy roots (unique per Corollary on easy cycles)


def easy_root(cg: CliqueGraph, p: Pattern) -> RootCandidate:
    if p.kind == "CPrime":
        cands = _cprime_candidates(cg, p)
    elif p.kind == "C1":
        cands = _c1_candidates(cg, p)
    elif p.kind == "C2":
        cands = _c2_candidates(cg, p)
    elif p.kind == "C3":
        cands = _c3_candidates(cg, p)
    else:
        raise ValueError(f"not an easy pattern: {p.kind}")
    for cand in cands:
        checked = _checked(cg, p, cand.network if isinstance(cand, RootCandidate) else cand[1], "")
        if checked is not None:
            return RootCandidate(checked.network, checked.cycle, cand.catalogue_id)
    raise InfeasiblePattern(f"{p.kind} at nodes {p.nodes} admits no root")


def _cprime_candidates(cg: CliqueGraph, p: Pattern) -> List[RootCandidate]:
    order = p.nodes
    k = len(order)
    weights = [cg.weight(order[i], order[(i + 1) % k]) for i in range(k)]
    labels = [cg.edge_label(order[i], order[(i + 1) % k]) for i in range(k)]
    roles = []
    for i in range(k):
        w_prev = weights[(i - 1) % k]
        w_next = weights[i]
        roles.append("inv" if w_prev == 1 and w_next == 1 else "vis")
    for i in range(k):
        if weights[i] == 2 and ("inv" in (roles[i], roles[(i + 1) % k])):
            return []
        if weights[i] == 1 and roles[i] == "vis" and roles[(i + 1) % k] == "vis":
            return []
        if weights[i] > 2:
            return []

    vis_positions = [i for i in range(k) if roles[i] == "vis"]

    def assignments() -> List[Dict[int, Vertex]]:
        out: List[Dict[int, Vertex]] = [{}]
        for i in vis_positions:
            w_prev, w_next = weights[(i - 1) % k], weights[i]
            options: Set[Vertex] = set()
            if w_prev == 2 and w_next == 2:
                options = set(labels[(i - 1) % k] & labels[i])
            elif w_prev == 2:
                options = set(labels[(i - 1) % k])
            else:
                options = set(labels[i])
            # the middle's leaf lies in every weight-2 overlap at this node
            node = order[i]
            forced = set(options)
            for j in cg.neighbors(node):
                if cg.weight(node, j) == 2:
                    forced &= cg.edge_label(node, j)
            if forced:
                options = forced
            new = []
            for partial in out:
                for m in sorted(options):
                    trial = dict(partial)
                    trial[i] = m
                    ok = True
                    jprev = (i - 1) % k
                    if jprev in trial and weights[jprev] == 2:
                        if {trial[jprev], m} != set(labels[jprev]):
                            ok = False
                    if ok:
                        new.append(trial)
            out = new[:64]
        # wrap-around consistency for closed chains of weight-2 edges
        final = []
        for a in out:
            good = True
            for i in vis_positions:
                jnext = (i + 1) % k
                if weights[i] == 2 and jnext in a and {a[i], a[jnext]} != set(labels[i]):
                    good = False
            if good:
                final.append(a)
        return final

    cands = []
    for middles in assignments():
        b = _Builder()
        pos_vertex: Dict[int, str] = {}
        for i in range(k):
            if roles[i] == "inv":
                pos_vertex[i] = b.fresh()
            else:
                pos_vertex[i] = b.parent_of(middles[i])
        for i in range(k):
            jn = (i + 1) % k
            u, v = pos_vertex[i], pos_vertex[jn]
            if weights[i] == 2:
                b.edge(u, v)
            else:
                (s,) = labels[i]
                if roles[i] == "vis" and middles[i] == s:
                    b.edge(u, v)
                elif roles[jn] == "vis" and middles[jn] == s:
                    b.edge(u, v)
                else:
                    mid = b.parent_of(s)
                    b.edge(u, mid)
                    b.edge(mid, v)
        for i in range(k):
            node_label = cg.label(order[i])
            onc = set()
            onc |= labels[(i - 1) % k] | labels[i]
            if roles[i] == "vis":
                onc.add(middles[i])
            b.hang(node_label - onc, pos_vertex[i])
        net = b.build()
        if net is not None:
            cands.append(RootCandidate(net, (), "R'"))
    return cands


def _c1_candidates(cg: CliqueGraph, p: Pattern) -> List[RootCandidate]:
    nodes = sorted(p.nodes)
    shared = sorted(cg.edge_label(nodes[0], nodes[1]))
    cands = []
    for perm in itertools.permutations(shared):
        b = _Builder()
        ps = [b.parent_of(x) for x in perm]
        for i in range(3):
            b.edge(ps[i], ps[(i + 1) % 3])
        for node, x in zip(nodes, perm):
            b.hang(cg.label(node) - set(shared), b.parent_of(x))
        net = b.build()
        if net is not None:
            cands.append(RootCandidate(net, (), "R1,1"))
    return cands


def _consecutive_orders(m_labels: Sequence[Vertex], arm_labels: Sequence[FrozenSet[Vertex]]):
    """Cyclic orders of the middle clique making every arm label consecutive."""
    items = sorted(m_labels)
    n = len(items)
    seen = set()
    for perm in itertools.permutations(items[1:]):
        order = (items[0],) + perm
        if order in seen:
            continue
        seen.add(order)
        ok = True
        for lab in arm_labels:
            idx = sorted(order.index(x) for x in lab)
            spans = [(idx[(i + 1) % 3] - idx[i]) % n for i in range(3)]
            if sorted(spans)[:2] != [1, 1]:
                ok = False
                break
        if ok:
            yield order


def _c2_candidates(cg: CliqueGraph, p: Pattern) -> List[RootCandidate]:
    m = p.nodes[0]
    arms = p.nodes[1:]
    m_label = cg.label(m)
    arm_labels = [cg.edge_label(m, a) for a in arms]
    if any(cg.has_edge(a, b) for a, b in itertools.combinations(arms, 2)):
        return []
    has_w2 = any(cg.weight(m, j) == 2 for j in cg.neighbors(m))
    cands: List[RootCandidate] = []
    if len(m_label) == 5 or (len(m_label) == 4 and not has_w2):
        for order in _consecutive_orders(sorted(m_label), arm_labels):
            b = _Builder()
            ring = [b.parent_of(x) for x in order]
            for i in range(len(ring)):
                b.edge(ring[i], ring[(i + 1) % len(ring)])
            for arm, lab in zip(arms, arm_labels):
                centre = _centre_of_arc(order, lab)
                b.hang(cg.label(arm) - lab, b.parent_of(centre))
            net = b.build()
            if net is not None:
                cands.append(RootCandidate(net, (), "R2,N%d" % len(m_label)))
    if len(m_label) == 4 and (has_w2 or not cands):
        if len(arms) == 2:
            mids = sorted(arm_labels[0] & arm_labels[1])
            left = sorted(arm_labels[0] - arm_labels[1])
            right = sorted(arm_labels[1] - arm_labels[0])
            if len(mids) == 2 and len(left) == 1 and len(right) == 1:
                for m1, m2 in (mids, mids[::-1]):
                    b = _Builder()
                    ring = [b.parent_of(x) for x in (left[0], m1, m2, right[0])]
                    u = b.fresh()
                    for a, bb in zip(ring, ring[1:]):
                        b.edge(a, bb)
                    b.edge(ring[-1], u)
                    b.edge(u, ring[0])
                    b.hang(cg.label(arms[0]) - arm_labels[0], b.parent_of(m1))
                    b.hang(cg.label(arms[1]) - arm_labels[1], b.parent_of(m2))
                    net = b.build()
                    if net is not None:
                        cands.append(RootCandidate(net, (), "R2,N'5"))
    return cands


def _centre_of_arc(order: Sequence[Vertex], lab: FrozenSet[Vertex]) -> Vertex:
    n = len(order)
    idx = sorted(order.index(x) for x in lab)
    for i in idx:
        if (order[(i - 1) % n] in lab) and (order[(i + 1) % n] in lab):
            return order[i]
    return order[idx[0]]


def _c3_candidates(cg: CliqueGraph, p: Pattern) -> List[RootCandidate]:
    ring_labels = sorted(label_of_subgraph(cg, p.nodes))
    if len(ring_labels) != 6:
        return []
    g = cg.backing
    # opposite cycle vertices are the only non-adjacent pairs among the six
    opposite = {}
    for y in ring_labels:
        far = [z for z in ring_labels if z != y and not g.has_edge(y, z)]
        if len(far) != 1:
            return []
        opposite[y] = far[0]
    a = ring_labels[0]
    rest = [y for y in ring_labels if y not in (a, opposite[a])]
    cands = []
    for b_ in rest:
        for c_ in rest:
            if c_ in (b_, opposite[b_]):
                continue
            order = [a, b_, c_, opposite[a], opposite[b_], opposite[c_]]
            net = _c3_build(cg, p, order)
            if net is not None:
                cands.append(RootCandidate(net, (), "R3"))
    return cands


def _c3_build(cg: CliqueGraph, p: Pattern, order: Sequence[Vertex]) -> Optional[GNetwork]:
    b = _Builder()
    ring = [b.parent_of(y) for y in order]
    for i in range(6):
        b.edge(ring[i], ring[(i + 1) % 6])
    pos = {y: i for i, y in enumerate(order)}
    for node in p.nodes:
        k = cg.label(node)
        core = k & set(order)
        extra = k - set(order)
        if len(core) != 3:
            return None
        mid = None
        for y in core:
            i = pos[y]
            if order[(i - 1) % 6] in core and order[(i + 1) % 6] in core:
                mid = y
        if mid is not None:
            b.hang(extra, b.parent_of(mid))
        elif extra:
            return None
    return b.build()


# ---------------------------------------------------------------------------
# catalogue roots for C4..C12


def _catalogue_candidates(cg: CliqueGraph, p: Pattern) -> List[RootCandidate]:
    gen = {
        "C4": _c4_roots,
        "C5": _c5_roots,
        "C6": _c6_roots,
        "C7": _c7_roots,
        "C8": _c8_roots,
        "C9": _c9_roots,
        "C10": _c10_roots,
        "C11": _c11_roots,
        "C12": _c12_roots,
    }[p.kind]
    out: List[RootCandidate] = []
    seen: Set[GNetwork] = set()
    for catalogue_id, net, max_cycles in gen(cg, p):
        cand = _checked(cg, p, net, catalogue_id, max_cycles)
        if cand is not None and cand.network not in seen:
            seen.add(cand.network)
            out.append(cand)
    return out


def _c4_roots(cg: CliqueGraph, p: Pattern):
    """One ring through the three shared labels; arms fill or skip segments.

    Every catalogue form (invisible-arm 4-cycles, five- and six-cycles with
    one to three invisibles, carrier arcs) is an assignment of arm
    realisations: a segment connector (invisible, visible with its own leaf,
    or an arc through a hidden size-3 member) or a corner star at one of the
    arm's two labels, leaving its segment a plain ring edge.
    """
    z, arms = p.nodes[0], list(p.nodes[1:])
    z_label = cg.label(z)
    labs = {a: cg.edge_label(z, a) for a in arms}
    union = frozenset().union(*labs.values())

    arm_opts: Dict[Node, List[Tuple[str, Optional[Vertex]]]] = {}
    for a in arms:
        rest = sorted(cg.label(a) - labs[a])
        opts: List[Tuple[str, Optional[Vertex]]] = [("seg-inv", None)]
        for own in rest:
            opts.append(("seg-vis", own))
        if len(rest) == 1:
            opts.append(("seg-carrier", rest[0]))
        for corner in sorted(labs[a]):
            opts.append(("corner", corner))
        arm_opts[a] = opts

    centre_opts: List[Tuple[str, Optional[Vertex]]] = [("star", m) for m in sorted(union)]
    if len(z_label) == 3:
        centre_opts.append(("carrier", None))

    for centre in centre_opts:
        for combo in itertools.product(*(arm_opts[a] for a in arms)):
            corner_claims = [v for kind, v in combo if kind == "corner"]
            if centre[0] == "star" and centre[1] in corner_claims:
                continue
            if len(corner_claims) != len(set(corner_claims)):
                continue
            b = _Builder()
            ring = {x: b.parent_of(x) for x in union}
            if centre[0] == "star":
                b.hang(z_label - union, ring[centre[1]])
            elif z_label != union:
                continue
            segments_done = set()
            for a, (kind, val) in zip(arms, combo):
                x, y = sorted(labs[a])
                extras = cg.label(a) - labs[a]
                if kind == "corner":
                    b.hang(extras, ring[val])
                    b.edge(ring[x], ring[y])
                elif kind == "seg-inv":
                    u = b.fresh()
                    b.edge(ring[x], u)
                    b.edge(u, ring[y])
                    b.hang(extras, u)
                elif kind == "seg-vis":
                    w = b.parent_of(val)
                    b.edge(ring[x], w)
                    b.edge(w, ring[y])
                    b.hang(extras - {val}, w)
                else:  # seg-carrier
                    u1, u2 = b.fresh(), b.fresh()
                    ph = b.parent_of(val)
                    b.edge(ring[x], u1)
                    b.edge(u1, ph)
                    b.edge(ph, u2)
                    b.edge(u2, ring[y])
                segments_done.add((x, y))
            n_inv = sum(1 for kind, _ in combo if kind.startswith("seg-inv"))
            rid = f"R4({centre[0]}:{centre[1]};{n_inv}inv)"
            yield rid, b.build(), 1


def _c5_roots(cg: CliqueGraph, p: Pattern):
    ell = p.anchor[0]
    for quad in (p.nodes, tuple(reversed(p.nodes))):
        p1, z1, z2, p2 = quad
        a = next(iter(cg.edge_label(p1, z1) - {ell}))
        bb = next(iter(cg.edge_label(z1, z2) - {ell}))
        d = next(iter(cg.edge_label(z2, p2) - {ell}))
        z1_label, z2_label = cg.label(z1), cg.label(z2)

        # R5,1: four-cycle u-p(ell)-p(b)-p(a); z2 is the star at p(ell),
        # p2 the deep pair star at p(d) hanging off p(ell).  When p1 holds a
        # third vertex, its invisible end widens to an arc through it.
        p1_rest = sorted(cg.label(p1) - {ell, a})
        end_variants: List[Tuple[str, Optional[Vertex]]] = [("inv", None)]
        if len(p1_rest) == 1:
            end_variants.append(("carrier", p1_rest[0]))
        for endkind, hidden in end_variants:
            b_ = _Builder()
            pl, pa, pb = b_.parent_of(ell), b_.parent_of(a), b_.parent_of(bb)
            for e in ((pl, pb), (pb, pa)):
                b_.edge(*e)
            if endkind == "inv":
                u = b_.fresh()
                b_.edge(pa, u)
                b_.edge(u, pl)
                b_.hang(cg.label(p1) - {ell, a}, u)
            else:
                u1, u2 = b_.fresh(), b_.fresh()
                ph = b_.parent_of(hidden)
                for e in ((pa, u1), (u1, ph), (ph, u2), (u2, pl)):
                    b_.edge(*e)
            pd = b_.parent_of(d)
            b_.edge(pd, pl)
            b_.hang(z1_label - {ell, a, bb}, pb)
            b_.hang(z2_label - {ell, bb, d}, pl)
            b_.hang(cg.label(p2) - {ell, d}, pd)
            yield f"R5,1({endkind})", b_.build(), 1

        # R5,2: five-cycle p(ell)-p(b)-u1-p(a)-u2 with deep pair at p(ell)
        if len(z1_label) == 3:
            b_ = _Builder()
            pl, pa, pb = b_.parent_of(ell), b_.parent_of(a), b_.parent_of(bb)
            u1, u2 = b_.fresh(), b_.fresh()
            for e in ((pl, pb), (pb, u1), (u1, pa), (pa, u2), (u2, pl)):
                b_.edge(*e)
            pd = b_.parent_of(d)
            b_.edge(pd, pl)
            b_.hang(cg.label(p1) - {ell, a}, u2)
            b_.hang(z2_label - {ell, bb, d}, pl)
            b_.hang(cg.label(p2) - {ell, d}, pd)
            yield "R5,2", b_.build(), 1

        # R5,3 / R5,4: six-cycle p(ell)-u1-p(a)-u2-p(b)-p(d)
        if len(z1_label) == 3:
            b_ = _Builder()
            pl, pa, pb, pd = (b_.parent_of(x) for x in (ell, a, bb, d))
            u1, u2 = b_.fresh(), b_.fresh()
            for e in ((pl, u1), (u1, pa), (pa, u2), (u2, pb), (pb, pd), (pd, pl)):
                b_.edge(*e)
            b_.hang(cg.label(p1) - {ell, a}, u1)
            b_.hang(z2_label - {ell, bb, d}, pd)
            b_.hang(cg.label(p2) - {ell, d}, pl)
            yield "R5,3", b_.build(), 1


def _c6_roots(cg: CliqueGraph, p: Pattern):
    order = p.nodes
    for shift in range(4):
        ring = [order[(shift + i) % 4] for i in range(4)]
        o, s1, tmid, s2 = ring  # o opposite tmid
        if not (cg.has_edge(o, s1) and cg.has_edge(s1, tmid) and cg.has_edge(tmid, s2) and cg.has_edge(s2, o)):
            continue
        common = cg.edge_label(o, s1) & cg.edge_label(s1, tmid) & cg.edge_label(tmid, s2) & cg.edge_label(s2, o)
        if len(common) != 1 or cg.size(o) != 3:
            continue
        (ell,) = common
        alpha = next(iter(cg.edge_label(o, s1) - {ell}))
        eps = next(iter(cg.edge_label(o, s2) - {ell}))
        m1 = next(iter(cg.edge_label(s1, tmid) - {ell}))
        m2 = next(iter(cg.edge_label(s2, tmid) - {ell}))
        if cg.label(o) != frozenset((alpha, ell, eps)):
            continue
        b = _Builder()
        pa, p1, pl, p2, pe = (b.parent_of(x) for x in (alpha, m1, ell, m2, eps))
        u = b.fresh()
        for e in ((pa, p1), (p1, pl), (pl, p2), (p2, pe), (pe, u), (u, pa)):
            b.edge(*e)
        b.hang(cg.label(s1) - {alpha, m1, ell}, p1)
        b.hang(cg.label(tmid) - {m1, ell, m2}, pl)
        b.hang(cg.label(s2) - {ell, m2, eps}, p2)
        yield f"R6,1({o})", b.build(), 1


def _c7_roots(cg: CliqueGraph, p: Pattern):
    for trip in (p.nodes, tuple(reversed(p.nodes))):
        e1, z, e2 = trip
        lab1, lab2 = cg.edge_label(e1, z), cg.edge_label(z, e2)
        z_label = cg.label(z)

        # R7,1: e1 an invisible star over a 4-cycle; e2 a deep pair star
        for m in sorted(lab2):
            delta = next(iter(lab2 - {m}))
            corners = sorted(lab1)
            b = _Builder()
            u = b.fresh()
            pm = b.parent_of(m)
            pc = [b.parent_of(c) for c in corners]
            for e in ((u, pc[0]), (pc[0], pm), (pm, pc[1]), (pc[1], u)):
                b.edge(*e)
            pd = b.parent_of(delta)
            b.edge(pd, pm)
            b.hang(cg.label(e1) - lab1, u)
            b.hang(cg.label(e2) - lab2, pd)
            b.hang(z_label - lab1 - lab2, pm)
            yield f"R7,1({e1})", b.build(), 1

        # R7,2: z is the four-label cycle of a five-cycle with one invisible
        if len(z_label) == 4 and z_label == lab1 | lab2:
            for aa in sorted(lab1):
                bb = next(iter(lab1 - {aa}))
                for dd in sorted(lab2):
                    cc = next(iter(lab2 - {dd}))
                    b = _Builder()
                    u = b.fresh()
                    ring = [b.parent_of(x) for x in (aa, bb, cc, dd)]
                    for e in zip(ring, ring[1:]):
                        b.edge(*e)
                    b.edge(ring[-1], u)
                    b.edge(u, ring[0])
                    b.hang(cg.label(e1) - lab1, ring[0])
                    b.hang(cg.label(e2) - lab2, ring[3])
                    yield "R7,2", b.build(), 1

        # R7,3: e1 is the size-3 carrier of a six-cycle with two invisibles
        if cg.size(e1) == 3:
            hidden = sorted(cg.label(e1) - lab1)
            if len(hidden) == 1:
                for m in sorted(lab2):
                    delta = next(iter(lab2 - {m}))
                    aa, bb = sorted(lab1)
                    b = _Builder()
                    pa, pg, pb, pm = (b.parent_of(x) for x in (aa, hidden[0], bb, m))
                    u1, u2 = b.fresh(), b.fresh()
                    for e in ((pa, u1), (u1, pg), (pg, u2), (u2, pb), (pb, pm), (pm, pa)):
                        b.edge(*e)
                    pd = b.parent_of(delta)
                    b.edge(pd, pm)
                    b.hang(cg.label(e2) - lab2, pd)
                    b.hang(z_label - lab1 - lab2, pm)
                    yield "R7,3", b.build(), 1


def _c8_roots(cg: CliqueGraph, p: Pattern):
    nodes = sorted(p.nodes)
    shared = sorted(cg.edge_label(nodes[0], nodes[1]))
    s, t = shared
    # R8,1: triangle p(s)-p(t)-u, one node per corner
    for inv_node in nodes:
        rest = [n for n in nodes if n != inv_node]
        for first, second in (rest, rest[::-1]):
            b = _Builder()
            ps, pt = b.parent_of(s), b.parent_of(t)
            u = b.fresh()
            for e in ((ps, pt), (pt, u), (u, ps)):
                b.edge(*e)
            b.hang(cg.label(inv_node) - {s, t}, u)
            b.hang(cg.label(first) - {s, t}, ps)
            b.hang(cg.label(second) - {s, t}, pt)
            yield f"R8,1({inv_node})", b.build(), 1
    # R8,2: one node is the 3-leaf cycle of a five-cycle with two invisibles
    for carrier in nodes:
        extra = sorted(cg.label(carrier) - {s, t})
        if len(extra) != 1:
            continue
        rest = [n for n in nodes if n != carrier]
        for first, second in (rest, rest[::-1]):
            b = _Builder()
            ps, pt, pg = b.parent_of(s), b.parent_of(t), b.parent_of(extra[0])
            u1, u2 = b.fresh(), b.fresh()
            for e in ((ps, pt), (pt, u1), (u1, pg), (pg, u2), (u2, ps)):
                b.edge(*e)
            b.hang(cg.label(first) - {s, t}, ps)
            b.hang(cg.label(second) - {s, t}, pt)
            yield f"R8,2({carrier})", b.build(), 1


def _c9_roots(cg: CliqueGraph, p: Pattern):
    a, bnode = p.nodes
    shared = sorted(cg.edge_label(a, bnode))
    # R9,1: two visible quasi stars on one triangle
    for ma, mb in itertools.permutations(shared, 2):
        b = _Builder()
        ring = [b.parent_of(x) for x in shared]
        for i in range(3):
            b.edge(ring[i], ring[(i + 1) % 3])
        b.hang(cg.label(a) - set(shared), b.parent_of(ma))
        b.hang(cg.label(bnode) - set(shared), b.parent_of(mb))
        yield f"R9,1({ma}{mb})", b.build(), 1
    # R9,2: one endpoint is the four-label clique of a five-cycle N'5
    for carrier, star in ((a, bnode), (bnode, a)):
        extra = sorted(cg.label(carrier) - set(shared))
        if len(extra) != 1:
            continue
        for centre in shared:
            sides = sorted(set(shared) - {centre})
            for left, right in (sides, sides[::-1]):
                b = _Builder()
                pl, pc, pr, pw = (b.parent_of(x) for x in (left, centre, right, extra[0]))
                u = b.fresh()
                for e in ((pl, pc), (pc, pr), (pr, pw), (pw, u), (u, pl)):
                    b.edge(*e)
                b.hang(cg.label(star) - set(shared), pc)
                yield f"R9,2({carrier})", b.build(), 1


def _c10_roots(cg: CliqueGraph, p: Pattern):
    a, bnode = p.nodes
    x = p.anchor[0]
    lab = sorted(cg.edge_label(a, bnode))
    y, z = lab
    rest_a = cg.label(a) - set(lab)
    rest_b = cg.label(bnode) - set(lab)

    # acyclic: two adjacent visible stars
    for my, mz in ((y, z), (z, y)):
        b = _Builder()
        py, pz = b.parent_of(my), b.parent_of(mz)
        b.edge(py, pz)
        b.hang(rest_a, pz)
        b.hang(rest_b, py)
        yield f"R10,5({my})", b.build(), 0

    # triangle with the invisible star holding x
    for m_b in (y, z):
        b = _Builder()
        py, pz = b.parent_of(y), b.parent_of(z)
        u = b.fresh()
        for e in ((py, pz), (pz, u), (u, py)):
            b.edge(*e)
        b.hang(rest_a, u)
        b.hang(rest_b, b.parent_of(m_b))
        yield f"R10,1({m_b})", b.build(), 1

    # 4-cycle u-p(y)-p(beta)-p(z) with beta a member of B
    for beta in sorted(rest_b):
        b = _Builder()
        py, pz, pm = b.parent_of(y), b.parent_of(z), b.parent_of(beta)
        u = b.fresh()
        for e in ((u, py), (py, pm), (pm, pz), (pz, u)):
            b.edge(*e)
        b.hang(rest_a, u)
        b.hang(rest_b - {beta}, pm)
        yield f"R10,2({beta})", b.build(), 1

    # 5-cycle with two invisibles, B the 3-vertex carrier; A sits on the
    # invisible between p(y) and p(z)
    if len(rest_b) == 1:
        (g,) = sorted(rest_b)
        for adj, far in ((y, z), (z, y)):
            b = _Builder()
            pa, pf, pg = b.parent_of(adj), b.parent_of(far), b.parent_of(g)
            ua, u2 = b.fresh(), b.fresh()
            for e in ((pg, pa), (pa, ua), (ua, pf), (pf, u2), (u2, pg)):
                b.edge(*e)
            b.hang(rest_a, ua)
            yield f"R10,3({adj})", b.build(), 1
        # 6-cycle with three invisibles
        b = _Builder()
        py, pz, pg = b.parent_of(y), b.parent_of(z), b.parent_of(g)
        u1, u2, u3 = b.fresh(), b.fresh(), b.fresh()
        for e in ((py, u1), (u1, pz), (pz, u2), (u2, pg), (pg, u3), (u3, py)):
            b.edge(*e)
        b.hang(rest_a, u1)
        yield "R10,4", b.build(), 1


def _c11_roots(cg: CliqueGraph, p: Pattern):
    a, c = p.nodes
    x = p.anchor[0]
    lab = sorted(cg.edge_label(a, c))
    other = [v for v in lab if v != x]
    if len(other) != 1:
        return
    w = other[0]
    # R11,1: 4-cycle p(x)-u1-p(w)-u2 with the two stars on the invisibles
    b = _Builder()
    px, pw = b.parent_of(x), b.parent_of(w)
    u1, u2 = b.fresh(), b.fresh()
    for e in ((px, u1), (u1, pw), (pw, u2), (u2, px)):
        b.edge(*e)
    b.hang(cg.label(a) - set(lab), u1)
    b.hang(cg.label(c) - set(lab), u2)
    yield "R11,1", b.build(), 1
    # R11,2: tree of two adjacent visible stars
    for mx, mw in ((x, w), (w, x)):
        b = _Builder()
        px, pw = b.parent_of(mx), b.parent_of(mw)
        b.edge(px, pw)
        b.hang(cg.label(a) - set(lab), px)
        b.hang(cg.label(c) - set(lab), pw)
        yield f"R11,2({mx})", b.build(), 0


def _c12_roots(cg: CliqueGraph, p: Pattern):
    a, bnode, c = p.nodes
    x = p.anchor[0]
    la, lc = cg.edge_label(a, bnode), cg.edge_label(bnode, c)
    ya = sorted(la - {x})
    yc = sorted(lc - {x})
    if len(ya) != 1 or len(yc) != 1 or x not in la or x not in lc:
        return
    rest_b = cg.label(bnode) - {x, ya[0], yc[0]}
    # R12,1: five-cycle p(y1)-p(y2)-u1-p(x)-u2 with b the 3-vertex carrier
    if not rest_b:
        for aa, cc in ((a, c), (c, a)):
            la2 = cg.edge_label(aa, bnode)
            lc2 = cg.edge_label(bnode, cc)
            y1 = next(iter(la2 - {x}))
            y2 = next(iter(lc2 - {x}))
            b = _Builder()
            p1, p2, px = b.parent_of(y1), b.parent_of(y2), b.parent_of(x)
            u1, u2 = b.fresh(), b.fresh()
            for e in ((p1, p2), (p2, u1), (u1, px), (px, u2), (u2, p1)):
                b.edge(*e)
            b.hang(cg.label(cc) - lc2, u1)
            b.hang(cg.label(aa) - la2, u2)
            yield "R12,1", b.build(), 1
        # 6-cycle with three invisibles
        b = _Builder()
        p1, p2, px = b.parent_of(ya[0]), b.parent_of(yc[0]), b.parent_of(x)
        u1, u2, u3 = b.fresh(), b.fresh(), b.fresh()
        for e in ((p1, u1), (u1, px), (px, u2), (u2, p2), (p2, u3), (u3, p1)):
            b.edge(*e)
        b.hang(cg.label(a) - la, u1)
        b.hang(cg.label(c) - lc, u2)
        yield "R12,1'", b.build(), 1
    # R12,2: tree, middle star at p(x)
    b = _Builder()
    px = b.parent_of(x)
    p1, p2 = b.parent_of(ya[0]), b.parent_of(yc[0])
    b.edge(p1, px)
    b.edge(p2, px)
    b.hang(cg.label(a) - la, p1)
    b.hang(cg.label(c) - lc, p2)
    b.hang(rest_b, px)
    yield "R12,2", b.build(), 0


# ---------------------------------------------------------------------------
# root sets: catalogue + condition 1 (cycle-label disjointness) + condition 2
# (constructive extension over ext(S))


def root_set(cg: CliqueGraph, p: Pattern, all_patterns: Sequence[Pattern],
             easy_roots: Dict[Tuple[Node, ...], RootCandidate]) -> RootSet:
    cands = _catalogue_candidates(cg, p)
    protected: List[FrozenSet[Vertex]] = []
    for q in all_patterns:
        if q.nodes == p.nodes and q.kind == p.kind:
            continue
        if q.kind in EASY_KINDS:
            rc = easy_roots.get(q.nodes)
            if rc is not None:
                protected.append(rc.cycle_labels)
        elif q.kind in ("C4", "C6", "C8", "C9"):
            protected.append(q.label(cg))
        elif q.kind == "C5":
            protected.append(frozenset(q.anchor))
    foreign: Set[Node] = set()
    for q in all_patterns:
        if q.nodes == p.nodes and q.kind == p.kind:
            continue
        foreign.update(q.nodes)
    kept = []
    seen_keys = set()
    for cand in cands:
        if cand.has_cycle() and any(cand.cycle_labels & lab for lab in protected):
            continue
        key = _candidate_key(cand)
        if key in seen_keys:
            continue
        if _extends(cg, p, cand, frozenset(foreign)):
            seen_keys.add(key)
            kept.append(cand)
    return RootSet(p, tuple(kept))


def _candidate_key(cand: RootCandidate):
    """Pipeline-relevant fingerprint: cycle trace plus per-leaf falgs."""
    net = cand.network
    cyc = set(cand.cycle)
    trace = []
    for v in cand.cycle:
        rim = frozenset(
            x for w in net.inner_graph.adj(v) if w in cyc for x in net.leaves_of(w)
        )
        full = frozenset(x for w in net.inner_graph.adj(v) for x in net.leaves_of(w))
        trace.append((net.leaves_of(v), rim, full))
    k = len(trace)
    rotations = []
    for rev in (trace, trace[::-1]):
        for i in range(max(k, 1)):
            rotations.append(tuple(rev[i:] + rev[:i]))
    flags = tuple(
        (x, cand.c_flag(x), cand.i_flag(x)) for x in net.leaf_labels
    )
    return (min(rotations) if rotations else (), flags)


def _extends(cg: CliqueGraph, p: Pattern, cand: RootCandidate,
             foreign: FrozenSet[Node] = frozenset()) -> bool:
    """Condition 2: the candidate must extend over the distance-2 halo of S.

    Nodes belonging to other detected patterns are skipped; their realization
    is owned by those patterns and cross-checked through cycle disjointness.
    """
    inside = set(p.nodes)
    net = cand.network
    frontier: List[Tuple[Node, Node]] = []
    for a in p.nodes:
        for b in cg.neighbors(a):
            if b not in inside and b not in foreign:
                frontier.append((a, b))
    for a, b in frontier:
        placements = _placements(cg, net, cand, b)
        if not placements:
            return False
        second = [
            c
            for c in cg.neighbors(b)
            if c not in inside and c not in foreign and not cg.has_edge(a, c) and c != a
        ]
        ok = False
        for extended in placements:
            if all(_placements(cg, extended, cand, c) for c in second):
                ok = True
                break
        if not ok:
            return False
    return True


def _placements(cg: CliqueGraph, net: GNetwork, cand: RootCandidate,
                b: Node) -> List[GNetwork]:
    """All ways to realise clique b against the partial network, verified locally."""
    blabel = cg.label(b)
    existing = sorted(x for x in blabel if x in net.leaf_labels)
    fresh = sorted(x for x in blabel if x not in net.leaf_labels)
    if not existing:
        return [net]
    cyc = set(cand.cycle)
    outs: List[GNetwork] = []

    def fresh_name(tag: str) -> str:
        return f"#ext_{tag}{next(_EXT_SERIAL)}"

    def attempt(host_edges, host_vertices=(), host_leaves=()):
        g2 = net.inner_graph
        vs = set(g2.vertices) | set(host_vertices)
        es = set(g2.sorted_edges()) | {tuple(sorted(e)) for e in host_edges}
        lm = {v: list(ls) for v, ls in net.leaf_map.items()}
        for v, lab in host_leaves:
            lm.setdefault(v, []).append(lab)
        try:
            cand_net = GNetwork(Graph(vs, es), lm)
        except ValueError:
            return
        if validate(cand_net) or not is_basic(cand_net):
            return
        if len(inner_cycles(cand_net)) != len(inner_cycles(net)):
            return
        got = leaf_power(cand_net, 4)
        want = cg.backing.subgraph(set(net.leaf_labels) | blabel)
        if got == want:
            outs.append(cand_net)

    # (a) star at the parent of an existing member
    for s in existing:
        host = net.parent(s)
        others = [x for x in existing if x != s]
        if any(net.parent(x) not in net.inner_graph.adj(host) for x in others):
            continue
        edges, verts, leaves = [], [], []
        for x in fresh:
            w = fresh_name("a")
            verts.append(w)
            edges.append((host, w))
            leaves.append((w, x))
        attempt(edges, verts, leaves)

    # (b) a fresh invisible star off one existing member (off-cycle hosts only)
    if len(existing) == 1 and fresh:
        host = net.parent(existing[0])
        if host not in cyc:
            u = fresh_name("u")
            edges, verts, leaves = [(host, u)], [u], []
            for x in fresh:
                w = fresh_name("i")
                verts.append(w)
                edges.append((u, w))
                leaves.append((w, x))
            attempt(edges, verts, leaves)

    # (c) children of an existing invisible vertex whose rim already matches
    for u in net.inner_vertices:
        if net.is_visible(u):
            continue
        rim = {x for wv in net.inner_graph.adj(u) for x in net.leaves_of(wv)}
        if set(existing) <= rim:
            edges, verts, leaves = [], [], []
            for x in fresh:
                w = fresh_name("c")
                verts.append(w)
                edges.append((u, w))
                leaves.append((w, x))
            attempt(edges, verts, leaves)

    if not fresh:
        outs.append(net)
    return outs
