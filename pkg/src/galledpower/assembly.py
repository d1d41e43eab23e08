"""From chosen pattern roots to a full block root: subtract, square, reassemble."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .clique_graph import CliqueGraph, Node
from .graph_core import Graph, Vertex, maximal_cliques, _norm_edge
from .network import GNetwork, graph_square, validate
from .patterns import Pattern, RootCandidate, RootSet


class OverlayConflict(RuntimeError):
    """Two fragments disagree on a shared vertex; internal invariant breach."""


class NotSquare(Exception):
    pass


@dataclass(frozen=True)
class Slot:
    """One pattern of one block together with its admissible candidates."""

    block: int
    pattern: Pattern
    ground: FrozenSet[Vertex]
    candidates: Tuple[RootCandidate, ...]


def choose_subroots(slots: Sequence[Slot], clique_blocks: FrozenSet[int],
                    cut_map: Mapping[Vertex, Sequence[int]],
                    limit: int = 400) -> Iterator[Dict[int, RootCandidate]]:
    """Yield consistent candidate assignments (one per slot), best-first.

    Consistency means: chosen cycles pairwise label-disjoint, and at every
    cut vertex at most one incident block fails each of the two disjunctions
    of the block-combination lemma (all-invisible neighbors / off-cycle).
    """
    if any(not s.candidates for s in slots):
        return
    assignment: Dict[int, RootCandidate] = {}
    by_block: Dict[int, List[int]] = {}
    for k, s in enumerate(slots):
        by_block.setdefault(s.block, []).append(k)
    emitted = 0

    def block_flags(bidx: int, x: Vertex) -> Optional[Tuple[bool, bool]]:
        if bidx in clique_blocks:
            return True, True
        touching = [k for k in by_block.get(bidx, []) if x in slots[k].ground]
        if not touching:
            return True, False
        if any(k not in assignment for k in touching):
            return None
        return (
            all(assignment[k].c_flag(x) for k in touching),
            all(assignment[k].i_flag(x) for k in touching),
        )

    def cut_ok(x: Vertex) -> bool:
        cs, is_ = [], []
        for bidx in cut_map[x]:
            f = block_flags(bidx, x)
            if f is None:
                return True
            cs.append(f[0])
            is_.append(f[1])
        return cs.count(False) <= 1 and is_.count(False) <= 1

    def consistent(k: int) -> bool:
        cand = assignment[k]
        if cand.has_cycle():
            mine = cand.cycle_labels
            for j in range(k):
                other = assignment[j]
                if other.has_cycle() and mine & other.cycle_labels:
                    return False
        for x in slots[k].ground:
            if x in cut_map and not cut_ok(x):
                return False
        return True

    def search(k: int) -> Iterator[Dict[int, RootCandidate]]:
        nonlocal emitted
        if emitted >= limit:
            return
        if k == len(slots):
            if all(cut_ok(x) for x in cut_map):
                emitted += 1
                yield dict(assignment)
            return
        for cand in slots[k].candidates:
            assignment[k] = cand
            if consistent(k):
                yield from search(k + 1)
            del assignment[k]
            if emitted >= limit:
                return

    yield from search(0)


# ---------------------------------------------------------------------------
# subtraction


def _star_keys(cand: RootCandidate) -> List[Tuple[str, FrozenSet[Vertex], FrozenSet[Vertex]]]:
    """Per S(c) star: (cycle vertex, rim trace on cycle labels, full star clique)."""
    net = cand.network
    cyc = list(cand.cycle)
    cyc_set = set(cyc)
    out = []
    for v in cyc:
        rim = {
            x for w in net.inner_graph.adj(v) if w in cyc_set for x in net.leaves_of(w)
        }
        full = {
            x for w in net.inner_graph.adj(v) for x in net.leaves_of(w)
        }
        mine = set(net.leaves_of(v))
        out.append((v, frozenset(mine | rim), frozenset(mine | full)))
    return out


def subtract(cg: CliqueGraph, chosen: Sequence[RootCandidate],
             ) -> Tuple[List[Graph], Dict[FrozenSet[Vertex], Tuple[str, object]]]:
    """The block minus its cycle-root set, with forced middles for survivors.

    Cliques lying entirely on a chosen cycle's label set (the carriers) are
    dropped; MC edges between stars of one cycle neighborhood are cut.  The
    result is one species graph per component of the edited MC — a vertex
    shared by two components appears in both, mirroring the way star
    separation duplicates shared rim vertices.  Stars of a cycle get middle
    constraints ("visible", label) or ("invisible", (candidate_idx, vertex)).
    """
    surviving = set(cg.nodes())
    dead_edges: Set[FrozenSet[Node]] = set()
    constraints: Dict[FrozenSet[Vertex], Tuple[str, object]] = {}
    for idx, cand in enumerate(chosen):
        if not cand.cycle:
            continue
        l_c = cand.cycle_labels
        net = cand.network
        keys = _star_keys(cand)
        star_nodes: Set[Node] = set()
        inv_stars: Set[Node] = set()

        def bind(i: Node, v: str) -> None:
            star_nodes.add(i)
            if net.is_visible(v):
                constraints[cg.label(i)] = ("visible", net.leaves_of(v)[0])
            else:
                inv_stars.add(i)
                constraints[cg.label(i)] = ("invisible", (idx, v))

        free_slots = []
        taken: Set[Node] = set()
        for v, rim, full in keys:
            exact = [i for i in cg.nodes() if cg.label(i) == full and i not in taken]
            if exact:
                taken.add(exact[0])
                bind(exact[0], v)
            elif rim:
                free_slots.append((v, rim))
        slots_by_key: Dict[FrozenSet[Vertex], List[str]] = {}
        for v, rim in free_slots:
            slots_by_key.setdefault(rim, []).append(v)
        nodes_by_key: Dict[FrozenSet[Vertex], List[Node]] = {}
        for i in cg.nodes():
            if i in taken:
                continue
            core = frozenset(cg.label(i) & l_c)
            if core in slots_by_key:
                nodes_by_key.setdefault(core, []).append(i)
        for key, vs in sorted(slots_by_key.items(), key=lambda kv: sorted(kv[0])):
            matched = sorted(nodes_by_key.get(key, ()))
            for i, v in zip(matched, sorted(vs)):
                bind(i, v)
        for a, b in itertools.combinations(sorted(star_nodes), 2):
            dead_edges.add(frozenset((a, b)))
        # an invisible star's tree holds nothing but the star itself
        for i in inv_stars:
            for j in cg.neighbors(i):
                dead_edges.add(frozenset((i, j)))
        for i in list(surviving):
            if cg.label(i) <= l_c and i not in star_nodes:
                surviving.discard(i)

    adj: Dict[Node, List[Node]] = {i: [] for i in surviving}
    for (i, j) in cg.edge_labels:
        if i in surviving and j in surviving and frozenset((i, j)) not in dead_edges:
            adj[i].append(j)
            adj[j].append(i)
    seen: Set[Node] = set()
    components: List[Graph] = []
    for start in sorted(surviving):
        if start in seen:
            continue
        group = [start]
        seen.add(start)
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    group.append(w)
                    stack.append(w)
        vertices: Set[Vertex] = set()
        edges: Set[Tuple[Vertex, Vertex]] = set()
        for i in group:
            lab = sorted(cg.label(i))
            vertices |= set(lab)
            for a, b in itertools.combinations(lab, 2):
                edges.add((a, b))
        components.append(Graph(vertices, edges))
    return components, constraints


# ---------------------------------------------------------------------------
# squares of forests


@dataclass(frozen=True)
class StarSpec:
    middle: Tuple[str, object]  # ("visible", label) | ("invisible", key)
    members: Tuple[Vertex, ...]


@dataclass(frozen=True)
class TreeSpec:
    """Square root of one component: stars plus edges between their middles."""

    stars: Tuple[StarSpec, ...]
    edges: Tuple[Tuple[Vertex, Vertex], ...]


def square_forest_root(h: Graph,
                       constraints: Mapping[FrozenSet[Vertex], Tuple[str, object]],
                       ) -> TreeSpec:
    """Reconstruct the star tree whose square is h, honoring forced middles."""
    cliques = [frozenset(c) for c in maximal_cliques(h)]
    if len(cliques) == 1:
        k = cliques[0]
        forced = constraints.get(k)
        if forced is not None:
            return TreeSpec((StarSpec(forced, tuple(sorted(k))),), ())
        return TreeSpec((StarSpec(("visible", min(k)), tuple(sorted(k))),), ())

    share2: Dict[int, List[int]] = {i: [] for i in range(len(cliques))}
    for i, a in enumerate(cliques):
        for j in range(i + 1, len(cliques)):
            cap = a & cliques[j]
            if len(cap) == 2:
                share2[i].append(j)
                share2[j].append(i)
            elif len(cap) > 2:
                raise NotSquare("maximal cliques overlap in more than two vertices")

    if any(constraints.get(c, ("visible",))[0] == "invisible" for c in cliques):
        raise NotSquare("invisible star forced inside a multi-clique component")

    if len(cliques) == 2:
        a, b = cliques
        cap = sorted(a & b)
        if len(cap) != 2:
            raise NotSquare("two maximal cliques must share exactly two vertices")
        for ma, mb in ((cap[0], cap[1]), (cap[1], cap[0])):
            if _middle_ok(constraints.get(a), ma) and _middle_ok(constraints.get(b), mb):
                spec = TreeSpec(
                    (
                        StarSpec(("visible", ma), tuple(sorted(a))),
                        StarSpec(("visible", mb), tuple(sorted(b))),
                    ),
                    (_norm_edge(ma, mb),),
                )
                _verify_square(h, spec)
                return spec
        raise NotSquare("no star assignment honors the cycle constraints")

    middles: Dict[int, Vertex] = {}
    for i, a in enumerate(cliques):
        caps = [a & cliques[j] for j in share2[i]]
        if len(caps) >= 2:
            common = set.intersection(*(set(c) for c in caps))
            if len(common) != 1:
                raise NotSquare("ambiguous star middle")
            middles[i] = next(iter(common))
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(cliques):
            if i in middles:
                continue
            for j in share2[i]:
                if j in middles:
                    rest = sorted((a & cliques[j]) - {middles[j]})
                    if len(rest) != 1:
                        raise NotSquare("inconsistent middles")
                    middles[i] = rest[0]
                    changed = True
                    break
    if set(middles) != set(range(len(cliques))):
        raise NotSquare("clique structure is not a connected star tree")
    for i in range(len(cliques)):
        for j in share2[i]:
            if middles[i] == middles[j]:
                raise NotSquare("two adjacent stars would share a middle")
    for i, a in enumerate(cliques):
        if not _middle_ok(constraints.get(a), middles[i]):
            raise NotSquare("forced middle conflicts with the unique square root")

    stars = []
    edges = set()
    for i, a in enumerate(cliques):
        stars.append(StarSpec(("visible", middles[i]), tuple(sorted(a))))
        for j in share2[i]:
            edges.add(_norm_edge(middles[i], middles[j]))
    spec = TreeSpec(tuple(stars), tuple(sorted(edges)))
    _verify_square(h, spec)
    return spec


def _middle_ok(constraint: Optional[Tuple[str, object]], middle: Vertex) -> bool:
    if constraint is None:
        return True
    kind, value = constraint
    return kind == "visible" and value == middle


def tree_spec_graph(spec: TreeSpec) -> Optional[Graph]:
    vs: Set[Vertex] = set()
    edges: Set[Tuple[Vertex, Vertex]] = set(spec.edges)
    for star in spec.stars:
        kind, value = star.middle
        if kind != "visible":
            return None
        vs.update(star.members)
        for v in star.members:
            if v != value:
                edges.add(_norm_edge(v, value))
    return Graph(vs, edges)


def _verify_square(h: Graph, spec: TreeSpec) -> None:
    tree = tree_spec_graph(spec)
    if tree is not None and graph_square(tree) != h:
        raise NotSquare("reconstructed tree does not square back to the component")


# ---------------------------------------------------------------------------
# block assembly and gluing


def assemble_block(chosen: Sequence[RootCandidate],
                   forest: Sequence[TreeSpec]) -> GNetwork:
    """Overlay the chosen cycle roots with the forest stars into a block root."""
    vertices: Set[str] = set()
    edges: Set[Tuple[str, str]] = set()
    leaves: Dict[str, List[str]] = {}

    def pvert(label: Vertex) -> str:
        v = f"#p_{label}"
        if v not in vertices:
            vertices.add(v)
            leaves[v] = [label]
        return v

    inv_name: Dict[Tuple[int, str], str] = {}

    def ivert(idx: int, orig: str) -> str:
        v = inv_name.get((idx, orig))
        if v is None:
            v = f"#c{idx}_{orig.lstrip('#')}"
            inv_name[(idx, orig)] = v
            vertices.add(v)
        return v

    def add_edge(a: str, b: str) -> None:
        edges.add((a, b) if a <= b else (b, a))

    for idx, cand in enumerate(chosen):
        if not cand.cycle:
            continue
        net = cand.network
        mapped = []
        for v in cand.cycle:
            if net.is_visible(v):
                mapped.append(pvert(net.leaves_of(v)[0]))
            else:
                mapped.append(ivert(idx, v))
        for i in range(len(mapped)):
            add_edge(mapped[i], mapped[(i + 1) % len(mapped)])

    for spec in forest:
        if len(spec.stars) == 1 and spec.stars[0].middle[0] == "invisible":
            star = spec.stars[0]
            idx, orig = star.middle[1]
            u = ivert(idx, orig)
            for x in star.members:
                add_edge(pvert(x), u)
            continue
        for star in spec.stars:
            m = pvert(star.middle[1])
            for x in star.members:
                if x != star.middle[1]:
                    add_edge(pvert(x), m)
        for a, b in spec.edges:
            add_edge(pvert(a), pvert(b))

    try:
        net = GNetwork(Graph(vertices, edges), leaves)
    except ValueError as exc:
        raise OverlayConflict(str(exc))
    problems = validate(net)
    if problems:
        raise OverlayConflict("; ".join(problems))
    return net


def glue_blocks(parts: Sequence[GNetwork], cut_vertices: FrozenSet[Vertex]) -> GNetwork:
    """Identify each cut vertex's parents across blocks, keep one leaf copy."""
    if len(parts) == 1:
        return parts[0]
    vertices: Set[str] = set()
    edges: Set[Tuple[str, str]] = set()
    leaves: Dict[str, Set[str]] = {}
    glue_of: Dict[Vertex, str] = {x: f"#glue_{x}" for x in cut_vertices}

    for bi, net in enumerate(parts):
        rename: Dict[str, str] = {}
        for v in net.inner_vertices:
            hit = [x for x in net.leaves_of(v) if x in cut_vertices]
            rename[v] = glue_of[hit[0]] if hit else f"#b{bi}_{v.lstrip('#')}"
        for v in net.inner_vertices:
            nv = rename[v]
            vertices.add(nv)
            leaves.setdefault(nv, set()).update(net.leaves_of(v))
        for u, v in net.inner_graph.sorted_edges():
            a, b = rename[u], rename[v]
            edges.add((a, b) if a <= b else (b, a))

    return GNetwork(Graph(vertices, edges), {v: sorted(ls) for v, ls in leaves.items()})
